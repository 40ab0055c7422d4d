"""Classical reduced models and deep reduction."""

from .deep import (
    DeepReduction,
    ReducedActivation,
    ReducedDeepNetwork,
    deep_reduce,
    dof_count,
    eval_rdn,
    leading_left_vectors,
)
from .pod import (
    PODBasis,
    ReducedTwoLayerSolution,
    SnapshotMatrix,
    SnapshotSVD,
    pod_error_curve,
    pod_project,
    reduce_two_layer,
)
from .svd import round_robin_pairs, svd
