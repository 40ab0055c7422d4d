"""
Command-line entry point.

    rdnlab snapshots|separation|certify|invnet-test --config <path> --out <dir> --jobs <n> --seed <u64>

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 output error.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .. import __version__
from ..core.errors import ArgumentError, ConfigError, NumericalError, OutputError, StructuralError
from ..core.log_setup import configure_logging
from .config import load_config
from .runner import ExperimentRunner

logger = logging.getLogger(__name__)

COMMANDS = ("snapshots", "separation", "certify", "invnet-test")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_OUTPUT = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdnlab", description="Reduced deep networks for hyperbolic solution manifolds."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=COMMANDS, help="Experiment to run")
    parser.add_argument("--config", type=Path, default=None, help="INI experiment config")
    parser.add_argument("--problem", default=None, help="Override [experiment] problem")
    parser.add_argument("--out", type=Path, default=None, help="Output directory (default: results)")
    parser.add_argument("--jobs", type=int, default=None, help="Worker pool size")
    parser.add_argument("--seed", type=int, default=None, help="Seed for random test networks")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging()

    overrides = {"problem": args.problem, "out": args.out, "jobs": args.jobs, "seed": args.seed}
    try:
        config = load_config(args.config, overrides)
        written = ExperimentRunner(config).run(args.command)
    except (ConfigError, ArgumentError, StructuralError) as exc:
        logger.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except NumericalError as exc:
        logger.error("numerical failure: %s", exc)
        return EXIT_NUMERICAL
    except (OutputError, OSError) as exc:
        logger.error("output error: %s", exc)
        return EXIT_OUTPUT

    for path in written:
        logger.info("output: %s", path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
