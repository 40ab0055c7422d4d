"""Batch experiment driver: config, runner, CSV and SVG output."""

from .app import main
from .config import ExperimentConfig, load_config, parse_config
from .runner import ExperimentRunner, build_problem
