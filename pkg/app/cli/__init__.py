"""Command-line surface"""

from app.cli.config import ExperimentConfig, RunConfig, Subcommand
from app.cli.main import build_parser, main

__all__ = ["ExperimentConfig", "RunConfig", "Subcommand", "build_parser", "main"]
