"""Command-line entry point: argument parsing and the error/exit-code contract"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from app import __version__
from app.cli.commands import run
from app.cli.config import EmbedMode, RunConfig, Subcommand
from app.exceptions import StressMDSError, UsageError
from app.utils.logger import set_level, setup_logger

logger = setup_logger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of printing usage and exiting"""

    def error(self, message):
        raise UsageError(message)


def _add_solver_flags(parser: argparse.ArgumentParser, output_required: bool = True) -> None:
    parser.add_argument("--input", required=True, type=Path, help="Dissimilarity CSV")
    parser.add_argument("--output", required=output_required, type=Path, help="Configuration CSV")
    parser.add_argument("--dim", type=int, default=2, help="Embedding dimension")
    parser.add_argument("--tol", type=float, help="Relative stress decrease threshold")
    parser.add_argument("--max-iters", type=int, help="Iteration budget")
    parser.add_argument("--seed", type=int, help="Seed for the fallback random start")
    parser.add_argument("--weights", type=Path, help="Weight matrix CSV (default: uniform 1/n^2)")


def build_parser() -> argparse.ArgumentParser:
    parser = ArgumentParser(prog="stress-mds", description="Stress-based multidimensional scaling")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--verbose", action="store_true", help="Log every iteration")
    commands = parser.add_subparsers(dest="subcommand", required=True)

    embed = commands.add_parser("embed", help="Unconstrained raw-stress embedding")
    _add_solver_flags(embed)

    ale = commands.add_parser("ale-embed", help="Embedding with pairwise caps K * delta")
    _add_solver_flags(ale)
    ale.add_argument("--k", type=float, help="Cap constant K")

    isomap = commands.add_parser("isomap", help="Shortest-path dissimilarities of a point cloud")
    isomap.add_argument("--input", required=True, type=Path, help="Point CSV, one point per row")
    isomap.add_argument("--output", required=True, type=Path, help="Dissimilarity CSV")
    isomap.add_argument("--knn", type=int, help="k for the k-nearest-neighbor graph")
    isomap.add_argument("--epsilon", type=float, help="Radius for the epsilon-ball graph")
    isomap.add_argument("--embed-dim", type=int, help="Also embed the result in this dimension")
    isomap.add_argument("--tol", type=float)
    isomap.add_argument("--max-iters", type=int)
    isomap.add_argument("--seed", type=int)

    experiment = commands.add_parser("experiment", help="Run an experiment grid from a key=value file")
    experiment.add_argument("--input", required=True, type=Path, help="Experiment config file")
    experiment.add_argument("--output", type=Path, help="Result table CSV")
    experiment.add_argument("--mode", choices=[mode.value for mode in EmbedMode])
    experiment.add_argument("--p", type=float, help="Exponent of the L^p discrepancy")
    experiment.add_argument("--k", type=float, help="Cap constant K")
    experiment.add_argument("--seed", type=int, help="Run this single seed")

    validate = commands.add_parser("validate", help="Check a dissimilarity CSV")
    validate.add_argument("--input", required=True, type=Path)
    validate.add_argument("--output", type=Path, help="Where to write the JSON report")

    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig.build(
        subcommand=Subcommand(args.subcommand),
        input_path=args.input,
        output_path=args.output,
        d=getattr(args, "dim", 2),
        k_lipschitz=getattr(args, "k", None),
        tol=getattr(args, "tol", None),
        max_iters=getattr(args, "max_iters", None),
        seed=getattr(args, "seed", None),
        weights_path=getattr(args, "weights", None),
        knn=getattr(args, "knn", None),
        epsilon=getattr(args, "epsilon", None),
        embed_dim=getattr(args, "embed_dim", None),
        mode=getattr(args, "mode", None),
        p=getattr(args, "p", None),
    )


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand and return its exit status

    0 on success, 1 for a negative validate/experiment verdict, 2 for input
    and usage errors, 3 for solver failures. Errors are reported on stderr
    as a single line ``ERROR:<code>:<detail>``.
    """
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            set_level("DEBUG")
        return run(_run_config(args))
    except StressMDSError as exc:
        detail = " ".join(str(exc.detail).split())
        print(f"ERROR:{exc.code}:{detail}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
