"""Exception hierarchy shared by the library and the CLI"""

from typing import Any, List, Optional

import numpy as np


class StressMDSError(Exception):
    """Base error carrying a machine-readable code and a CLI exit status"""

    code: str = "error"
    exit_code: int = 2

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail


class InputError(StressMDSError):
    """Malformed or invalid input (exit status 2)"""

    exit_code = 2


class SolverError(StressMDSError):
    """Hard failure reported by a solver (exit status 3)"""

    exit_code = 3


class NotSquare(InputError):
    code = "not-square"


class AsymmetricBeyondTolerance(InputError):
    code = "asymmetric"


class NegativeEntry(InputError):
    code = "negative-entry"


class NonzeroDiagonal(InputError):
    code = "nonzero-diagonal"


class NonFiniteEntry(InputError):
    code = "non-finite"


class RaggedRows(InputError):
    code = "ragged"


class MatrixParseError(InputError):
    code = "parse"


class DimensionMismatch(InputError):
    code = "dimension-mismatch"


class DimensionTooLarge(InputError):
    code = "dimension-too-large"


class InfiniteRatio(InputError):
    code = "infinite-ratio"


class DisconnectedWeights(InputError):
    code = "disconnected-weights"


class DegeneratePair(InputError):
    code = "degenerate-pair"


class MissingFlag(InputError):
    code = "missing-flag"


class ConfigError(InputError):
    code = "config"


class UsageError(InputError):
    """Command line could not be parsed"""

    code = "usage"


class LipschitzViolationAtAnchors(InputError):
    """Anchor values break the per-component Lipschitz condition"""

    code = "lipschitz-violation"

    def __init__(self, pair: tuple, component: int, ratio: float, constant: float):
        super().__init__(
            f"anchors {pair[0]},{pair[1]} component {component}: "
            f"ratio {ratio:.6g} exceeds c={constant:.6g}"
        )
        self.pair = pair
        self.component = component
        self.ratio = ratio
        self.constant = constant


class DisconnectedGraph(SolverError):
    """Neighborhood graph has more than one connected component"""

    code = "disconnected"

    def __init__(self, labels: np.ndarray, n: Optional[int] = None):
        components = int(labels.max()) + 1 if len(labels) else 0
        prefix = f"n={n} " if n is not None else ""
        super().__init__(f"{prefix}graph has {components} components")
        self.labels = labels
        self.n = n

    @property
    def components(self) -> List[List[int]]:
        """Vertex partition, one sorted list per component"""
        return [
            np.flatnonzero(self.labels == c).tolist()
            for c in range(int(self.labels.max()) + 1)
        ]


class MaxCyclesExceeded(SolverError):
    """Dykstra projection hit its cycle limit before reaching tolerance"""

    code = "max-cycles"

    def __init__(self, best: Any, violation: float, cycles: int):
        super().__init__(f"no convergence after {cycles} cycles (violation {violation:.3e})")
        self.best = best
        self.violation = violation
        self.cycles = cycles
