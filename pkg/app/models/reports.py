"""Solver result records"""

from dataclasses import dataclass, field
from enum import Enum
from typing import List

import numpy as np

from app.models.matrices import Configuration


class Termination(str, Enum):
    CONVERGED = "Converged"
    MAX_ITERATIONS = "MaxIterations"
    STATIONARY_START = "StationaryStart"


@dataclass
class SolveReport:
    """Outcome of the unconstrained Guttman iteration"""

    config: Configuration
    stress_trace: List[float]
    iterations: int
    termination: Termination
    final_step_norm: float = 0.0  # trace(dZ^t L dZ) of the last step

    @property
    def final_stress(self) -> float:
        return self.stress_trace[-1]


@dataclass
class AleReport:
    """Outcome of the projected (Approximate Lipschitz) Guttman iteration"""

    config: Configuration
    stress_trace: List[float]
    max_violation_trace: List[float]
    outer_iterations: int
    dykstra_cycles_per_iter: List[int]
    termination: Termination
    final_step_norm: float = 0.0
    lipschitz_k: float = 0.0
    warnings: List[str] = field(default_factory=list)

    @property
    def final_stress(self) -> float:
        return self.stress_trace[-1]

    @property
    def final_violation(self) -> float:
        return self.max_violation_trace[-1]


@dataclass
class SpectralInit:
    """Classical MDS output: full descending spectrum plus the leading coordinates"""

    eigenvalues: np.ndarray
    config: Configuration
