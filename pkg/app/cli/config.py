"""Run and experiment parameter objects for the command line"""

from enum import Enum
from pathlib import Path
from typing import List, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from app.config import get_settings
from app.exceptions import ConfigError, MissingFlag
from app.harness import ManifoldKind

settings = get_settings()


class Subcommand(str, Enum):
    EMBED = "embed"
    ALE_EMBED = "ale-embed"
    ISOMAP = "isomap"
    EXPERIMENT = "experiment"
    VALIDATE = "validate"


class EmbedMode(str, Enum):
    UNCONSTRAINED = "unconstrained"
    ALE = "ale"


class ExperimentKind(str, Enum):
    CONSISTENCY = "consistency"
    INTERPOLANT = "interpolant"
    STABILITY = "stability"
    DECREASE = "decrease"
    SIX_DELTA = "six-delta"


def _validation_detail(exc: ValidationError) -> str:
    first = exc.errors()[0]
    location = ".".join(str(part) for part in first["loc"]) or "config"
    return f"{location}: {first['msg']}"


class RunConfig(BaseModel):
    """One CLI invocation; ``weights_path`` None means uniform weights 1/n^2"""

    model_config = ConfigDict(frozen=True)

    subcommand: Subcommand
    input_path: Path
    output_path: Optional[Path] = None
    d: int = Field(default=2, gt=0)
    k_lipschitz: Optional[float] = Field(default=None, ge=0.0)
    tol: Optional[float] = Field(default=None, gt=0.0)
    max_iters: Optional[int] = Field(default=None, gt=0)
    seed: Optional[int] = None
    weights_path: Optional[Path] = None
    knn: Optional[int] = Field(default=None, gt=0)
    epsilon: Optional[float] = Field(default=None, gt=0.0)
    embed_dim: Optional[int] = Field(default=None, gt=0)
    mode: Optional[EmbedMode] = None
    p: Optional[float] = Field(default=None, ge=1.0)

    @classmethod
    def build(cls, **values) -> "RunConfig":
        """Construct and check the flags each subcommand requires"""
        try:
            config = cls(**values)
        except ValidationError as exc:
            raise ConfigError(_validation_detail(exc)) from exc

        if config.subcommand == Subcommand.ALE_EMBED and config.k_lipschitz is None:
            raise MissingFlag("ale-embed requires --k")
        if config.subcommand in (Subcommand.EMBED, Subcommand.ALE_EMBED, Subcommand.ISOMAP) and (
            config.output_path is None
        ):
            raise MissingFlag(f"{config.subcommand.value} requires --output")
        if config.subcommand == Subcommand.ISOMAP and (config.knn is None) == (config.epsilon is None):
            raise MissingFlag("isomap requires exactly one of --knn and --epsilon")
        return config

    @property
    def rng_seed(self) -> int:
        return settings.default_seed if self.seed is None else self.seed

    @property
    def report_path(self) -> Optional[Path]:
        return self.output_path.with_suffix(".json") if self.output_path else None


def _split(value, cast):
    if isinstance(value, str):
        return [cast(part) for part in value.replace(" ", "").split(",") if part]
    return value


class ExperimentConfig(BaseModel):
    """
    Declarative experiment grid read from ``key=value`` lines

    Unknown keys are rejected. List values are comma separated,
    e.g. ``sizes=50,100,200,400``.
    """

    model_config = ConfigDict(extra="forbid", frozen=True)

    experiment: ExperimentKind
    manifold: ManifoldKind = ManifoldKind.INTERVAL
    sizes: List[int] = Field(default_factory=lambda: [50, 100, 200, 400])
    seeds: List[int] = Field(default_factory=lambda: list(range(10)))
    mode: EmbedMode = EmbedMode.UNCONSTRAINED
    k: Optional[float] = Field(default=None, gt=0.0)
    p: float = Field(default=2.0, ge=1.0)
    use_true_dissimilarity: bool = False
    probe_count: int = Field(default=200, gt=0)
    check_pairs: int = Field(default=10_000, gt=0)
    n: int = Field(default=20, ge=3)
    perturbation_scale: float = Field(default=0.1, ge=0.0)
    ks: List[int] = Field(default_factory=lambda: [1, 2, 4, 8])
    trials: int = Field(default=100_000, gt=0)
    instances: int = Field(default=50, gt=0)

    @field_validator("sizes", "seeds", "ks", mode="before")
    @classmethod
    def _split_ints(cls, value):
        return _split(value, int)

    @field_validator("sizes", "ks")
    @classmethod
    def _increasing(cls, value: List[int]) -> List[int]:
        if not value or any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("must be a nonempty strictly increasing list")
        if value[0] < 1:
            raise ValueError("entries must be positive")
        return value

    @field_validator("seeds")
    @classmethod
    def _nonempty(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one seed is required")
        return value

    @classmethod
    def from_file(cls, path: Path, **overrides) -> "ExperimentConfig":
        """Read ``key=value`` lines (``#`` comments allowed); non-None overrides win"""
        if not Path(path).is_file():
            raise ConfigError(f"{path}: no such file")
        values = {key.strip().lower(): value for key, value in dotenv_values(path).items()}
        values.update({key: value for key, value in overrides.items() if value is not None})
        try:
            config = cls(**values)
        except ValidationError as exc:
            raise ConfigError(_validation_detail(exc)) from exc

        needs_k = config.experiment == ExperimentKind.INTERPOLANT or (
            config.experiment == ExperimentKind.CONSISTENCY and config.mode == EmbedMode.ALE
        )
        if needs_k and config.k is None:
            raise MissingFlag(f"{config.experiment.value} experiment in this mode requires k")
        return config
