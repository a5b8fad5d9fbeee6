"""Engine settings and configuration"""

from functools import lru_cache
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Engine settings loaded from environment variables"""

    # Logging
    log_level: str = "INFO"

    # Input validation
    symmetry_tol: float = 1e-12

    # Guttman iteration
    guttman_tol: float = 1e-9
    guttman_max_iters: int = 10000
    stress_floor: float = 1e-30
    stationary_tol: float = 1e-12

    # Approximate Lipschitz embedding
    dykstra_tol: float = 1e-9
    dykstra_max_cycles: int = 500
    ale_outer_tol: float = 1e-9
    ale_outer_max_iters: int = 5000
    ale_schedule_cycles: bool = False
    ale_projection_rounds: int = 40
    ale_step_tol: float = 1e-12

    # Interpolation
    interp_rel_tolerance: float = 1e-6
    interp_abs_tolerance: float = 1e-8

    # Experiments
    knn_min: int = 4
    knn_log_factor: float = 2.0
    multistart_restarts: int = 5
    default_seed: int = 0

    # Output
    csv_float_format: str = "%.17g"
    report_schema: str = "stress-mds/1"

    class Config:
        env_file = ".env"
        case_sensitive = False


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance"""
    return Settings()
