"""JSON report schemas"""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.config import get_settings

settings = get_settings()


class EmbedReport(BaseModel):
    """Report written next to an embedding produced by ``embed``"""

    model_config = ConfigDict(populate_by_name=True)

    schema_id: str = Field(default_factory=lambda: settings.report_schema, alias="schema")
    n: int
    d: int
    stress_trace: List[float]
    final_stress: float
    iterations: int
    termination: str
    stationarity_residual: float
    final_step_norm: float


class AleEmbedReport(EmbedReport):
    """Report for ``ale-embed``; ``iterations`` counts outer projected steps"""

    K: float
    max_violation_trace: List[float]
    dykstra_cycles_per_iter: List[int]
    warnings: List[str] = Field(default_factory=list)


class IsomapReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_id: str = Field(default_factory=lambda: settings.report_schema, alias="schema")
    n: int
    edges: int
    zero_weight_edges: int
    rule: str
    embed: Optional[EmbedReport] = None


class ValidateReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_id: str = Field(default_factory=lambda: settings.report_schema, alias="schema")
    n: int
    valid: bool
    max_entry: float
    triangle_defect: float
    metric: bool
