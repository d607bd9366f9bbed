# app/models/bench.py
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.core.config import APP_VERSION, get_settings
from app.core.rng import RNG_ALGORITHM
from app.models.bounds import BoundsRow

SolverId = Literal["ga", "dga", "sa", "pt", "exact"]
SamplerId = Literal["configuration", "steger-wormald"]
ReportFormat = Literal["csv", "json-lines", "plot-table"]

REPORT_FORMATS = ("csv", "json-lines", "plot-table")


class RunSpec(BaseModel):
    solver: SolverId
    params: Dict[str, Any] = Field(default_factory=dict)
    n: int = Field(..., ge=1)
    d: int = Field(..., ge=1)
    sampler: SamplerId = "configuration"
    instance_seed: int = Field(0, ge=0, lt=2**64)
    solver_seed: int = Field(0, ge=0, lt=2**64)
    repetitions: int = Field(1, ge=1)


class BenchRecord(BaseModel):
    spec_index: int = 0
    repetition: int = 0
    solver: SolverId
    params: Dict[str, Any] = Field(default_factory=dict)
    n: int
    d: int
    sampler: SamplerId
    instance_seed: int
    solver_seed: int

    alpha: Optional[int] = None
    density: Optional[float] = None
    ar: Optional[float] = None
    ar_exceeds_bound: bool = False
    valid: bool = False
    maximal: Optional[bool] = None
    hard_regime: bool = False

    gen_time_s: Optional[float] = None
    solve_time_s: Optional[float] = None
    total_time_s: Optional[float] = None

    error: Optional[str] = None
    message: Optional[str] = None

    version: str = APP_VERSION
    rng: str = RNG_ALGORITHM
    tie_break: str = "uniform-random"

    @property
    def accepted(self) -> bool:
        return self.valid and self.error is None


class ScalingFit(BaseModel):
    solver: str
    d: int
    exponent: float
    prefactor: float
    r_squared: float
    n_min: int
    n_max: int
    points: int


# ---------- bench config file ----------

class MatrixEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    solver: SolverId
    n: List[int] = Field(..., min_length=1)
    d: List[int] = Field(..., min_length=1)
    seeds: int = Field(1, ge=1)
    sampler: SamplerId = "configuration"
    params: Dict[str, Any] = Field(default_factory=dict)


class HardBenchmarkPreset(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: List[int] = Field(default_factory=list)
    seeds: int = Field(3, ge=1)
    # per-solver parameter overrides, e.g. {"sa": {"sweeps": 2000}}
    params: Dict[SolverId, Dict[str, Any]] = Field(default_factory=dict)


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    records: str = Field(default_factory=lambda: get_settings().records_path)
    report: Optional[str] = Field(default_factory=lambda: get_settings().report_path)
    report_format: ReportFormat = "plot-table"


class BenchConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    master_seed: int = Field(0, ge=0)
    workers: Optional[int] = Field(None, ge=1)
    output: OutputConfig = Field(default_factory=OutputConfig)
    matrix: List[MatrixEntry] = Field(default_factory=list)
    hard_benchmark: Optional[HardBenchmarkPreset] = None
    bounds: List[BoundsRow] = Field(default_factory=list)
