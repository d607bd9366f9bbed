# app/api/solve_router.py
import time
from typing import Any, Dict, List, Optional, Tuple

from fastapi import APIRouter
from pydantic import BaseModel, Field

from app.core.errors import InvalidIndependentSet, MisBenchError, NoBoundForDegree
from app.models.bench import SolverId
from app.services.bounds import approximation_ratio, builtin_bounds, density
from app.services.graph_io import build_graph, validate_graph
from app.services.greedy import validate_is
from app.services.solvers import run_solver

router = APIRouter(prefix="/v1/solve", tags=["solve"])


class SolveRequest(BaseModel):
    n: int = Field(..., ge=1)
    edges: List[Tuple[int, int]]
    solver: SolverId = "dga"
    seed: int = Field(0, ge=0)
    params: Dict[str, Any] = Field(default_factory=dict)


class SolveData(BaseModel):
    alpha: int
    members: List[int]
    density: float
    ar: Optional[float] = None
    time_s: float


class SolveResponse(BaseModel):
    success: bool
    message: str
    reason: Optional[str] = None
    data: Optional[SolveData] = None


@router.post("/", response_model=SolveResponse)
def solve_graph(req: SolveRequest):
    try:
        g = build_graph(req.n, req.edges)
        t0 = time.perf_counter()
        s = run_solver(g, req.solver, req.seed, req.params)
        elapsed = time.perf_counter() - t0
    except MisBenchError as e:
        return SolveResponse(success=False, message=str(e), reason=e.reason)
    except ValueError as e:
        return SolveResponse(success=False, message=str(e), reason=type(e).__name__)

    if not validate_is(g, s):
        invalid = InvalidIndependentSet("solver returned adjacent vertices")
        return SolveResponse(success=False, message=str(invalid), reason=invalid.reason)

    # AR only makes sense against a tabulated regular degree
    ar = None
    regular = validate_graph(g).is_regular
    if regular is not None:
        try:
            ar = approximation_ratio(s, g.n, regular, builtin_bounds())
        except NoBoundForDegree:
            pass

    return SolveResponse(
        success=True,
        message=f"{req.solver} found an independent set of size {s.size}",
        data=SolveData(
            alpha=s.size,
            members=list(s.members),
            density=density(s, g.n),
            ar=ar,
            time_s=elapsed,
        ),
    )
