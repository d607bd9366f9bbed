# app/api/bench_router.py
import warnings
from typing import List, Optional

from fastapi import APIRouter, Depends, Query
from pydantic import BaseModel
from sqlalchemy.orm import Session

from app.core.db import get_db
from app.models.bench import BenchRecord
from app.models.bench_record_row import BenchRecordRow
from app.models.bounds import BoundsRow
from app.services.bounds import AsymptoticBoundWarning, builtin_bounds, large_d_bounds

router = APIRouter(prefix="/v1", tags=["bench"])


class LargeDegree(BaseModel):
    d: int
    rho_alg: float
    rho_max: float


class BoundsResponse(BaseModel):
    rows: List[BoundsRow]
    large_d: Optional[LargeDegree] = None


class RecordsResponse(BaseModel):
    success: bool
    count: int
    data: List[BenchRecord]


@router.get("/bounds", response_model=BoundsResponse)
def get_bounds(d: Optional[int] = Query(None, ge=2, description="degree for the large-d formulas")):
    large = None
    if d is not None:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AsymptoticBoundWarning)
            rho_alg, rho_max = large_d_bounds(d)
        large = LargeDegree(d=d, rho_alg=rho_alg, rho_max=rho_max)
    return BoundsResponse(rows=builtin_bounds().rows(), large_d=large)


@router.get("/bench/records", response_model=RecordsResponse)
def list_records(
    solver: Optional[str] = Query(None),
    d: Optional[int] = Query(None),
    limit: int = Query(100, ge=1, le=10_000),
    db: Session = Depends(get_db),
):
    query = db.query(BenchRecordRow)
    if solver is not None:
        query = query.filter(BenchRecordRow.solver == solver)
    if d is not None:
        query = query.filter(BenchRecordRow.d == d)
    rows = query.order_by(BenchRecordRow.rid).limit(limit).all()

    return RecordsResponse(
        success=True,
        count=len(rows),
        data=[row.to_record() for row in rows],
    )
