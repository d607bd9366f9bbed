# app/models/bounds.py
from typing import Dict, Iterable, List, Optional

from pydantic import BaseModel, Field

from app.core.errors import NoBoundForDegree


class BoundsRow(BaseModel):
    d: int = Field(..., ge=3)
    rho_ub: Optional[float] = Field(None, gt=0.0, lt=1.0)
    ar_1rsb: Optional[float] = Field(None, gt=0.0, le=1.0)
    ar_mcmc: Optional[float] = Field(None, gt=0.0, le=1.0)
    ar_bpr: Optional[float] = Field(None, gt=0.0, le=1.0)


class BoundsTable:
    """Per-degree reference constants; rows added later override earlier ones."""

    def __init__(self, rows: Iterable[BoundsRow] = ()) -> None:
        self._rows: Dict[int, BoundsRow] = {}
        self.extend(rows)

    def extend(self, rows: Iterable[BoundsRow]) -> "BoundsTable":
        for row in rows:
            self._rows[row.d] = row
        return self

    def get(self, d: int) -> Optional[BoundsRow]:
        return self._rows.get(d)

    def rho_ub(self, d: int) -> float:
        row = self._rows.get(d)
        if row is None or row.rho_ub is None:
            raise NoBoundForDegree(d)
        return row.rho_ub

    def rows(self) -> List[BoundsRow]:
        return [self._rows[d] for d in sorted(self._rows)]

    def __contains__(self, d: int) -> bool:
        return d in self._rows
