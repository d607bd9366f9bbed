# app/services/bounds.py
import math
import warnings
from typing import NamedTuple, Union

from app.models.bounds import BoundsRow, BoundsTable
from app.models.independent_set import IndependentSet

# Density upper bounds for d=3,5 and reference approximation ratios
# (replica 1RSB estimate, MCMC, BP with reinforcement).
_BUILTIN_ROWS = (
    BoundsRow(d=3, rho_ub=0.45537, ar_1rsb=0.990, ar_mcmc=0.984, ar_bpr=0.987),
    BoundsRow(d=5, rho_ub=0.38443, ar_1rsb=0.987, ar_mcmc=0.981, ar_bpr=0.981),
)

# independent sets cluster above this degree
HARD_REGIME_DEGREE = 16


class AsymptoticBoundWarning(UserWarning):
    pass


class LargeDegreeBounds(NamedTuple):
    rho_alg: float
    rho_max: float


def builtin_bounds() -> BoundsTable:
    return BoundsTable(_BUILTIN_ROWS)


def _alpha(s: Union[IndependentSet, int]) -> int:
    return s if isinstance(s, int) else s.size


def density(s: Union[IndependentSet, int], n: int) -> float:
    if n <= 0:
        raise ValueError("n must be positive")
    return _alpha(s) / n


def approximation_ratio(s: Union[IndependentSet, int], n: int, d: int, table: BoundsTable) -> float:
    """Density over the tabulated rho_ub(d). Values above 1 are possible at finite n and are not clamped."""
    return density(s, n) / table.rho_ub(d)


def large_d_bounds(d: int) -> LargeDegreeBounds:
    """(ln d / d, 2 ln d / d): best known algorithmic density and the MIS density, both leading order in large d."""
    if d < 2:
        raise ValueError("large-d bounds need d >= 2")
    warnings.warn(
        "large_d_bounds are asymptotic large-d expressions, not finite-d bounds",
        AsymptoticBoundWarning,
        stacklevel=2,
    )
    rho_alg = math.log(d) / d
    return LargeDegreeBounds(rho_alg=rho_alg, rho_max=2.0 * rho_alg)


def is_hard_regime(d: int) -> bool:
    return d > HARD_REGIME_DEGREE
