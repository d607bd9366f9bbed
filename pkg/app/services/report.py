# app/services/report.py
import csv
import io
import math
import warnings
from statistics import mean, median, stdev
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.errors import UnknownFormat
from app.models.bench import BenchRecord
from app.models.bounds import BoundsTable
from app.services.bounds import AsymptoticBoundWarning, is_hard_regime, large_d_bounds

CSV_COLUMNS = ("solver", "d", "n", "seed", "alpha", "density", "ar", "time_s", "valid")
PLOT_COLUMNS = (
    "n", "runs", "mean_ar", "std_ar", "mean_density", "std_density", "median_time_s", "median_total_time_s",
)


def _num(x: Optional[float], precision: int) -> str:
    return "" if x is None else f"{x:.{precision}f}"


def _cell(x: Optional[float], precision: int) -> str:
    return "-" if x is None else f"{x:.{precision}f}"


def _spread(values: Sequence[float]) -> float:
    return stdev(values) if len(values) > 1 else 0.0


def _csv(records: Sequence[BenchRecord], precision: int) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow([
            r.solver,
            r.d,
            r.n,
            r.solver_seed,
            "" if r.alpha is None else r.alpha,
            _num(r.density, precision),
            _num(r.ar, precision),
            _num(r.solve_time_s, precision),
            "true" if r.accepted else "false",
        ])
    return buf.getvalue().encode("utf-8")


def _json_lines(records: Sequence[BenchRecord]) -> bytes:
    return "".join(r.model_dump_json() + "\n" for r in records).encode("utf-8")


def _trend(ns: List[int], values: List[Optional[float]]) -> Optional[float]:
    """Slope of a per-n mean against log10 n."""
    pts = [(math.log10(n), v) for n, v in zip(ns, values) if v is not None]
    if len(pts) < 2:
        return None
    x, y = zip(*pts)
    return float(np.polyfit(x, y, 1)[0])


def _plot_table(records: Sequence[BenchRecord], bounds: BoundsTable, precision: int) -> bytes:
    groups: Dict[Tuple[str, int], Dict[int, List[BenchRecord]]] = {}
    for r in records:
        if not r.accepted:
            continue
        groups.setdefault((r.solver, r.d), {}).setdefault(r.n, []).append(r)

    out: List[str] = []
    for solver, d in sorted(groups):
        by_n = groups[(solver, d)]
        row = bounds.get(d)
        rho_ub = row.rho_ub if row is not None else None

        head = f"# solver={solver} d={d}"
        head += f" rho_ub={rho_ub:.5f}" if rho_ub is not None else " rho_ub=-"
        head += f" hard_regime={'true' if is_hard_regime(d) else 'false'}"
        out.append(head)
        if row is not None:
            for name in ("ar_1rsb", "ar_mcmc", "ar_bpr"):
                value = getattr(row, name)
                if value is not None:
                    out.append(f"# reference {name}={value:.3f}")
        ns = sorted(by_n)
        if is_hard_regime(d):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", AsymptoticBoundWarning)
                large = large_d_bounds(d)
            # measured at the largest n
            ratio = mean(r.density for r in by_n[ns[-1]]) / large.rho_max
            out.append(
                f"# large_d rho_alg={large.rho_alg:.{precision}f} rho_max={large.rho_max:.{precision}f}"
                f" density_over_rho_max={ratio:.{precision}f}"
            )

        mean_ars: List[Optional[float]] = []
        mean_densities: List[Optional[float]] = []
        lines = [" ".join(PLOT_COLUMNS)]
        for n in ns:
            runs = by_n[n]
            densities = [r.density for r in runs]
            ars = [r.ar for r in runs if r.ar is not None]
            mean_ar = mean(ars) if ars else None
            mean_ars.append(mean_ar)
            mean_densities.append(mean(densities))
            lines.append(" ".join([
                str(n),
                str(len(runs)),
                _cell(mean_ar, precision),
                _cell(_spread(ars) if ars else None, precision),
                _cell(mean(densities), precision),
                _cell(_spread(densities), precision),
                _cell(median(r.solve_time_s for r in runs), precision),
                _cell(median(r.total_time_s for r in runs), precision),
            ]))

        trend_of, trend = ("ar", _trend(ns, mean_ars)) if rho_ub is not None else ("density", _trend(ns, mean_densities))
        if trend is not None:
            out.append(f"# trend mean_{trend_of}_per_decade={trend:.{precision}f}")
        out.extend(lines)
        out.append("")

    return "\n".join(out).encode("utf-8") if out else b""


def emit_report(
    records: Sequence[BenchRecord],
    bounds: BoundsTable,
    fmt: str = "csv",
    precision: int = 6,
) -> bytes:
    if fmt == "csv":
        return _csv(records, precision)
    if fmt == "json-lines":
        return _json_lines(records)
    if fmt == "plot-table":
        return _plot_table(records, bounds, precision)
    raise UnknownFormat(fmt)
