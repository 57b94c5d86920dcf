"""Parameter sweeps over one or two config axes.

Each grid point is the base config tree with the axis values written in,
re-validated from scratch, then solved. Invalid points become error rows
instead of aborting the sweep. Rows always come back in the cross-product
order of the axes, whatever the number of workers.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .config import apply_overrides, resolve
from .dynamics import LongRunReport, classify_long_run
from .errors import ConfigError, DomainError
from .game import OUTCOME_COLUMNS, solve_equilibrium
from .identity import solve_equilibrium_identity
from .output import fmt

RESULT_COLUMNS: dict[str, tuple[str, ...]] = {
    "solve": OUTCOME_COLUMNS,
    "identity": ("e_p", "decision", "u_e_incl", "u_e_extr", "e_star", "y"),
    "long_run": ("classification", "a_low", "criterion", "terminal", "transition_period", "consistent"),
}

# leaf keys a sweep axis may name, in dotted form
AXIS_KEYS = frozenset({
    "n", "e0", "m", "a", "g", "production.beta", "production.kappa",
    "dynamics.delta", "dynamics.a_coef", "dynamics.t_max", "dynamics.conv_tol", "dynamics.a_blowup",
    "identity.alpha", "identity.p_tot",
})


@dataclass(frozen=True)
class SweepSpec:
    kind: str
    base: dict[str, Any]
    axes: tuple[tuple[str, tuple], ...] = ()
    max_points: int = 1_000_000

    def __post_init__(self):
        if self.kind not in RESULT_COLUMNS:
            raise ConfigError("constraint_violation", f"unknown sweep kind {self.kind!r}", "sweep.kind")
        if len(self.axes) > 2:
            raise ConfigError("constraint_violation", "at most 2 sweep axes", "sweep.axes")
        for name, values in self.axes:
            if name not in AXIS_KEYS:
                raise ConfigError("constraint_violation", f"sweep axis {name!r} is not a parameter", "sweep.axes")
            if len(values) == 0:
                raise ConfigError("constraint_violation", f"sweep axis {name!r} is empty", "sweep.axes")
        if self.size > self.max_points:
            raise ConfigError("constraint_violation",
                              f"sweep has {self.size} points, limit is {self.max_points}", "sweep.max_points")

    @property
    def size(self) -> int:
        return math.prod(len(v) for _, v in self.axes)

    def points(self) -> list[tuple]:
        return list(itertools.product(*(v for _, v in self.axes)))


@dataclass
class SweepTable:
    axis_names: tuple[str, ...]
    result_columns: tuple[str, ...]
    rows: list[dict[str, Any]]

    @property
    def columns(self) -> tuple[str, ...]:
        return self.axis_names + self.result_columns + ("error_code",)

    def column(self, name: str) -> list:
        return [r.get(name) for r in self.rows]


def _evaluate(kind: str, raw: dict[str, Any]) -> dict[str, Any]:
    try:
        cfg = resolve(raw)
        if kind == "solve":
            return solve_equilibrium(cfg.game).as_record()
        if kind == "identity":
            res = solve_equilibrium_identity(cfg.identity)
            rec = res.as_record(cfg.identity)
            return {"e_p": rec["e_p"], "decision": rec["decision"], "u_e_incl": rec["u_e_incl"],
                    "u_e_extr": rec["u_e_extr"], "e_star": res.outcome.E_star, "y": res.outcome.Y}
        report: LongRunReport = classify_long_run(cfg.dynamics)
        return report.as_record()
    except ConfigError as exc:
        return {"error_code": exc.code}
    except DomainError as exc:
        return {"error_code": exc.code}


def _evaluate_packed(args: tuple[str, dict[str, Any]]) -> dict[str, Any]:
    return _evaluate(*args)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepTable:
    names = tuple(n for n, _ in spec.axes)
    tasks = []
    for values in spec.points():
        tasks.append((spec.kind, apply_overrides(spec.base, list(zip(names, values)))))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
            results = list(pool.map(_evaluate_packed, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_evaluate_packed(t) for t in tasks]
    rows = []
    for values, res in zip(spec.points(), results):
        row = dict(zip(names, values))
        row.update(res)
        rows.append(row)
    return SweepTable(names, RESULT_COLUMNS[spec.kind], rows)


def _as_number(value: Any) -> float | None:
    if isinstance(value, bool):
        return float(value)
    if isinstance(value, (int, float)):
        return float(value)
    if value is None:
        return math.nan
    return None


def emit_plot_data(table: SweepTable, path: str | Path) -> list[Path]:
    """Write one whitespace-separated file per numeric result column.

    Files are ``<dir>/<column>.dat`` with ``#`` header lines and rows
    ``x value`` (one axis) or ``x y value`` (two axes, row-major). Booleans
    are written as 0/1; text columns are skipped.
    """
    if not table.rows:
        raise ValueError("cannot emit plot data for an empty table")
    out_dir = Path(path)
    out_dir.mkdir(parents=True, exist_ok=True)
    axes = table.axis_names or ("index",)
    written = []
    for col in table.result_columns:
        values = [r.get(col) for r in table.rows]
        nums = [_as_number(v) for v in values]
        if any(n is None for n in nums):
            continue
        target = out_dir / f"{col}.dat"
        lines = [f"# {col} vs {' '.join(axes)}", "# " + " ".join(axes + (col,))]
        for i, (row, val) in enumerate(zip(table.rows, nums)):
            coords = [fmt(row[a]) for a in table.axis_names] or [str(i)]
            lines.append(" ".join(coords + [fmt(float(val))]))
        target.write_text("\n".join(lines) + "\n", encoding="utf-8")
        written.append(target)
    return written
