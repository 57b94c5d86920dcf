"""Repeated play with learning-by-doing TFP growth.

Each period the stage game is solved as a one-shot game at the current TFP
``A_t`` and inherited elite ``E0_t``; agents treat future TFP as exogenous,
so no dynamic incentives enter. TFP then moves by

    A_{t+1} = (1 - delta) * A_t + a * I_bar_t

where ``I_bar_t`` is total effort in the economy, and the elite at the end
of period t is the initial elite of period t+1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import DomainError
from .game import GameParams, Institution, solve_equilibrium, threshold_lhs
from .production import invert_f_prime
from .rootfind import bisect, sign_change_brackets

PERIOD_COLUMNS = ("t", "a", "e0", "e", "v", "i_e", "i_d", "i_bar", "y")
STEADY_STATE_COLUMNS = ("regime", "a_ss", "stability", "residual")
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class DynParams:
    base: GameParams
    delta: float
    a_coef: float
    t_max: int = 100_000
    conv_tol: float = 1e-10
    a_blowup: float = 1e9

    def __post_init__(self):
        if not (0.0 < self.delta < 1.0):
            raise DomainError(f"delta must lie in (0, 1), got {self.delta!r}", key="dynamics.delta")
        if not (self.a_coef >= 0.0 and math.isfinite(self.a_coef)):
            raise DomainError(f"a_coef must be >= 0, got {self.a_coef!r}", key="dynamics.a_coef")
        if isinstance(self.t_max, bool) or int(self.t_max) != self.t_max or self.t_max < 1:
            raise DomainError(f"t_max must be an integer >= 1, got {self.t_max!r}", key="dynamics.t_max")
        object.__setattr__(self, "t_max", int(self.t_max))
        if not self.conv_tol > 0:
            raise DomainError(f"conv_tol must be > 0, got {self.conv_tol!r}", key="dynamics.conv_tol")
        if not self.a_blowup > self.conv_tol:
            raise DomainError("a_blowup must exceed conv_tol", key="dynamics.a_blowup")


class Terminal(str, enum.Enum):
    CONVERGED = "converged"
    MAX_PERIODS = "max_periods"
    DIVERGED = "diverged"
    COLLAPSED = "collapsed_to_zero"


@dataclass(frozen=True)
class PeriodRecord:
    t: int
    A: float
    E0: float
    E: float
    V: Institution
    I_e: float
    I_d: float
    I_bar: float
    Y: float
    inclusive: bool

    def as_record(self) -> dict:
        return {"t": self.t, "a": self.A, "e0": self.E0, "e": self.E, "v": self.V.value,
                "i_e": self.I_e, "i_d": self.I_d, "i_bar": self.I_bar, "y": self.Y}


@dataclass
class Trajectory:
    periods: list[PeriodRecord]
    terminal: Terminal
    a_final: float
    transition_period: int | None = None

    @property
    def A(self) -> np.ndarray:
        return np.array([r.A for r in self.periods])


def next_tfp(p: DynParams, A_t: float, I_bar: float) -> float:
    return (1.0 - p.delta) * A_t + p.a_coef * I_bar


def step(p: DynParams, A_t: float, E0_t: float, t: int = 1) -> tuple[PeriodRecord, float, float]:
    """Play period ``t``; return its record, next TFP and next initial elite."""
    if not (A_t > 0 and math.isfinite(A_t)):
        raise DomainError(f"TFP must be finite and > 0, got {A_t!r}", key="A_t")
    out = solve_equilibrium(replace(p.base, A=A_t, E0=E0_t))
    I_bar = out.E_star * out.I_e + (p.base.N - out.E_star) * out.I_d
    rec = PeriodRecord(t, A_t, E0_t, out.E_star, out.V_star, out.I_e, out.I_d, I_bar, out.Y, out.inclusive)
    return rec, next_tfp(p, A_t, I_bar), out.E_star


def simulate(p: DynParams) -> Trajectory:
    """Iterate :func:`step` from ``p.base.A`` until a terminal condition.

    Convergence means ``|A_{t+1} - A_t| < conv_tol * min(1, A_{t+1})``: an
    absolute test for TFP of order one or more, relative below that, so a
    geometric slide to zero is reported as a collapse rather than as
    convergence to a tiny level.
    """
    A, E0 = p.base.A, p.base.E0
    periods: list[PeriodRecord] = []
    transition = None
    terminal = Terminal.MAX_PERIODS
    for t in range(1, p.t_max + 1):
        rec, A_next, E0 = step(p, A, E0, t)
        periods.append(rec)
        if transition is None and rec.inclusive:
            transition = t
        if A_next > p.a_blowup or not math.isfinite(A_next):
            terminal = Terminal.DIVERGED
        elif A_next < p.conv_tol:
            terminal = Terminal.COLLAPSED
        elif abs(A_next - A) < p.conv_tol * min(1.0, A_next):
            terminal = Terminal.CONVERGED
        A = A_next
        if terminal is not Terminal.MAX_PERIODS:
            break
    return Trajectory(periods, terminal, A, transition)


# --- steady states -----------------------------------------------------------

class Regime(str, enum.Enum):
    LOW = "low"
    HIGH = "high"


class Stability(str, enum.Enum):
    STABLE = "stable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class FixedPoint:
    A: float
    stability: Stability
    residual: float
    slope: float


@dataclass
class SteadyStateReport:
    regime: Regime
    fixed_points: list[FixedPoint]
    bracket: tuple[float, float]

    @property
    def stable(self) -> list[FixedPoint]:
        return [fp for fp in self.fixed_points if fp.stability is Stability.STABLE]

    def rows(self) -> list[dict]:
        return [{"regime": self.regime.value, "a_ss": fp.A, "stability": fp.stability.value,
                 "residual": fp.residual} for fp in self.fixed_points]


def aggregate_investment(p: DynParams, A: float, regime: Regime) -> float:
    """Total effort under sustained extractive (LOW) or inclusive (HIGH) play."""
    b = p.base
    I_e = invert_f_prime(b.f, 1.0 / A)
    if regime is Regime.LOW:
        return b.E0 * I_e
    E = 1.0 / b.G
    return E * I_e + (b.N - E) * invert_f_prime(b.f, 1.0 / (b.G * A))


def _scan_grid(p: DynParams, points: int) -> np.ndarray:
    return np.geomspace(p.conv_tol, p.a_blowup, points)


def steady_states(p: DynParams, regime: Regime, scan_points: int = 4000) -> SteadyStateReport:
    """All fixed points of ``A = (a/delta) * aggregate(A)`` on ``[conv_tol, a_blowup]``.

    Roots come from sign changes on a log-spaced scan refined by bisection;
    tangential roots that do not change sign are missed. Stability is read
    off a central-difference slope of the one-period map.
    """
    bracket = (p.conv_tol, p.a_blowup)
    if p.a_coef == 0.0:
        return SteadyStateReport(regime, [], bracket)

    def phi(A: float) -> float:
        return p.a_coef / p.delta * aggregate_investment(p, A, regime) - A

    def T(A: float) -> float:
        return next_tfp(p, A, aggregate_investment(p, A, regime))

    points = []
    for lo, hi in sign_change_brackets(phi, _scan_grid(p, scan_points)):
        root = lo if lo == hi else bisect(phi, lo, hi, xtol=0.0, max_iter=400)
        h = 1e-6 * max(1.0, root)
        left = max(root - h, 0.5 * root)  # stay inside A > 0 for tiny roots
        slope = (T(root + h) - T(left)) / (root + h - left)
        stab = Stability.STABLE if abs(slope) < 1.0 else Stability.UNSTABLE
        points.append(FixedPoint(root, stab, phi(root), slope))
    return SteadyStateReport(regime, points, bracket)


def low_steady_states(p: DynParams) -> SteadyStateReport:
    return steady_states(p, Regime.LOW)


def high_steady_states(p: DynParams) -> SteadyStateReport:
    return steady_states(p, Regime.HIGH)


# --- long-run classification ------------------------------------------------

class LongRun(str, enum.Enum):
    LOW_TRAP = "low_trap"
    TRANSITION_EXPECTED = "transition_expected"
    INDETERMINATE = "indeterminate"


@dataclass
class LongRunReport:
    classification: LongRun
    a_low: float
    criterion: float
    terminal: Terminal
    transition_period: int | None
    consistent: bool
    diagnostics: list[str] = field(default_factory=list)

    def as_record(self) -> dict:
        return {"classification": self.classification.value, "a_low": self.a_low,
                "criterion": self.criterion, "terminal": self.terminal.value,
                "transition_period": self.transition_period, "consistent": self.consistent}


def classify_long_run(p: DynParams, trajectory: Trajectory | None = None) -> LongRunReport:
    """Poverty-trap test at the stable low steady state, cross-checked by simulation.

    The extension condition is evaluated with TFP at the largest stable low
    fixed point. Below one the economy should stay extractive forever
    (``LOW_TRAP``); otherwise extension should eventually happen.
    """
    traj = trajectory if trajectory is not None else simulate(p)
    low = low_steady_states(p)
    diagnostics = []
    stable = low.stable
    if not stable:
        diagnostics.append(f"no stable low steady state among {len(low.fixed_points)} fixed point(s)")
        return LongRunReport(LongRun.INDETERMINATE, math.nan, math.nan, traj.terminal,
                             traj.transition_period, True, diagnostics)
    a_low = max(fp.A for fp in stable)
    criterion = threshold_lhs(replace(p.base, A=a_low))
    cls = LongRun.LOW_TRAP if criterion < 1.0 else LongRun.TRANSITION_EXPECTED
    consistent = (cls is LongRun.TRANSITION_EXPECTED) == (traj.transition_period is not None)
    if not consistent:
        diagnostics.append(
            f"analytic {cls.value} but simulation transition_period={traj.transition_period} "
            f"(terminal {traj.terminal.value})"
        )
    return LongRunReport(cls, a_low, criterion, traj.terminal, traj.transition_period, consistent, diagnostics)
