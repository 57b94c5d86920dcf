"""Brute-force backward induction over a discretized version of the game.

Used to check :func:`rights_extension.game.solve_equilibrium` without sharing
any of its algebra. Elite sizes live on a uniform grid over ``[E0, N]``
(with ``1/G`` injected exactly), efforts on a uniform grid over
``[0, i_max]``, and every stage is resolved by exhaustive comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .game import EquilibriumOutcome, GameParams, Institution, solve_equilibrium
from .production import Family, ProductionSpec, eval_f, invert_f_prime

REPORT_COLUMNS = (
    "e_star_grid", "v_star", "i_e_grid", "i_d_grid", "pi_e_grid", "pi_d_grid",
    "agrees", "max_payoff_gap",
)


@dataclass(frozen=True)
class GridSpec:
    e_steps: int = 500
    i_max: float = 1.0
    i_steps: int = 1001

    def __post_init__(self):
        if self.e_steps < 2 or self.i_steps < 2 or not self.i_max > 0:
            raise ValueError(f"invalid grid {self}")

    @property
    def i_step(self) -> float:
        return self.i_max / (self.i_steps - 1)

    @classmethod
    def for_params(cls, p: GameParams, e_steps: int = 500, max_i_step: float = 1e-3) -> "GridSpec":
        """Effort grid reaching 4x the elite optimum, with step at most ``max_i_step``."""
        I_e = invert_f_prime(p.f, 1.0 / p.A)
        i_max = 4.0 * I_e if I_e > 0 else 1.0
        return cls(e_steps=e_steps, i_max=i_max, i_steps=int(math.ceil(i_max / max_i_step)) + 1)


def elite_grid(p: GameParams, grid: GridSpec) -> np.ndarray:
    """Uniform grid over [E0, N] with 1/G inserted exactly when it lies inside."""
    es = np.linspace(p.E0, p.N, grid.e_steps)
    knife = 1.0 / p.G
    if p.E0 <= knife <= p.N:
        es = np.unique(np.append(es, knife))
    return es


class _EffortTable:
    """Effort grid and production values, shared across all elite sizes."""

    def __init__(self, p: GameParams, grid: GridSpec):
        self.I = np.linspace(0.0, grid.i_max, grid.i_steps)
        self.out = p.A * eval_f(p.f, self.I)


def _payoffs(p: GameParams, E: float, I_e: float, I_d: float, V: Institution) -> tuple[float, float]:
    # per-agent bookkeeping: pool of disenfranchised resources, then split or convert
    own_e = p.A * float(eval_f(p.f, I_e)) + p.M
    own_d = p.A * float(eval_f(p.f, I_d)) + p.M
    pool = own_d * (p.N - E)
    if V is Institution.PUBLIC:
        good = p.G * pool
        return own_e - I_e + good, good - I_d
    return own_e - I_e + pool / E, 0.0 - I_d


def _stage3(p: GameParams, E: float, pool: np.ndarray | float):
    """Elite prefers PUBLIC where public share >= stolen share (ties to PUBLIC).

    For a positive pool, G*pool >= pool/E is E >= 1/G; comparing in that
    form keeps the injected knife-edge point exact under rounding.
    """
    return (pool == 0) | (E >= 1.0 / p.G)


def stage2_best_responses(
    p: GameParams, E: float, grid: GridSpec, table: _EffortTable | None = None
) -> tuple[float, float]:
    """Grid argmax efforts (elite, disenfranchised) at elite size ``E``.

    A disenfranchised agent's own effort only matters through its share of
    the public good, when one is provided; under expropriation every unit of
    effort is lost.
    """
    t = table or _EffortTable(p, grid)
    I_e = float(t.I[np.argmax(t.out - t.I)])
    pool = (p.N - E) * (t.out + p.M)
    public = _stage3(p, E, pool)
    objective = np.where(public, p.G * t.out - t.I, -t.I)
    I_d = float(t.I[np.argmax(objective)])
    return I_e, I_d


@dataclass
class OracleReport:
    e_star_grid: float
    v_star: Institution
    i_e_grid: float
    i_d_grid: float
    pi_e_grid: float
    pi_d_grid: float
    agrees: bool
    max_payoff_gap: float
    analytic: EquilibriumOutcome
    e_step: float
    payoff_bound_e: float
    payoff_bound_d: float
    e_values: np.ndarray = field(repr=False)
    elite_payoffs: np.ndarray = field(repr=False)

    @property
    def pi_e_rel_gap(self) -> float:
        return abs(self.pi_e_grid - self.analytic.Pi_e) / max(abs(self.analytic.Pi_e), 1e-300)

    def as_record(self) -> dict:
        return {
            "e_star_grid": self.e_star_grid, "v_star": self.v_star.value,
            "i_e_grid": self.i_e_grid, "i_d_grid": self.i_d_grid,
            "pi_e_grid": self.pi_e_grid, "pi_d_grid": self.pi_d_grid,
            "agrees": self.agrees, "max_payoff_gap": self.max_payoff_gap,
        }


def _one_step_bounds(p: GameParams, sol: EquilibriumOutcome, step: float) -> tuple[float, float]:
    """Largest payoff change from moving each effort by one grid step."""
    base_e, base_d = _payoffs(p, sol.E_star, sol.I_e, sol.I_d, sol.V_star)
    de = dd_e = dd_d = 0.0
    for s in (-step, step):
        ie = max(sol.I_e + s, 0.0)
        pe, _ = _payoffs(p, sol.E_star, ie, sol.I_d, sol.V_star)
        de = max(de, abs(pe - base_e))
        idd = max(sol.I_d + s, 0.0)
        pe, pd = _payoffs(p, sol.E_star, sol.I_e, idd, sol.V_star)
        dd_e = max(dd_e, abs(pe - base_e))
        dd_d = max(dd_d, abs(pd - base_d))
    return de + dd_e, dd_d


def solve_by_backward_induction(p: GameParams, grid: GridSpec | None = None) -> OracleReport:
    grid = grid or GridSpec.for_params(p)
    table = _EffortTable(p, grid)
    es = elite_grid(p, grid)
    elite_pay = np.empty_like(es)
    rows = []
    for k, E in enumerate(es):
        E = float(E)
        I_e, I_d = stage2_best_responses(p, E, grid, table)
        pool = (p.N - E) * (p.A * float(eval_f(p.f, I_d)) + p.M)
        V = Institution.PUBLIC if _stage3(p, E, pool) else Institution.STEAL
        pe, pd = _payoffs(p, E, I_e, I_d, V)
        elite_pay[k] = pe
        rows.append((E, V, I_e, I_d, pe, pd))
    best = int(np.argmax(elite_pay))  # first maximum, i.e. smallest E on ties
    E, V, I_e, I_d, pe, pd = rows[best]

    sol = solve_equilibrium(p)
    e_step = (p.N - p.E0) / (grid.e_steps - 1)
    bound_e, bound_d = _one_step_bounds(p, sol, grid.i_step)
    gap_e = abs(pe - sol.Pi_e)
    gap_d = abs(pd - sol.Pi_d)
    agrees = (
        V is sol.V_star
        and (E > p.E0) == (sol.E_star > p.E0)
        and abs(E - sol.E_star) <= e_step
        and gap_e <= 2 * bound_e + 1e-12
        and gap_d <= 2 * bound_d + 1e-12
    )
    return OracleReport(
        e_star_grid=E, v_star=V, i_e_grid=I_e, i_d_grid=I_d, pi_e_grid=pe, pi_d_grid=pd,
        agrees=bool(agrees), max_payoff_gap=max(gap_e, gap_d), analytic=sol, e_step=e_step,
        payoff_bound_e=bound_e, payoff_bound_d=bound_d, e_values=es, elite_payoffs=elite_pay,
    )


def random_game_params(rng: np.random.Generator, families: tuple[Family, ...] = tuple(Family)) -> GameParams:
    """Draw a valid game with E0 < 1/G.

    N in {3..20}, G in (1/N, 1), E0 in (0, 1/G), M in [0.1, 5], A in
    [0.5, 5]. Isoelastic exponents stay in [0.2, 0.6] and saturating scales
    in [0.5, 3] to keep effort grids at desk-scale sizes.
    """
    N = int(rng.integers(3, 21))
    lo = 1.0 / N
    G = float(rng.uniform(lo, 1.0))
    while not (lo < G < 1.0):
        G = float(rng.uniform(lo, 1.0))
    E0 = float(rng.uniform(0.0, 1.0 / G))
    while not (0.0 < E0 < 1.0 / G):
        E0 = float(rng.uniform(0.0, 1.0 / G))
    M = float(rng.uniform(0.1, 5.0))
    A = float(rng.uniform(0.5, 5.0))
    family = families[int(rng.integers(len(families)))]
    if family is Family.ISOELASTIC:
        f = ProductionSpec.isoelastic(float(rng.uniform(0.2, 0.6)))
    elif family is Family.SATURATING:
        f = ProductionSpec.saturating(float(rng.uniform(0.5, 3.0)))
    else:
        f = ProductionSpec.log()
    return GameParams(N=N, E0=E0, M=M, A=A, G=G, f=f)
