"""Identity groups with in-group altruism.

Every initial elite member belongs to one group j, which makes up a share
``p_tot`` of the population. An agent's utility is its material payoff plus
``alpha`` times the average material payoff of its group, where a fraction
``q = E / (p_tot * N)`` of the group sits in the elite.

Efforts are the material best responses from the base game; altruism only
enters the elite's institutional and extension choices.
"""

from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass, replace
from typing import Iterable

from .errors import DomainError
from .game import (
    EquilibriumOutcome,
    GameParams,
    Institution,
    material_payoffs,
    optimal_investments,
    total_output,
    threshold_lhs,
)
from .production import ProductionSpec
from .rootfind import bisect_predicate

log = logging.getLogger(__name__)

IDENTITY_COLUMNS = ("p_tot", "alpha", "e_p", "decision", "u_e_incl", "u_e_extr")


@dataclass(frozen=True)
class IdentityParams:
    base: GameParams
    alpha: float
    p_tot: float
    p_elite: float = 1.0

    def __post_init__(self):
        # alpha = 0 is admitted so the base game is an exact special case
        if not (0.0 <= self.alpha < 1.0):
            raise DomainError(f"alpha must lie in [0, 1), got {self.alpha!r}", key="identity.alpha")
        if not (0.0 < self.p_tot <= 1.0):
            raise DomainError(f"p_tot must lie in (0, 1], got {self.p_tot!r}", key="identity.p_tot")
        if self.p_elite != 1.0:
            raise DomainError("only p_elite = 1 is supported", key="identity.p_elite")
        if self.base.E0 > self.p_tot * self.base.N * (1 + 1e-12):
            raise DomainError(
                f"p_tot must be >= e0/n = {self.base.E0 / self.base.N:g} so group j holds the elite",
                key="identity.p_tot",
            )

    @property
    def degenerate(self) -> bool:
        """Whole group already in the initial elite (q = 1 at E0)."""
        return q_fraction(self.base.E0, self) >= 1.0


def q_fraction(E: float, p: IdentityParams) -> float:
    q = p.p_elite * E / (p.p_tot * p.base.N)
    return min(max(q, 0.0), 1.0)


def altruistic_utilities(
    p: IdentityParams, E: float, V: Institution, I_e: float, I_d: float
) -> tuple[float, float, float]:
    """(elite of group j, disenfranchised of group j, disenfranchised of other groups)."""
    Pi_e, Pi_d = material_payoffs(p.base, E, I_e, I_d, V)
    q = q_fraction(E, p)
    group_avg = q * Pi_e + (1.0 - q) * Pi_d
    return Pi_e + p.alpha * group_avg, Pi_d + p.alpha * group_avg, (1.0 + p.alpha) * Pi_d


def commitment_gap(p: IdentityParams, E: float) -> float:
    """Elite utility of PUBLIC minus STEAL at elite size E, efforts held at the public-provision levels."""
    I_e, I_d = optimal_investments(p.base)
    u_pub = altruistic_utilities(p, E, Institution.PUBLIC, I_e, I_d)[0]
    u_steal = altruistic_utilities(p, E, Institution.STEAL, I_e, I_d)[0]
    return u_pub - u_steal


def e_p_bisection(p: IdentityParams, xtol: float = 1e-12) -> float:
    """Smallest E in [E0, N] where the altruistic elite weakly prefers PUBLIC.

    Once the gap turns non-negative it stays so up to E = N (where it is
    zero), so bisection on the sign predicate is well posed.
    """
    b = p.base
    return bisect_predicate(lambda E: commitment_gap(p, E) >= 0.0, b.E0, float(b.N), xtol=xtol)


def e_p_closed_form(p: IdentityParams) -> float:
    """Candidate closed form for the minimal commitment size.

    While q < 1 the gap has the sign of ``G(1+alpha) - alpha/(p_tot N) - 1/E``,
    giving ``1 / (G(1+alpha) - alpha/(p_tot N))``. That root lies inside the
    q < 1 region exactly when ``p_tot N >= 1/G``; otherwise the whole group
    is enfranchised before the switch and the base answer 1/G applies.
    """
    b = p.base
    group = p.p_tot * b.N
    if group >= 1.0 / b.G:
        root = 1.0 / (b.G * (1.0 + p.alpha) - p.alpha / group)
    else:
        root = 1.0 / b.G
    return max(b.E0, root)


_SELF_CHECK_CASES = (
    (10, 1.0, 0.5, 2.0, 0.5, 0.5, 0.5),
    (10, 1.0, 0.5, 2.0, 0.5, 0.5, 0.9),
    (20, 0.5, 1.0, 3.0, 0.3, 0.8, 0.2),
    (20, 0.5, 1.0, 3.0, 0.3, 0.2, 0.1),
    (5, 1.0, 2.0, 1.5, 0.7, 0.0, 1.0),
    (12, 2.5, 0.7, 2.0, 0.35, 0.9, 0.6),
)


@functools.cache
def closed_form_verified(tol: float = 1e-9) -> bool:
    """One-off check of :func:`e_p_closed_form` against bisection."""
    for N, E0, M, A, G, alpha, p_tot in _SELF_CHECK_CASES:
        base = GameParams(N, E0, M, A, G, ProductionSpec.isoelastic(0.5))
        ip = IdentityParams(base, alpha, p_tot)
        cf, bis = e_p_closed_form(ip), e_p_bisection(ip)
        if abs(cf - bis) > tol:
            log.warning("closed-form E_P disagrees with bisection (%r vs %r); using bisection", cf, bis)
            return False
    return True


def min_commitment_size(p: IdentityParams, method: str = "auto") -> float:
    """Minimal elite size at which the altruistic elite weakly prefers PUBLIC.

    ``method`` is ``"closed_form"``, ``"bisection"`` or ``"auto"`` (closed
    form once the self-check has passed, bisection otherwise).
    """
    if method == "closed_form":
        return e_p_closed_form(p)
    if method == "bisection" or (method == "auto" and not closed_form_verified()):
        return e_p_bisection(p)
    if method == "auto":
        return e_p_closed_form(p)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class IdentityOutcome:
    outcome: EquilibriumOutcome
    E_P: float
    U_e_incl: float
    U_e_extr: float
    U_e: float
    U_d_group: float
    U_d_other: float

    @property
    def extends(self) -> bool:
        return self.outcome.V_star is Institution.PUBLIC

    def as_record(self, p: IdentityParams) -> dict:
        return {"p_tot": p.p_tot, "alpha": p.alpha, "e_p": self.E_P,
                "decision": self.outcome.V_star.value,
                "u_e_incl": self.U_e_incl, "u_e_extr": self.U_e_extr}


def solve_equilibrium_identity(p: IdentityParams) -> IdentityOutcome:
    """Extend to E_P with public provision, or stay at E0 and steal.

    The elite compare their altruistic utility across the two profiles and
    extend on ties. If E_P equals E0 no extension is needed and the public
    good is provided at E0.
    """
    b = p.base
    I_e, I_d = optimal_investments(b)
    E_P = min_commitment_size(p)
    u_incl = altruistic_utilities(p, E_P, Institution.PUBLIC, I_e, I_d)[0]
    u_extr = altruistic_utilities(p, b.E0, Institution.STEAL, I_e, 0.0)[0]
    if E_P <= b.E0 or u_incl >= u_extr:
        E, V, Id = E_P, Institution.PUBLIC, I_d
    else:
        E, V, Id = b.E0, Institution.STEAL, 0.0
    Pi_e, Pi_d = material_payoffs(b, E, I_e, Id, V)
    U_e, U_dj, U_do = altruistic_utilities(p, E, V, I_e, Id)
    out = EquilibriumOutcome(
        E_star=E, V_star=V, I_e=I_e, I_d=Id, Pi_e=Pi_e, Pi_d=Pi_d,
        Y=total_output(E, Pi_e, Pi_d, b.N), threshold_lhs=threshold_lhs(b),
        inclusive=V is Institution.PUBLIC, no_commitment_problem=E_P <= b.E0,
    )
    return IdentityOutcome(out, E_P, u_incl, u_extr, U_e, U_dj, U_do)


@dataclass(frozen=True)
class GroupSizeRow:
    p_tot: float
    decision: Institution | None
    E_P: float
    outcome: IdentityOutcome | None
    note: str = ""


def sweep_group_size(p: IdentityParams, p_grid: Iterable[float]) -> list[GroupSizeRow]:
    """Solve along a grid of group shares, sorted ascending.

    Points outside ``[E0/N, 1]`` are skipped with a logged diagnostic; the
    boundary ``p_tot = E0/N`` is kept but flagged as degenerate.
    """
    rows = []
    for pt in sorted(float(x) for x in p_grid):
        try:
            ip = replace(p, p_tot=pt)
        except DomainError as exc:
            log.warning("skipping p_tot=%r: %s", pt, exc)
            continue
        res = solve_equilibrium_identity(ip)
        note = "degenerate: whole group in initial elite" if ip.degenerate else ""
        rows.append(GroupSizeRow(pt, res.outcome.V_star, res.E_P, res, note))
    return rows
