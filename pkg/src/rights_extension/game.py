"""The one-shot three-stage extension game.

Stage 1: the initial elite of size ``E0`` picks a final elite size
``E in [E0, N]``. Stage 2: everyone picks effort. Stage 3: the elite either
provides a public good out of the disenfranchised's resources (``PUBLIC``) or
expropriates and splits them (``STEAL``).

The equilibrium is solved in closed form: the elite either stays at ``E0``
and steals, or extends exactly to ``1/G`` and provides the public good,
depending on the sign of ``threshold_lhs(p) - 1``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Any, Iterable

from .errors import DomainError
from .production import ProductionSpec, eval_f, invert_f_prime


class Institution(str, enum.Enum):
    PUBLIC = "public"
    STEAL = "steal"


@dataclass(frozen=True)
class GameParams:
    N: int
    E0: float
    M: float
    A: float
    G: float
    f: ProductionSpec

    def __post_init__(self):
        if isinstance(self.N, bool) or int(self.N) != self.N or self.N < 2:
            raise DomainError(f"n must be an integer >= 2, got {self.N!r}", key="n")
        object.__setattr__(self, "N", int(self.N))
        for key, val in (("e0", self.E0), ("m", self.M), ("a", self.A), ("g", self.G)):
            if not (isinstance(val, (int, float)) and math.isfinite(val)):
                raise DomainError(f"{key} must be a finite number, got {val!r}", key=key)
        if not (1.0 / self.N < self.G < 1.0):
            raise DomainError(f"g must lie in (1/n, 1) = ({1.0 / self.N:g}, 1), got {self.G!r}", key="g")
        if not (0.0 < self.E0 <= self.N):
            raise DomainError(f"e0 must lie in (0, n], got {self.E0!r}", key="e0")
        if not self.M > 0:
            raise DomainError(f"m must be > 0, got {self.M!r}", key="m")
        if not self.A > 0:
            raise DomainError(f"a must be > 0, got {self.A!r}", key="a")
        if not isinstance(self.f, ProductionSpec):
            raise DomainError("production must be a ProductionSpec", key="production")

    @property
    def no_commitment_problem(self) -> bool:
        """True when the initial elite already prefers the public good."""
        return self.E0 >= 1.0 / self.G

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "GameParams":
        missing = [k for k in ("n", "e0", "m", "a", "g", "production") if k not in d]
        if missing:
            raise DomainError(f"missing required key {missing[0]!r}", key=missing[0])
        num = {}
        for key in ("e0", "m", "a", "g"):
            val = d[key]
            if isinstance(val, bool) or not isinstance(val, (int, float)):
                raise DomainError(f"{key} must be a number, got {val!r}", key=key)
            num[key] = float(val)
        if not isinstance(d["production"], dict):
            raise DomainError("production must be a mapping", key="production")
        return cls(
            N=d["n"], E0=num["e0"], M=num["m"], A=num["a"], G=num["g"],
            f=ProductionSpec.from_dict(d["production"]),
        )

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.N, "e0": self.E0, "m": self.M, "a": self.A, "g": self.G,
                "production": self.f.to_dict()}


OUTCOME_COLUMNS = ("e_star", "v_star", "i_e", "i_d", "pi_e", "pi_d", "y", "threshold_lhs", "inclusive")


@dataclass(frozen=True)
class EquilibriumOutcome:
    E_star: float
    V_star: Institution
    I_e: float
    I_d: float
    Pi_e: float
    Pi_d: float
    Y: float
    threshold_lhs: float
    inclusive: bool
    no_commitment_problem: bool = False

    def as_record(self) -> dict[str, Any]:
        """Flat record in the fixed output column order."""
        return {
            "e_star": self.E_star, "v_star": self.V_star.value, "i_e": self.I_e,
            "i_d": self.I_d, "pi_e": self.Pi_e, "pi_d": self.Pi_d, "y": self.Y,
            "threshold_lhs": self.threshold_lhs, "inclusive": self.inclusive,
        }


def optimal_investments(p: GameParams) -> tuple[float, float]:
    """Elite effort and disenfranchised effort under anticipated public provision.

    The elite keep their own output, so they solve ``A f'(I) = 1``. A
    disenfranchised agent only gets ``G`` of each unit it produces back
    through the public good, so it solves ``G A f'(I) = 1``.
    """
    I_e = invert_f_prime(p.f, 1.0 / p.A)
    I_d = invert_f_prime(p.f, 1.0 / (p.G * p.A))
    return I_e, I_d


def resources(p: GameParams, I: float) -> float:
    return p.A * eval_f(p.f, I) + p.M


def material_payoffs(
    p: GameParams, E: float, I_e: float, I_d: float, V: Institution
) -> tuple[float, float]:
    """(elite payoff, disenfranchised payoff) for a given profile."""
    if not (p.E0 <= E <= p.N):
        raise DomainError(f"elite size must lie in [e0, n] = [{p.E0:g}, {p.N}], got {E!r}", key="E")
    R_e = resources(p, I_e)
    R_d = resources(p, I_d)
    pool = (p.N - E) * R_d
    if Institution(V) is Institution.PUBLIC:
        public_good = pool * p.G
        return public_good + R_e - I_e, public_good - I_d
    return pool / E + R_e - I_e, 0.0 - I_d


def stage3_choice(p: GameParams, E: float, R_d: float) -> Institution:
    """Elite's institutional choice; indifference goes to the public good."""
    if not (p.E0 <= E <= p.N):
        raise DomainError(f"elite size must lie in [e0, n], got {E!r}", key="E")
    if R_d < 0:
        raise DomainError(f"disenfranchised resources must be >= 0, got {R_d!r}", key="R_d")
    # (N-E) R_d G >= (N-E) R_d / E, written so that E = 1/G compares exactly
    if (p.N - E) * R_d == 0 or E >= 1.0 / p.G:
        return Institution.PUBLIC
    return Institution.STEAL


def threshold_lhs(p: GameParams) -> float:
    """Left side of the extension condition; the elite extends iff it is >= 1."""
    if not p.M > 0:
        raise DomainError("m must be > 0", key="m")
    _, I_d = optimal_investments(p)
    return p.E0 * (p.G + (p.G - 1.0 / p.N) * p.A * eval_f(p.f, I_d) / p.M)


def total_output(E: float, Pi_e: float, Pi_d: float, N: float) -> float:
    return E * Pi_e + (N - E) * Pi_d


def solve_equilibrium(p: GameParams) -> EquilibriumOutcome:
    I_e, I_d_public = optimal_investments(p)
    lhs = threshold_lhs(p)
    if p.no_commitment_problem:
        E, V, I_d = p.E0, Institution.PUBLIC, I_d_public
    elif lhs >= 1.0:
        E, V, I_d = 1.0 / p.G, Institution.PUBLIC, I_d_public
    else:
        E, V, I_d = p.E0, Institution.STEAL, 0.0
    Pi_e, Pi_d = material_payoffs(p, E, I_e, I_d, V)
    return EquilibriumOutcome(
        E_star=E, V_star=V, I_e=I_e, I_d=I_d, Pi_e=Pi_e, Pi_d=Pi_d,
        Y=total_output(E, Pi_e, Pi_d, p.N), threshold_lhs=lhs,
        inclusive=V is Institution.PUBLIC,
        no_commitment_problem=p.no_commitment_problem,
    )


def comparative_static_elite_size(p: GameParams, G_grid: Iterable[float]) -> list[tuple[float, float]]:
    """Equilibrium elite size along a grid of public-good productivities."""
    return [(float(g), solve_equilibrium(replace(p, G=float(g))).E_star) for g in G_grid]
