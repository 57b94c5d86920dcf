"""Concave production technologies f with f(0) = 0.

Three families are supported:

* ``isoelastic``: f(I) = I**beta, 0 < beta < 1 (f'(0) unbounded)
* ``log``:        f(I) = ln(1 + I)
* ``saturating``: f(I) = kappa * I / (1 + I)

Output of an agent investing effort I is ``A * f(I)``; TFP ``A`` is applied by
callers, never here.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import DomainError
from .rootfind import bisect


class Family(str, enum.Enum):
    ISOELASTIC = "isoelastic"
    LOG = "log"
    SATURATING = "saturating"


class Unbounded(enum.Enum):
    """Marker for an infinite marginal product at zero effort.

    Deliberately not a float: arithmetic on it raises instead of silently
    propagating ``inf``.
    """

    MARGINAL = "inf"

    def __repr__(self) -> str:
        return "INFINITE_MARGINAL"


INFINITE_MARGINAL = Unbounded.MARGINAL


@dataclass(frozen=True)
class ProductionSpec:
    family: Family
    beta: float | None = None
    kappa: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.ISOELASTIC:
            if self.beta is None or not (0.0 < self.beta < 1.0):
                raise DomainError("production.beta must lie in (0, 1)", key="production.beta")
        elif self.family is Family.SATURATING:
            if self.kappa is None or not (self.kappa > 0.0 and math.isfinite(self.kappa)):
                raise DomainError("production.kappa must be > 0", key="production.kappa")

    @classmethod
    def isoelastic(cls, beta: float) -> "ProductionSpec":
        return cls(Family.ISOELASTIC, beta=float(beta))

    @classmethod
    def log(cls) -> "ProductionSpec":
        return cls(Family.LOG)

    @classmethod
    def saturating(cls, kappa: float) -> "ProductionSpec":
        return cls(Family.SATURATING, kappa=float(kappa))

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ProductionSpec":
        try:
            family = Family(d["family"])
        except KeyError:
            raise DomainError("production.family is required", key="production.family")
        except ValueError:
            raise DomainError(
                f"production.family must be one of {[f.value for f in Family]}, got {d['family']!r}",
                key="production.family",
            )
        unknown = set(d) - {"family", "beta", "kappa"}
        if unknown:
            raise DomainError(f"unknown production keys {sorted(unknown)}", key="production")
        if family is Family.ISOELASTIC:
            return cls(family, beta=_as_float(d.get("beta"), "production.beta"))
        if family is Family.SATURATING:
            return cls(family, kappa=_as_float(d.get("kappa"), "production.kappa"))
        return cls(family)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"family": self.family.value}
        if self.family is Family.ISOELASTIC:
            out["beta"] = self.beta
        elif self.family is Family.SATURATING:
            out["kappa"] = self.kappa
        return out

    def __str__(self) -> str:
        if self.family is Family.ISOELASTIC:
            return f"isoelastic(beta={self.beta:g})"
        if self.family is Family.SATURATING:
            return f"saturating(kappa={self.kappa:g})"
        return "log"


def _as_float(value, key: str) -> float:
    if value is None:
        raise DomainError(f"{key} is required", key=key)
    try:
        return float(value)
    except (TypeError, ValueError):
        raise DomainError(f"{key} must be a number, got {value!r}", key=key)


def _check_effort(I):
    arr = np.asarray(I, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError(f"effort must be finite and >= 0, got {I!r}", key="I")


def eval_f(spec: ProductionSpec, I):
    """f(I) for a scalar or an array of efforts."""
    _check_effort(I)
    if spec.family is Family.ISOELASTIC:
        return np.power(I, spec.beta) if isinstance(I, np.ndarray) else float(I) ** spec.beta
    if spec.family is Family.LOG:
        return np.log1p(I) if isinstance(I, np.ndarray) else math.log1p(I)
    return spec.kappa * I / (1.0 + I)


def eval_f_prime(spec: ProductionSpec, I: float) -> float | Unbounded:
    """f'(I). Returns ``INFINITE_MARGINAL`` for the isoelastic family at I = 0."""
    _check_effort(I)
    I = float(I)
    if spec.family is Family.ISOELASTIC:
        if I == 0.0:
            return INFINITE_MARGINAL
        return spec.beta * I ** (spec.beta - 1.0)
    if spec.family is Family.LOG:
        return 1.0 / (1.0 + I)
    return spec.kappa / (1.0 + I) ** 2


def marginal_at_zero(spec: ProductionSpec) -> float | Unbounded:
    """f'(0+)."""
    return eval_f_prime(spec, 0.0)


def _check_target(y: float):
    if not (isinstance(y, (int, float, np.floating)) and math.isfinite(y) and y > 0):
        raise DomainError(f"target marginal must be finite and > 0, got {y!r}", key="y")


def _is_corner(spec: ProductionSpec, y: float) -> bool:
    top = marginal_at_zero(spec)
    return top is not INFINITE_MARGINAL and y >= top


def invert_f_prime(spec: ProductionSpec, y: float) -> float:
    """Effort I >= 0 with f'(I) = y, or 0 when y >= f'(0+) (corner)."""
    _check_target(y)
    y = float(y)
    if _is_corner(spec, y):
        return 0.0
    if spec.family is Family.ISOELASTIC:
        return (y / spec.beta) ** (1.0 / (spec.beta - 1.0))
    if spec.family is Family.LOG:
        return 1.0 / y - 1.0
    return math.sqrt(spec.kappa / y) - 1.0


def invert_f_prime_bisect(spec: ProductionSpec, y: float, xtol: float = 1e-12) -> float:
    """Same contract as :func:`invert_f_prime`, by bisection on f'(I) - y.

    Bracket starts at [1e-12, 1] and the upper end doubles until f' drops
    below ``y``. Kept as an independent check of the closed forms.
    """
    _check_target(y)
    y = float(y)
    if _is_corner(spec, y):
        return 0.0
    lo, hi = 1e-12, 1.0

    def gap(I: float) -> float:
        return eval_f_prime(spec, I) - y

    if gap(lo) <= 0.0:
        # root lies in (0, 1e-12], already within tolerance of the floor
        return lo
    while gap(hi) > 0.0:
        hi *= 2.0
        if hi > 1e300:
            raise DomainError(f"no finite effort has marginal {y}", key="y")
    return bisect(gap, lo, hi, xtol=xtol, max_iter=200)


@dataclass(frozen=True)
class AssumptionReport:
    """Outcome of checking A f'(0) > 1 and A f'(inf) < 1. Never raises."""

    interior_at_zero: bool
    below_one_eventually: bool
    messages: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.interior_at_zero and self.below_one_eventually


def validate_assumptions(spec: ProductionSpec, A: float) -> AssumptionReport:
    if not A > 0:
        raise DomainError(f"A must be > 0, got {A!r}", key="a")
    messages = []
    top = marginal_at_zero(spec)
    interior = top is INFINITE_MARGINAL or A * top > 1.0
    if not interior:
        messages.append(f"A*f'(0) = {A * top:g} <= 1: elite investment is a corner at 0")
    # f' -> 0 for all three families, so A f'(I) < 1 for some finite I
    eventually = True
    return AssumptionReport(interior, eventually, tuple(messages))
