"""Bracketing root finders used by the solvers.

Only plain bisection is provided. Every function the package inverts is
monotone on the bracket (or we scan for sign changes first), so the extra
speed of Brent-type methods is not worth the loss of a guaranteed bracket.
"""

from __future__ import annotations

import math
from typing import Callable, Iterator

import numpy as np


def bisect(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-12,
    rtol: float = 4 * np.finfo(float).eps,
    max_iter: int = 200,
) -> float:
    """Root of ``fn`` on ``[lo, hi]`` assuming a sign change.

    Stops when the bracket is narrower than ``xtol + rtol*|mid|`` or after
    ``max_iter`` halvings. An exact zero at an endpoint is returned as is.
    """
    flo = fn(lo)
    fhi = fn(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if math.copysign(1.0, flo) == math.copysign(1.0, fhi):
        raise ValueError(f"no sign change on [{lo}, {hi}]: f={flo}, {fhi}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol + rtol * abs(mid) or mid in (lo, hi):
            return mid
        fmid = fn(mid)
        if fmid == 0.0:
            return mid
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bisect_predicate(
    pred: Callable[[float], bool],
    lo: float,
    hi: float,
    xtol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Smallest x in ``[lo, hi]`` with ``pred(x)`` true, for a monotone predicate.

    ``pred(hi)`` must hold. Returns ``lo`` if ``pred(lo)`` already holds;
    otherwise the returned point satisfies the predicate and lies within
    ``xtol`` of the switch.
    """
    if pred(lo):
        return lo
    if not pred(hi):
        raise ValueError(f"predicate false at upper end {hi}")
    for _ in range(max_iter):
        if hi - lo <= xtol:
            break
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return hi


def sign_change_brackets(
    fn: Callable[[float], float], grid: np.ndarray
) -> Iterator[tuple[float, float]]:
    """Yield consecutive grid intervals over which ``fn`` changes sign.

    A grid point where ``fn`` is exactly zero is yielded as a degenerate
    bracket ``(x, x)``.
    """
    prev_x = float(grid[0])
    prev_f = fn(prev_x)
    if prev_f == 0.0:
        yield prev_x, prev_x
    for x in grid[1:]:
        x = float(x)
        fx = fn(x)
        if fx == 0.0:
            yield x, x
        elif prev_f != 0.0 and (fx > 0) != (prev_f > 0):
            yield prev_x, x
        prev_x, prev_f = x, fx
