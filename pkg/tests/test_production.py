import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import brentq

from rights_extension.errors import DomainError
from rights_extension.production import (
    INFINITE_MARGINAL,
    ProductionSpec,
    eval_f,
    eval_f_prime,
    invert_f_prime,
    invert_f_prime_bisect,
    validate_assumptions,
)

from conftest import FAMILIES, productions

ISO = ProductionSpec.isoelastic(0.5)
LOG = ProductionSpec.log()
SAT1 = ProductionSpec.saturating(1.0)
SAT2 = ProductionSpec.saturating(2.0)


def central_diff(spec, I, h=1e-6):
    return (eval_f(spec, I + h) - eval_f(spec, I - h)) / (2 * h)


def test_eval_f_examples():
    assert eval_f(ISO, 0.0) == 0.0
    mpmath.mp.dps = 40
    assert eval_f(ISO, 0.25) == pytest.approx(float(mpmath.mpf("0.25") ** mpmath.mpf("0.5")), rel=1e-15)
    assert eval_f(ISO, 0.25) == pytest.approx(0.5)
    assert eval_f(SAT1, 1.0) == pytest.approx(float(mpmath.mpf(1) / 2), rel=1e-15)


@pytest.mark.parametrize("spec", FAMILIES, ids=str)
def test_f_zero_at_zero(spec):
    assert eval_f(spec, 0.0) == 0.0


@pytest.mark.parametrize("bad", [-1e-9, -1.0, math.inf, math.nan])
def test_eval_f_rejects_bad_effort(bad):
    with pytest.raises(DomainError):
        eval_f(ISO, bad)
    with pytest.raises(DomainError):
        eval_f_prime(LOG, bad)


def test_eval_f_prime_examples():
    assert eval_f_prime(LOG, 0.0) == 1.0
    assert eval_f_prime(ISO, 1.0) == pytest.approx(central_diff(ISO, 1.0), rel=1e-6)
    assert eval_f_prime(ISO, 1.0) == pytest.approx(0.5)
    assert eval_f_prime(SAT2, 1.0) == pytest.approx(central_diff(SAT2, 1.0), rel=1e-6)
    assert eval_f_prime(SAT2, 1.0) == pytest.approx(0.5)


def test_infinite_marginal_is_a_marker():
    m = eval_f_prime(ISO, 0.0)
    assert m is INFINITE_MARGINAL
    with pytest.raises(TypeError):
        m * 2.0


def test_invert_examples():
    # independent inverse: brentq on f'(I) - y
    oracle = brentq(lambda I: eval_f_prime(ISO, I) - 0.5, 1e-9, 100.0, xtol=1e-14)
    assert invert_f_prime(ISO, 0.5) == pytest.approx(oracle, abs=1e-12)
    assert invert_f_prime(ISO, 0.5) == pytest.approx(1.0)
    assert invert_f_prime(LOG, 2.0) == 0.0
    oracle = brentq(lambda I: eval_f_prime(SAT1, I) - 0.25, 0.0, 100.0, xtol=1e-14)
    assert invert_f_prime(SAT1, 0.25) == pytest.approx(oracle, abs=1e-12)
    assert invert_f_prime(SAT1, 0.25) == pytest.approx(1.0)


@pytest.mark.parametrize("y", [0.0, -1.0, math.nan, math.inf])
def test_invert_rejects_bad_target(y):
    with pytest.raises(DomainError):
        invert_f_prime(LOG, y)


def test_corner_convention():
    assert invert_f_prime(LOG, 1.0) == 0.0
    assert invert_f_prime(SAT2, 2.0) == 0.0
    assert invert_f_prime(SAT2, 5.0) == 0.0
    assert invert_f_prime(SAT2, 1.999) > 0.0


def test_validate_assumptions():
    rep = validate_assumptions(SAT1, 0.5)
    assert not rep.interior_at_zero and not rep.ok and rep.messages
    assert validate_assumptions(ISO, 0.1).ok
    assert validate_assumptions(LOG, 2.0).ok


@pytest.mark.parametrize("spec", FAMILIES + [ProductionSpec.isoelastic(0.2), ProductionSpec.isoelastic(0.8)], ids=str)
def test_round_trip_and_bisection(spec):
    for I in np.geomspace(1e-6, 1e3, 60):
        y = eval_f_prime(spec, I)
        assert invert_f_prime(spec, y) == pytest.approx(I, rel=1e-9)
        assert abs(invert_f_prime_bisect(spec, y) - invert_f_prime(spec, y)) <= 1e-10


@pytest.mark.parametrize("spec", FAMILIES, ids=str)
def test_derivative_matches_finite_differences(spec):
    for I in np.geomspace(0.01, 100, 40):
        assert eval_f_prime(spec, I) == pytest.approx(central_diff(spec, I), rel=1e-5)


@given(productions, st.lists(st.floats(1e-6, 1e3), min_size=3, max_size=3, unique=True))
def test_concavity_and_monotonicity(spec, pts):
    a, b, c = sorted(pts)
    fa, fb, fc = (eval_f(spec, x) for x in (a, b, c))
    interp = fa + (fc - fa) * (b - a) / (c - a)
    assert fb >= interp - 1e-12 * max(1.0, abs(interp))
    assert eval_f_prime(spec, a) >= eval_f_prime(spec, c)
    assert eval_f_prime(spec, c) > 0


def test_serialization_round_trip():
    for spec in FAMILIES:
        assert ProductionSpec.from_dict(spec.to_dict()) == spec
    with pytest.raises(DomainError):
        ProductionSpec.from_dict({"family": "cobb"})
    with pytest.raises(DomainError):
        ProductionSpec.from_dict({"family": "isoelastic", "beta": 1.2})
