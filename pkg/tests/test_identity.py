from dataclasses import replace

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from rights_extension.errors import DomainError
from rights_extension.game import GameParams, Institution, solve_equilibrium
from rights_extension.identity import (
    IdentityParams,
    altruistic_utilities,
    closed_form_verified,
    commitment_gap,
    e_p_bisection,
    e_p_closed_form,
    min_commitment_size,
    q_fraction,
    solve_equilibrium_identity,
    sweep_group_size,
)
from rights_extension.production import ProductionSpec

from conftest import game_params

ISO = ProductionSpec.isoelastic(0.5)


@st.composite
def identity_params(draw):
    base = draw(game_params())
    alpha = draw(st.floats(0.0, 0.99))
    p_tot = draw(st.floats(min(1.0, base.E0 / base.N * (1 + 1e-9)), 1.0))
    return IdentityParams(base, alpha, p_tot)


@pytest.fixture
def ident(baseline):
    return IdentityParams(baseline, alpha=0.5, p_tot=0.5)


def test_q_and_utility_example(ident):
    assert q_fraction(2.0, ident) == pytest.approx(0.4)
    U_e, U_dj, U_do = altruistic_utilities(ident, 2.0, Institution.PUBLIC, 1.0, 0.25)
    # Pi_e = 7.5, Pi_d = 5.75, group average 0.4*7.5 + 0.6*5.75 = 6.45
    assert U_e == pytest.approx(7.5 + 0.5 * 6.45) and U_e == pytest.approx(10.725)
    assert U_dj == pytest.approx(5.75 + 0.5 * 6.45)
    assert U_do == pytest.approx(1.5 * 5.75)


def test_q_clamped(ident):
    assert q_fraction(9.0, ident) == 1.0


@pytest.mark.parametrize("p_tot, expect", [(0.5, 1 / 0.65), (0.9, 1.44)])
def test_e_p_examples(baseline, p_tot, expect):
    ip = IdentityParams(baseline, 0.5, p_tot)
    assert e_p_closed_form(ip) == pytest.approx(expect, rel=1e-12)
    assert e_p_bisection(ip) == pytest.approx(expect, abs=1e-10)


def test_small_group_falls_back_to_base_threshold(baseline):
    # p_tot N = 1.5 < 1/G = 2: the whole group is in the elite before the gap closes
    ip = IdentityParams(baseline, 0.5, 0.15)
    assert e_p_closed_form(ip) == 2.0
    assert e_p_bisection(ip) == pytest.approx(2.0, abs=1e-10)


def test_closed_form_self_check():
    assert closed_form_verified()


def test_closed_form_matches_bisection_on_random_draws():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(150):
        N = int(rng.integers(2, 31))
        G = rng.uniform(1 / N, 1.0)
        E0 = rng.uniform(1e-3, 1 / G)
        if E0 > N:
            continue
        base = GameParams(N, E0, rng.uniform(0.1, 5), rng.uniform(0.5, 5), G, ISO)
        ip = IdentityParams(base, rng.uniform(0, 0.99), rng.uniform(max(E0 / N, 1e-3), 1.0))
        worst = max(worst, abs(e_p_closed_form(ip) - e_p_bisection(ip)))
    assert worst <= 1e-9


@settings(max_examples=200)
@given(identity_params())
def test_e_p_bounds_and_gap_shape(ip):
    b = ip.base
    e_p = e_p_bisection(ip)
    assert b.E0 <= e_p <= max(b.E0, 1 / b.G) + 1e-9
    # gap is increasing up to E_P and non-negative from there on
    es = np.linspace(b.E0, e_p, 12)
    gaps = [commitment_gap(ip, e) for e in es]
    scale = 1e-9 * max(1.0, max(abs(g) for g in gaps))
    assert all(g2 > g1 - scale for g1, g2 in zip(gaps, gaps[1:]))
    for e in np.linspace(e_p, b.N, 8):
        assert commitment_gap(ip, e) >= -scale


@settings(max_examples=200)
@given(identity_params(), st.floats(0, 1), st.floats(0, 1))
def test_e_p_weakly_decreasing(ip, u, v):
    lo, hi = sorted((u, v))
    a1, a2 = lo * 0.99, hi * 0.99
    e1 = e_p_closed_form(replace(ip, alpha=a1))
    e2 = e_p_closed_form(replace(ip, alpha=a2))
    assert e2 <= e1 * (1 + 1e-12)
    pmin = ip.base.E0 / ip.base.N * (1 + 1e-9)
    assume(pmin < 1.0)
    p1, p2 = pmin + lo * (1 - pmin), pmin + hi * (1 - pmin)
    assert e_p_closed_form(replace(ip, p_tot=p2)) <= e_p_closed_form(replace(ip, p_tot=p1)) * (1 + 1e-12)


@settings(max_examples=200)
@given(game_params(), st.floats(0.01, 1.0))
def test_no_altruism_reduces_to_base_game(base, frac):
    p_tot = base.E0 / base.N + frac * (1 - base.E0 / base.N)
    ip = IdentityParams(base, 0.0, p_tot)
    res = solve_equilibrium_identity(ip)
    ref = solve_equilibrium(base)
    assert res.E_P == max(base.E0, 1 / base.G)
    assert (res.outcome.E_star, res.outcome.V_star) == (ref.E_star, ref.V_star)
    assert res.outcome.Pi_e == ref.Pi_e and res.outcome.Pi_d == ref.Pi_d


def test_flip_instance():
    base = GameParams(10, 1.0, 2.0, 2.0, 0.5, ISO)
    assert solve_equilibrium(base).V_star is Institution.STEAL
    small = solve_equilibrium_identity(IdentityParams(base, 0.5, 0.2))
    big = solve_equilibrium_identity(IdentityParams(base, 0.5, 0.9))
    assert small.outcome.V_star is Institution.STEAL and small.outcome.E_star == 1.0
    assert big.outcome.V_star is Institution.PUBLIC and big.outcome.E_star == pytest.approx(1.44)
    assert big.U_e_incl >= big.U_e_extr


def test_group_size_sweep(baseline):
    base = replace(baseline, M=2.0)
    ip = IdentityParams(base, 0.5, 1.0)
    grid = [0.05, 0.1, 0.3, 0.5, 0.7, 0.9, 1.0, 1.2]
    rows = sweep_group_size(ip, grid)
    assert [r.p_tot for r in rows] == [0.1, 0.3, 0.5, 0.7, 0.9, 1.0]
    assert "degenerate" in rows[0].note and not rows[-1].note
    ext = [r.outcome.outcome.E_star for r in rows if r.decision is Institution.PUBLIC]
    assert ext and all(b <= a for a, b in zip(ext, ext[1:]))
    # once the elite extends, larger groups keep extending
    pub = [r.decision is Institution.PUBLIC for r in rows]
    assert pub == sorted(pub)


def test_strictly_decreasing_over_interior_grid(baseline):
    ip = IdentityParams(baseline, 0.5, 1.0)
    grid = np.linspace(0.25, 1.0, 16)
    e_ps = [min_commitment_size(replace(ip, p_tot=float(p))) for p in grid]
    assert np.all(np.diff(e_ps) < 0)


def test_methods_agree(ident):
    cf = min_commitment_size(ident, "closed_form")
    assert min_commitment_size(ident, "bisection") == pytest.approx(cf, abs=1e-10)
    assert min_commitment_size(ident) == cf
    with pytest.raises(ValueError):
        min_commitment_size(ident, "guess")


@pytest.mark.parametrize("kw, key", [
    ({"alpha": 1.0}, "identity.alpha"), ({"alpha": -0.1}, "identity.alpha"),
    ({"p_tot": 0.0}, "identity.p_tot"), ({"p_tot": 1.5}, "identity.p_tot"),
    ({"p_tot": 0.05}, "identity.p_tot"),
])
def test_validation(ident, kw, key):
    with pytest.raises(DomainError) as exc:
        replace(ident, **kw)
    assert exc.value.key == key


def test_record(ident):
    rec = solve_equilibrium_identity(ident).as_record(ident)
    assert list(rec) == ["p_tot", "alpha", "e_p", "decision", "u_e_incl", "u_e_extr"]
    assert rec["decision"] == "public"
