from dataclasses import replace

import numpy as np
import pytest

from rights_extension.game import GameParams, Institution
from rights_extension.oracle import (
    GridSpec,
    elite_grid,
    random_game_params,
    solve_by_backward_induction,
    stage2_best_responses,
)
from rights_extension.production import Family, ProductionSpec, invert_f_prime


def test_grid_injects_knife_edge(baseline):
    es = elite_grid(baseline, GridSpec(e_steps=7))
    assert 2.0 in es and es[0] == baseline.E0 and es[-1] == baseline.N
    assert np.all(np.diff(es) > 0)


def test_default_grid_covers_optimum(baseline):
    g = GridSpec.for_params(baseline)
    assert g.i_max == pytest.approx(4.0)
    assert g.i_step <= 1e-3


def test_stage2_examples(baseline):
    grid = GridSpec(e_steps=10, i_max=4.0, i_steps=4001)
    I_e, I_d = stage2_best_responses(baseline, 2.0, grid)
    assert abs(I_d - 0.25) <= 1e-3
    I_e2, I_d2 = stage2_best_responses(baseline, 1.5, grid)
    assert I_d2 == 0.0
    target = invert_f_prime(baseline.f, 1.0 / baseline.A)
    for E in (1.0, 1.5, 2.0, 7.0):
        assert abs(stage2_best_responses(baseline, E, grid)[0] - target) <= grid.i_step


def test_backward_induction_examples(baseline):
    rep = solve_by_backward_induction(baseline)
    assert rep.agrees and rep.e_star_grid == 2.0 and rep.v_star is Institution.PUBLIC
    rep = solve_by_backward_induction(replace(baseline, M=2.0))
    assert rep.agrees and rep.e_star_grid == 1.0 and rep.v_star is Institution.STEAL
    rep = solve_by_backward_induction(replace(baseline, E0=3.0))
    assert rep.agrees and rep.e_star_grid == 3.0 and rep.v_star is Institution.PUBLIC


@pytest.mark.parametrize("family", list(Family))
def test_random_draws_agree(family):
    rng = np.random.default_rng(hash(family.value) % 2**32)
    for _ in range(10):
        p = random_game_params(rng, (family,))
        rep = solve_by_backward_induction(p, GridSpec.for_params(p, e_steps=200, max_i_step=2e-3))
        assert rep.agrees, (p, rep)
        assert rep.max_payoff_gap <= 2 * max(rep.payoff_bound_e, rep.payoff_bound_d) + 1e-12


def test_elite_curve_peaks_only_at_e0_or_knife_edge():
    rng = np.random.default_rng(7)
    for _ in range(15):
        p = random_game_params(rng)
        rep = solve_by_backward_induction(p, GridSpec.for_params(p, e_steps=100, max_i_step=5e-3))
        es, pay = rep.e_values, rep.elite_payoffs
        top = pay.max()
        winners = es[pay == top]
        assert set(winners) <= {p.E0, 1.0 / p.G}
        knife = int(np.searchsorted(es, 1.0 / p.G))
        # strictly decreasing on each side of the knife edge
        assert np.all(np.diff(pay[:knife]) < 0)
        assert np.all(np.diff(pay[knife:]) < 0)


def test_random_params_respect_ranges():
    rng = np.random.default_rng(0)
    for _ in range(200):
        p = random_game_params(rng)
        assert 3 <= p.N <= 20 and 1 / p.N < p.G < 1 and 0 < p.E0 < 1 / p.G
        assert 0.1 <= p.M <= 5 and 0.5 <= p.A <= 5
