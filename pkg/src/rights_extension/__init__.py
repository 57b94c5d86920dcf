"""Solver and simulator for a property-rights extension game.

An elite can enlarge itself before a hold-up stage to make public-good
provision, rather than expropriation, its own preferred choice. The package
solves the one-shot game, checks it against brute force, simulates repeated
play with learning-by-doing TFP, and handles in-group altruism.
"""

from .dynamics import DynParams, classify_long_run, high_steady_states, low_steady_states, simulate, step
from .errors import ConfigError, DomainError
from .game import (
    EquilibriumOutcome,
    GameParams,
    Institution,
    comparative_static_elite_size,
    material_payoffs,
    optimal_investments,
    solve_equilibrium,
    stage3_choice,
    threshold_lhs,
    total_output,
)
from .identity import IdentityParams, min_commitment_size, q_fraction, solve_equilibrium_identity
from .oracle import GridSpec, solve_by_backward_induction
from .production import ProductionSpec, eval_f, eval_f_prime, invert_f_prime, validate_assumptions

__version__ = "0.1.0"
