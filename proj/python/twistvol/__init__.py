"""Colored Jones polynomials of twist knots and the volume conjecture."""

import json as _json

from ._core import (
    BudgetError,
    ConfigError,
    CriticalPoint,
    DomainError,
    ExtrapolationError,
    JonesValue,
    SolverError,
    clausen,
    colored_jones,
    extrapolate_limit,
    grad_f,
    grid_max_im_f,
    li2,
    li2_circle,
    potential_f,
    q_binomial,
    q_pochhammer,
    run_lemma_suite,
    solve_critical,
    volume_sequence,
)
from ._core import run_experiment as _run_experiment


def run_experiment(**kwargs):
    """Run the full experiment and return the report as a dict."""
    return _json.loads(_run_experiment(**kwargs))


__all__ = [
    "BudgetError",
    "ConfigError",
    "CriticalPoint",
    "DomainError",
    "ExtrapolationError",
    "JonesValue",
    "SolverError",
    "clausen",
    "colored_jones",
    "extrapolate_limit",
    "grad_f",
    "grid_max_im_f",
    "li2",
    "li2_circle",
    "potential_f",
    "q_binomial",
    "q_pochhammer",
    "run_experiment",
    "run_lemma_suite",
    "solve_critical",
    "volume_sequence",
]
