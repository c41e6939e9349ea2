"""Strong EKR laboratory for random k-uniform hypergraphs."""

import json as _json

from ._core import (
    ArgumentError,
    DomainError,
    Hypergraph,
    ParseError,
    ResourceError,
    alpha_beta,
    brute_force_ekr,
    classify_witness,
    find_generic_clique,
    find_hilton_milner,
    intersection_probability,
    intersection_probability_exact,
    is_generic_clique,
    lambda_peak,
    lambda_prime_t,
    lambda_t,
    max_intersecting_family,
    parse_hypergraph,
    run_trials,
    sample,
    threshold_estimate,
    verify_ekr,
    wilson_interval,
)
from ._core import _calc_report_json, _sweep_json

__all__ = [
    "ArgumentError",
    "DomainError",
    "Hypergraph",
    "ParseError",
    "ResourceError",
    "alpha_beta",
    "brute_force_ekr",
    "calc_report",
    "classify_witness",
    "estimate_ekr_curve",
    "find_generic_clique",
    "find_hilton_milner",
    "intersection_probability",
    "intersection_probability_exact",
    "is_generic_clique",
    "lambda_peak",
    "lambda_prime_t",
    "lambda_t",
    "max_intersecting_family",
    "parse_hypergraph",
    "run_trials",
    "sample",
    "threshold_estimate",
    "verify_ekr",
    "wilson_interval",
]


def calc_report(n, k, *, p=None, phi=None, psi=None, eps_thr=0.1, c_regime=0.2, threshold=True):
    """All analytic quantities for one parameter point, as a dict."""
    return _json.loads(_calc_report_json(n, k, p, phi, psi, eps_thr, c_regime, threshold))


def estimate_ekr_curve(n, k, phi_grid, trials, seed, *, sampler="bernoulli", workers=1, max_edges=2000):
    """Pr(EKR) estimates over a phi grid, as a dict with one row per grid point."""
    return _json.loads(_sweep_json(n, k, list(phi_grid), trials, seed, sampler, workers, max_edges))
