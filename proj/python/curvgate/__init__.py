"""Curvature pinching checks: algebraic curvature tensors, isotropic
curvature minimization and sphere-theorem thresholds."""

import json

from . import _curvgate
from ._curvgate import (
    __version__,
    clifford_product,
    constant_curvature,
    cp_totally_geodesic,
    delta_eps,
    gauss_tensor,
    holomorphic_sectional,
    isotropic,
    mean_data,
    min_isotropic,
    ricci,
    run_cli,
    space_form,
    symmetry_violation,
    threshold,
    weak_ricci_min,
    weighted_isotropic,
)


def check(config, strict_tol=1e-9):
    """Classify the points of a check config (dict) against every theorem."""
    return json.loads(_curvgate.check_json(json.dumps(config), strict_tol))


def verify(suite="identities", seed=0, samples=100, tol=1e-9):
    """Run a verification suite and return the report as a dict."""
    return json.loads(_curvgate.verify_json(suite, seed, samples, tol))


__all__ = [
    "check",
    "clifford_product",
    "constant_curvature",
    "cp_totally_geodesic",
    "delta_eps",
    "gauss_tensor",
    "holomorphic_sectional",
    "isotropic",
    "mean_data",
    "min_isotropic",
    "ricci",
    "run_cli",
    "space_form",
    "symmetry_violation",
    "threshold",
    "verify",
    "weak_ricci_min",
    "weighted_isotropic",
]
