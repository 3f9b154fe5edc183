"""Spectral Nevanlinna-Pick solver for 2x2 targets.

The heavy lifting happens in the compiled ``_core`` module; the solver entry
points here return the same JSON reports the command-line tool writes, decoded
into dictionaries.
"""

import json

from ._core import (
    Error,
    cayley,
    cayley_inv,
    in_gamma,
    magic_phi,
    pseudo_hyperbolic,
    robust_criterion,
    robust_threshold,
    spectral_radius,
    trdet,
    two_point_antipodal_solvable,
)
from . import _core

__all__ = [
    "Error",
    "cayley",
    "cayley_inv",
    "in_gamma",
    "magic_phi",
    "mu_demo",
    "pseudo_hyperbolic",
    "robust_criterion",
    "robust_threshold",
    "solve_gamma",
    "solve_spectral",
    "spectral_radius",
    "trdet",
    "two_point_antipodal_solvable",
]


def _config(config):
    return json.dumps(config) if config else ""


def solve_gamma(nodes, values, config=None, seed=None):
    """Solves h(nodes[j]) = values[j] for h: D -> Gamma; values are (s, p) pairs."""
    return json.loads(_core._solve_gamma(list(nodes), [tuple(v) for v in values], _config(config), seed))


def solve_spectral(nodes, targets, config=None, seed=None):
    """Solves F(nodes[j]) = targets[j] with sup r(F) <= 1; targets are 2x2 arrays."""
    return json.loads(_core._solve_spectral(list(nodes), list(targets), _config(config), seed))


def mu_demo(a, c, grid=400, synthesize=True):
    """Robust stabilization example for the plant family with parameters a and c."""
    return json.loads(_core._mu_demo(a, c, grid, synthesize))
