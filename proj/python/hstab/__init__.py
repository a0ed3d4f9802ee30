"""Hamiltonian stability of Lagrangian submanifolds: catalog analysis and the reproduction suite."""

import json

from . import _hstab
from ._hstab import (
    CatalogError,
    hyperbola_matrix,
    set_threads,
    spectral_criterion,
    torus_mode_value,
    tube_ids,
    wirtinger_bound,
)

__all__ = [
    "CatalogError",
    "analyze",
    "hyperbola_matrix",
    "set_threads",
    "spectral_criterion",
    "torus_mode_value",
    "tube_ids",
    "tube_table",
    "verify",
    "wirtinger_bound",
]


def analyze(catalog_id, strategy="auto", grid=0):
    """Verdict record for one catalog entry, as a dict."""
    return json.loads(_hstab.analyze(catalog_id, strategy, grid))


def verify(grid=0, determinism=False):
    """Run the reproduction checks; returns {"checks": [...], "all_pass": bool}."""
    return json.loads(_hstab.verify(grid, determinism))


def tube_table(grid=0):
    return json.loads(_hstab.tube_table(grid))
