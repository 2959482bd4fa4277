"""Exact truncated computations with operads and operadic cochain complexes."""

import json

from . import _core

__all__ = [
    "catalog_names",
    "soul_cohomology",
    "zp_dim",
    "perm_blocks",
    "cochain_cohomology",
    "verify",
]

catalog_names = _core.catalog_names
zp_dim = _core.zp_dim


def soul_cohomology(operad, cap=6, non_sigma=False):
    return json.loads(_core.soul_cohomology(operad, cap, non_sigma))


def perm_blocks(arity):
    return json.loads(_core.perm_blocks(arity))


def cochain_cohomology(algebra, cap=4):
    """`algebra` is a dict or a JSON string with keys operad, dim, structure."""
    if not isinstance(algebra, str):
        algebra = json.dumps(algebra)
    return json.loads(_core.cochain_cohomology(algebra, cap))


def verify(suite="all", cap=7, seed=0):
    return json.loads(_core.verify(suite, cap, seed))
