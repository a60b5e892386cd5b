"""Exact top homology of Voronoi complexes and abstract tessellations."""

import json

from . import _core
from ._core import (
    CacheCorruption,
    IndexOutOfRange,
    InvariantViolation,
    ParseError,
    VorcycleError,
    WrongGroupParity,
    class_count,
    dd_sanity,
)

__all__ = [
    "CacheCorruption",
    "IndexOutOfRange",
    "InvariantViolation",
    "ParseError",
    "VorcycleError",
    "WrongGroupParity",
    "check_tess",
    "class_count",
    "complex",
    "dd_sanity",
    "perfect_forms",
    "sector_fan",
    "verify",
    "verify_top_cycle",
    "voronoi_instance",
]


def perfect_forms(n, seed_perm=0):
    """Voronoi graph: nodes with Gram matrices, edges with witnesses."""
    return json.loads(_core.graph_json(n, seed_perm))


def complex(n, group, seed_perm=0):
    """Top two degrees of the Voronoi complex, as stored by the CLI."""
    return json.loads(_core.complex_json(n, group, seed_perm))


def verify(n, group, seed_perm=0):
    """Theorem report, dispatched on group and parity."""
    return json.loads(_core.verify_json(n, group, seed_perm))


def verify_top_cycle(n, group):
    return json.loads(_core.verify_top_cycle_json(n, group))


def sector_fan(k):
    return json.loads(_core.sector_fan_json(k))


def voronoi_instance(n, group):
    return json.loads(_core.voronoi_instance_json(n, group))


def check_tess(instance):
    """Verdict of the general theorem on an instance given as a dict."""
    return json.loads(_core.check_tess_json(json.dumps(instance)))
