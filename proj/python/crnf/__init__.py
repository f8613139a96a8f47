"""Exact normal forms of codimension-two real submanifolds with a CR singularity.

Documents are plain dicts in the JSON shapes used by the ``crnf`` tool:
rationals are "p/q" strings, coefficients are {"re", "im"} and monomials
carry "dz"/"dzb" exponent arrays.
"""

import json

from . import _crnf
from ._crnf import DimensionError, DomainError, ParseError

__all__ = [
    "DimensionError",
    "DomainError",
    "ParseError",
    "extended_moser",
    "full_normalize",
    "invariants",
    "is_nondegenerate",
    "push_forward",
    "random_manifold",
    "verify",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def extended_moser(manifold):
    """Partial normal form report, map included."""
    return json.loads(_crnf.extended_moser(_text(manifold)))


def full_normalize(manifold):
    """Full normal form report; raises DomainError on a degenerate Delta."""
    return json.loads(_crnf.full_normalize(_text(manifold)))


def verify(manifold):
    return json.loads(_crnf.verify(_text(manifold)))


def push_forward(manifold, transform):
    return json.loads(_crnf.push_forward(_text(manifold), _text(transform)))


def random_manifold(seed, n_vars, degree, s=3, profile="generic"):
    return json.loads(_crnf.random_manifold(seed, n_vars, degree, s, profile))


def invariants(manifold):
    return json.loads(_crnf.invariants(_text(manifold)))


def is_nondegenerate(manifold):
    return invariants(manifold)["nondegenerate"]
