"""Exact sheaf checks on path categories of finite acyclic quivers.

Quivers, presheaves and representations are plain dicts in the same shape as
the JSON files the command line tool reads. Rationals are "p/q" strings.
"""

import json

from . import _core
from ._core import QsheafError, morphisms_into as _morphisms_into, sieves as _sieves

__all__ = [
    "QsheafError",
    "validate",
    "audit",
    "check_sheaf",
    "cross_validate_discrete",
    "dualize",
    "check_adjunction",
    "left_adjoint_literal",
    "monodromy",
    "morphisms_into",
    "sieves",
    "rank",
    "kernel_basis",
    "run_cli",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def validate(quiver):
    return json.loads(_core.validate(_dump(quiver)))


def audit(quiver, topology="coarse", sieve_limit=14):
    return json.loads(_core.audit(_dump(quiver), topology, sieve_limit))


def check_sheaf(quiver, presheaf, topology="coarse", sieve_limit=14):
    return json.loads(_core.check_sheaf(_dump(quiver), _dump(presheaf), topology, sieve_limit))


def cross_validate_discrete(quiver, presheaf, sieve_limit=14):
    return json.loads(_core.cross_validate_discrete(_dump(quiver), _dump(presheaf), sieve_limit))


def dualize(quiver, representation):
    return json.loads(_core.dualize(_dump(quiver), _dump(representation)))


def check_adjunction(quiver, F, G):
    return json.loads(_core.check_adjunction(_dump(quiver), _dump(F), _dump(G)))


def left_adjoint_literal(quiver, presheaf, vertex):
    return json.loads(_core.left_adjoint_literal(_dump(quiver), _dump(presheaf), vertex))


def monodromy(quiver, presheaf):
    return json.loads(_core.monodromy(_dump(quiver), _dump(presheaf)))


def morphisms_into(quiver, vertex):
    return _morphisms_into(_dump(quiver), vertex)


def sieves(quiver, vertex, sieve_limit=14):
    return _sieves(_dump(quiver), vertex, sieve_limit)


def rank(matrix):
    return _core.rank(_dump(matrix))


def kernel_basis(matrix):
    return json.loads(_core.kernel_basis(_dump(matrix)))


def run_cli(args):
    """Returns (exit status, stdout, stderr)."""
    return _core.run_cli([str(a) for a in args])
