"""Sp-filtrations of Spec(Z) and finite posets, and truncations in D(Z).

Thin wrappers over the compiled module: inputs and outputs are plain dicts in
the same JSON schema as the command line tool.
"""

import json

from . import _tstruct
from ._tstruct import DEFAULT_SEED, SCHEMA, JsonError

__all__ = [
    "DEFAULT_SEED", "SCHEMA", "JsonError",
    "weak_cousin", "strong_cousin", "localize", "cm_filtration", "dual_filtration",
    "census", "truncate", "in_aisle", "in_coaisle", "homology", "dualize",
    "cm_membership", "kashiwara1", "kashiwara2", "run_suite",
]


def _s(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def _spectrum(spec):
    # "Z" is the spectrum name, not a JSON document
    return json.dumps(spec)


def weak_cousin(filtration):
    return json.loads(_tstruct.weak_cousin(_s(filtration)))


def strong_cousin(filtration):
    return json.loads(_tstruct.strong_cousin(_s(filtration)))


def localize(filtration, at):
    return json.loads(_tstruct.localize(_s(filtration), at))


def cm_filtration(spectrum="Z"):
    return json.loads(_tstruct.cm_filtration(_spectrum(spectrum)))


def dual_filtration(filtration):
    return json.loads(_tstruct.dual_filtration(_s(filtration)))


def census(spectrum, a, b, primes=(2, 3, 5), cofinite=False, weak_only=False):
    return json.loads(_tstruct.census(_spectrum(spectrum), a, b, list(primes), cofinite, weak_only))


def truncate(filtration, obj):
    return json.loads(_tstruct.truncate(_s(filtration), _s(obj)))


def in_aisle(filtration, obj):
    return _tstruct.in_aisle(_s(filtration), _s(obj))


def in_coaisle(filtration, obj):
    return _tstruct.in_coaisle(_s(filtration), _s(obj))


def homology(obj):
    return json.loads(_tstruct.homology(_s(obj)))


def dualize(obj):
    return json.loads(_tstruct.dualize(_s(obj)))


def cm_membership(obj):
    by_hom, by_aisle = _tstruct.cm_membership(_s(obj))
    return {"byHom": by_hom, "byAisle": by_aisle}


def kashiwara1(subset, obj, n):
    return dict(zip(("c1", "c2", "c3"), _tstruct.kashiwara1(_s(subset), _s(obj), n)))


def kashiwara2(subset, obj, n):
    return dict(zip(("c1", "c2"), _tstruct.kashiwara2(_s(subset), _s(obj), n)))


def run_suite(name, seed=DEFAULT_SEED, complexes=500, pairs=200, samples=200):
    return json.loads(_tstruct.run_suite(name, seed, complexes, pairs, samples))
