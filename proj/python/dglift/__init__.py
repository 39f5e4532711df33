"""Exact liftings of DG modules along Koszul extensions.

Thin wrapper over the compiled core: every operation takes a problem
document (dict or JSON string) and returns the parsed report dict.
"""

import json as _json

try:
    from . import _core as _impl
except ImportError:  # running against a build tree
    import _core as _impl

__all__ = [
    "check",
    "homology",
    "ext",
    "lift",
    "lift_iterated",
    "unique",
    "semidualizing",
    "resolve",
    "verify_quasilift",
    "SchemaError",
]

SchemaError = _impl.SchemaError


def _text(problem):
    return problem if isinstance(problem, str) else _json.dumps(problem)


def check(problem):
    return _json.loads(_impl.check(_text(problem)))


def homology(problem):
    return _json.loads(_impl.homology(_text(problem)))


def ext(problem, degree=None):
    return _json.loads(_impl.ext(_text(problem), degree))


def lift(problem):
    return _json.loads(_impl.lift(_text(problem)))


def lift_iterated(problem):
    return _json.loads(_impl.lift_iterated(_text(problem)))


def unique(problem):
    return _json.loads(_impl.unique(_text(problem)))


def semidualizing(problem):
    return _json.loads(_impl.semidualizing(_text(problem)))


def resolve(problem, window_top=None):
    return _json.loads(_impl.resolve(_text(problem), window_top))


def verify_quasilift(problem, candidate, allow_shift=False):
    return _json.loads(
        _impl.verify_quasilift(_text(problem), _text(candidate), allow_shift)
    )
