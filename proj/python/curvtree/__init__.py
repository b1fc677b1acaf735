"""Exact certification of harmonic curvature seeds on parabolic geometries.

Reports come back as dictionaries; rationals stay exact as fractions.Fraction.
"""

import json
import os
from fractions import Fraction

_packaged = os.path.join(os.path.dirname(__file__), "fixtures")
if "CURVTREE_FIXTURES" not in os.environ and os.path.isdir(_packaged):
    os.environ["CURVTREE_FIXTURES"] = _packaged

from . import _core  # noqa: E402
from ._core import Algebra, CurvtreeError, InputError, fixture_directory, list_fixtures  # noqa: E402

__all__ = [
    "Algebra",
    "CurvtreeError",
    "InputError",
    "audit",
    "certify",
    "check",
    "enumerate_seeds",
    "fixture_directory",
    "fraction",
    "list_fixtures",
]


def fraction(text):
    return Fraction(text)


def _cross(cross):
    if isinstance(cross, int):
        return [cross]
    if isinstance(cross, str):
        return [int(c) for c in cross.split(",")]
    return list(cross)


def enumerate_seeds(algebra, cross, parallel=1):
    return json.loads(_core.enumerate(algebra, _cross(cross), parallel))


def certify(fixture=None, *, algebra=None, cross=None, seed=None):
    if fixture is not None:
        return json.loads(_core.certify_fixture(fixture))
    if algebra is None or cross is None or seed is None:
        raise InputError("certify needs a fixture or algebra, cross and seed")
    return json.loads(_core.certify_seed(algebra, _cross(cross), seed))


def audit(algebra, cross=1, hodge=True):
    return json.loads(_core.audit(algebra, _cross(cross), hodge))


def check(report, name):
    for c in report["checks"]:
        if c["name"] == name:
            return c
    raise KeyError(name)
