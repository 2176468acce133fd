import json
from functools import lru_cache

import pytest

from folint.algebra import AFFINE
from folint.cli import fixture_path, parse_surface
from folint.decide import analyze

NAMES = ["ex41", "ex42", "ex43", "ex44"]


def problem(name):
    with open(fixture_path(name)) as fh:
        return json.load(fh)


@lru_cache(maxsize=None)
def analysis(name):
    p = problem(name)
    A = AFFINE.parse(p["form"]["A"])
    B = AFFINE.parse(p["form"]["B"])
    return analyze(A, B, parse_surface(p["surface"]))


def sigma_of(name):
    an = analysis(name)
    return [an.surface.parse(s) for s in problem(name).get("sigma", [])] or None


@pytest.fixture(params=NAMES)
def example(request):
    return request.param
