import random
from pathlib import Path

import pytest

from bvcalc import BVSpace, EVEN, LieModel, ODD
from bvcalc.superalgebra import Context

MODELS = Path(__file__).resolve().parent.parent / "models"


@pytest.fixture
def rng():
    return random.Random(20240811)


@pytest.fixture
def ctx_mixed():
    """Two even and two odd plain generators."""
    return Context.plain([("x", EVEN), ("y", EVEN), ("t1", ODD), ("t2", ODD)])


@pytest.fixture
def bvs_2_2():
    """BV space over a 2|2 field space (eight generators total)."""
    return BVSpace.over_fields([("x1", EVEN), ("x2", EVEN),
                                ("t1", ODD), ("t2", ODD)])


@pytest.fixture
def bvs_1_1():
    return BVSpace.over_fields([("x", EVEN), ("th", ODD)])


def sl2() -> LieModel:
    """[h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieModel.build(3, {(1, 0, 1): 2, (2, 0, 2): -2, (0, 1, 2): 1})


def sl2_rescaled() -> LieModel:
    """Basis (t, e, f) with t = h/2: [t,e] = e, [t,f] = -f, [e,f] = 2t."""
    return LieModel.build(3, {(1, 0, 1): 1, (2, 0, 2): -1, (0, 1, 2): 2})


def solvable2() -> LieModel:
    """[e1,e2] = e2."""
    return LieModel.build(2, {(1, 0, 1): 1})


def abelian(m: int) -> LieModel:
    return LieModel.build(m, {})
