# tests/conftest.py
# Shared algebras, Casimir tensors and the seeded generator for property tests.

import os

import numpy as np
import pytest

from src.algebra.scalars import RATIONALS
from src.algebra.tensors import SparseTensor, sym_sig
from src.lie.factories import heisenberg, sl2 as make_sl2, sl3 as make_sl3
from src.utils.configloader import load_config

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


@pytest.fixture
def fixture_path():
    return lambda name: os.path.join(FIXTURES, name)


@pytest.fixture(scope="module")
def sl2():
    return make_sl2()


@pytest.fixture(scope="module")
def sl3():
    return make_sl3()


@pytest.fixture(scope="module")
def heis():
    return heisenberg()


@pytest.fixture
def killing_c(sl2):
    """Inverse of the trace form on sl2: e.f + f.e + 1/2 h.h."""
    return SparseTensor.from_terms(3, sym_sig(2), RATIONALS, [((0, 1), 1), ((2, 2), "1/2")])


@pytest.fixture
def rng():
    return np.random.default_rng(load_config()["random"]["seed"])
