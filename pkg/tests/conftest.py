import json
import pathlib
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from bethepop.exactalg import Poly

DATA_DIR = pathlib.Path(__file__).resolve().parent.parent / "data"
STEPS = (Fraction(1), Fraction(1, 2), Fraction(-2, 3))


def rationals(bound=9):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))


def polys(max_degree=4, bound=9):
    return st.lists(rationals(bound), min_size=0, max_size=max_degree + 1).map(Poly)


def nonzero_polys(max_degree=4, bound=9):
    return polys(max_degree, bound).filter(lambda p: not p.is_zero())


steps = st.sampled_from(STEPS)


def load(name):
    return json.loads((DATA_DIR / name).read_text())


@pytest.fixture
def data_dir():
    return DATA_DIR
