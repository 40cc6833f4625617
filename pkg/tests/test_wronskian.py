from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from bethepop.errors import BetheError
from bethepop.exactalg import ONE, X, Poly, poly_shift
from bethepop.wronskian import (
    IDENTITIES,
    Frame,
    check_identity,
    divided_wronskian,
    frame_divisor,
    pairwise_w,
    run_identity_suite,
    wronskian,
)
from conftest import nonzero_polys, polys, steps

x = sympy.Symbol("x")


def sympy_wronskian(gs, h):
    """Independent oracle: the determinant of shifted values, expanded by sympy."""
    exprs = [as_sympy(g) for g in gs]
    hh = sympy.Rational(h.numerator, h.denominator)
    m = sympy.Matrix(len(gs), len(gs), lambda i, j: exprs[i].subs(x, x + j * hh))
    return sympy.expand(m.det())


def as_sympy(p):
    return sum((sympy.Rational(c.numerator, c.denominator) * x**k for k, c in enumerate(p.coeffs)), sympy.Integer(0))


def test_examples():
    assert wronskian([X, X * X], 1) == X * X + X
    assert wronskian([ONE, X, X * X], 1) == Poly([2])
    assert wronskian([], 1) == ONE
    assert pairwise_w(ONE, X, 1) == ONE


def test_frame_divisor_and_division():
    frame = Frame((X, X + 1), Fraction(1))
    # U_3 = T_1(x) T_1(x+h) T_2(x)
    assert frame_divisor(frame, 3) == X * (X + 1) * (X + 1)
    assert frame_divisor(frame, 1) == ONE
    assert divided_wronskian([X * X], frame) == X * X
    assert divided_wronskian([X, X * X], frame) == X + 1


def test_divided_wronskian_inexact_is_none():
    frame = Frame((X,), Fraction(1))
    assert divided_wronskian([ONE, X + 5], frame) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(3), min_size=1, max_size=3), steps)
def test_matches_determinant_oracle(gs, h):
    assert sympy.expand(as_sympy(wronskian(gs, h)) - sympy_wronskian(gs, h)) == 0


@given(nonzero_polys(3), polys(3), steps, st.integers(-3, 3))
def test_proportional_inputs_vanish(g, other, h, k):
    assert wronskian([g, g * k, other], h).is_zero()


@given(polys(3), polys(3), polys(3), steps)
def test_swap_flips_sign(a, b, c, h):
    assert wronskian([a, b, c], h) == -wronskian([b, a, c], h)


@given(st.integers(0, 4), st.integers(0, 4), steps)
def test_degree_law(l, m, h):
    if l == m:
        return
    u, v = (X + 1) ** l, (X - 2) ** m
    w = pairwise_w(u, v, h)
    assert w.degree == l + m - 1
    assert w.lc == (m - l) * h


@settings(max_examples=60, deadline=None)
@given(st.lists(polys(4), max_size=4), steps)
def test_one_in_wronskian(gs, h):
    assert check_identity("B1_one_in_wronskian", gs, h=h)


@settings(max_examples=60, deadline=None)
@given(st.lists(polys(3), max_size=4), polys(3), steps)
def test_common_factor(gs, f, h):
    assert check_identity("B3_common_factor", gs, f=f, h=h)


@settings(max_examples=30, deadline=None)
@given(st.lists(polys(3), max_size=3), steps)
def test_delta_expansion(gs, h):
    assert check_identity("B2_delta_expansion", gs, h=h)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 3).flatmap(lambda s: st.tuples(st.lists(polys(3), min_size=s + 1, max_size=s + 1), st.integers(0, s))), steps)
def test_omission_identities(pair, h):
    gs, k = pair
    assert check_identity("B4_wr_id_2", gs, k=k, h=h)
    assert check_identity("B5_wr_id_1", gs, k=k, h=h)


def test_identity_errors():
    with pytest.raises(BetheError):
        check_identity("B3_common_factor", [X])
    with pytest.raises(BetheError):
        check_identity("B4_wr_id_2", [X], k=2)
    with pytest.raises(BetheError):
        check_identity("nope", [X])


def test_suite_report_shape():
    report = run_identity_suite(trials=5, per_pair=1, seed=3)
    assert set(report) == set(IDENTITIES)
    assert all(entry["failures"] == 0 for entry in report.values())
    assert report == run_identity_suite(trials=5, per_pair=1, seed=3)


def test_shifted_frame_product():
    t = Frame((X + 2,), Fraction(1, 2))
    assert frame_divisor(t, 2) == X + 2
    assert frame_divisor(Frame((X, X), Fraction(1)), 3) == X * poly_shift(X, 1) * X
