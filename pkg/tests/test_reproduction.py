import time
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bethepop.bethe import InitialData, t_polynomials, verify_critical
from bethepop.errors import BetheError
from bethepop.exactalg import INFINITY, ONE, X, Poly
from bethepop.reproduction import (
    c1_member,
    c1_parameter_member,
    c1_population,
    c1_precondition,
    c1_relations_hold,
    descendant_family,
    fertility_rhs,
    fertility_solve,
    immediate_descendant,
    population_atlas,
)
from bethepop.wronskian import pairwise_w
from conftest import rationals

SL3 = InitialData.trivial(2)
SL2_POINT = InitialData("A", 1, (0,), ((2,),))
SL3_DEGREES = {(0, 0), (1, 0), (0, 1), (1, 2), (2, 1), (2, 2)}


def test_fertility_solve_examples():
    assert fertility_solve(ONE, ONE, 1) == X
    partner = fertility_solve(X, ONE, 1)
    assert pairwise_w(X, partner, 1) == ONE
    assert fertility_solve(X * X, ONE, 1) is None


def test_family_contract_on_atlas():
    atlas = population_atlas(SL3, (ONE, ONE))
    frame = t_polynomials(SL3)
    for tup in atlas.representatives.values():
        for i in (1, 2):
            fam = descendant_family(SL3, tup, i)
            y = tup[i - 1]
            assert pairwise_w(y, fam.partner, 1) == fam.rhs == fertility_rhs(frame, tup, i)
            if fam.partner.degree != y.degree and not fam.partner.is_zero():
                assert y.degree + fam.partner.degree - 1 == fam.rhs.degree


def test_descendant_chain():
    first = immediate_descendant(SL3, (ONE, ONE), 2, 3)
    assert first == (ONE, X + 3)
    second = immediate_descendant(SL3, first, 1, 5)
    # the x coefficient is 2a - h with a = 3
    assert second == (X * X + 5 * X + 10, X + 3)
    assert verify_critical(SL3, second)
    assert immediate_descendant(SL3, first, 1, INFINITY) == first


def test_infertile_direction_raises():
    with pytest.raises(BetheError) as err:
        descendant_family(SL3, (X * X + 5, X), 1)
    assert err.value.code == "infertile"


def test_sl3_population():
    start = time.perf_counter()
    atlas = population_atlas(SL3, (ONE, ONE))
    assert time.perf_counter() - start < 1.0
    assert atlas.degree_vectors() == SL3_DEGREES
    for tup in atlas.representatives.values():
        assert verify_critical(SL3, tup)
        for i in (1, 2):
            descendant_family(SL3, tup, i)


def test_population_independent_of_start():
    atlas = population_atlas(SL3, (ONE, ONE))
    for tup in atlas.representatives.values():
        assert population_atlas(SL3, tup).degree_vectors() == SL3_DEGREES


def test_population_rejects_non_critical_seed():
    with pytest.raises(BetheError) as err:
        population_atlas(SL3, (X * X + 5, X))
    assert err.value.code == "not-critical"


def test_max_degree_cap():
    with pytest.raises(BetheError) as err:
        population_atlas(SL3, (ONE, ONE), max_degree=1)
    assert err.value.code == "max-degree"


def test_sl2_population_with_a_point():
    atlas = population_atlas(SL2_POINT, (ONE,))
    assert atlas.degree_vectors() == {(0,), (3,)}


def test_atlas_json_is_deterministic():
    assert population_atlas(SL3, (ONE, ONE)).to_json() == population_atlas(SL3, (ONE, ONE)).to_json()


@settings(max_examples=25, deadline=None)
@given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_pencil_members_stay_critical_when_generic(a, b, c):
    tup = immediate_descendant(SL3, (ONE, ONE), 2, a)
    tup = immediate_descendant(SL3, tup, 1, b)
    tup = immediate_descendant(SL3, tup, 2, c)
    verdict = verify_critical(SL3, tup)
    assert verdict or verdict.reason == "non-generic"


C1_SEED = X * X - X + Fraction(1, 8)


def test_c1_triple():
    triple = c1_population(ONE, C1_SEED, 1)
    assert triple == (C1_SEED, -X + Fraction(1, 2), Poly([Fraction(1, 2)]))
    assert c1_relations_hold(ONE, triple, 1)
    assert c1_precondition(ONE, C1_SEED, 1)


def test_c1_precondition_fails_for_non_generic():
    with pytest.raises(BetheError) as err:
        c1_population(ONE, X * (X - Fraction(1, 2)), 1)
    assert err.value.code == "c1-precondition"


@given(rationals())
def test_c1_conic_members(alpha):
    triple = c1_population(ONE, C1_SEED, 1)
    assert c1_member(triple, c1_parameter_member(triple, alpha))
    assert c1_member(triple, c1_parameter_member(triple, INFINITY))
    assert not c1_member(triple, triple[1])


def test_c_kind_direction_uses_conic():
    data = InitialData.trivial(1, kind="C")
    new = immediate_descendant(data, (ONE,), 1, 2)
    assert new[0].degree == 2
    assert verify_critical(data, new)
