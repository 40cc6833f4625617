"""Acceptance criteria 1 to 13.  Each prints one PASS/FAIL line.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bethepop.bethe import (  # noqa: E402
    InitialData,
    all_rational_roots,
    is_generic,
    satisfies_bethe,
    t_polynomials,
    verify_critical,
    weight_at_infinity,
)
from bethepop.exactalg import INFINITY, ONE, X, Poly  # noqa: E402
from bethepop.fundamental import (  # noqa: E402
    Flag,
    PolySpace,
    frame_of_space,
    fundamental_basis,
    fundamental_operator,
    generating_morphism,
    operator_apply,
    operator_normal_form,
    polynomial_kernel,
    schubert_position,
)
from bethepop.repcount import RootSystem, count_check, shifted_orbit  # noqa: E402
from bethepop.reproduction import c1_population, immediate_descendant, population_atlas  # noqa: E402
from bethepop.selfdual import (  # noqa: E402
    WittBasis,
    bc_generating_morphism,
    canonical_form,
    check_witt,
    dual_frame,
    dual_space,
    fold_bn,
    fold_cn,
    is_selfdual,
    lift_data,
    one_param_action,
    rescale_witt,
)
from bethepop.wronskian import Frame, run_identity_suite  # noqa: E402
from conftest import load  # noqa: E402

HALF = Fraction(1, 2)
SL3 = InitialData.trivial(2)
SL3_DEGREES = {(0, 0), (1, 0), (0, 1), (1, 2), (2, 1), (2, 2)}


def sl3_members(extra_params=range(-3, 4)):
    """Atlas representatives plus pencil members reached from them."""
    atlas = population_atlas(SL3, (ONE, ONE))
    out = list(atlas.representatives.values())
    for tup in list(out):
        for i in (1, 2):
            for c in extra_params:
                cand = immediate_descendant(SL3, tup, i, c)
                if cand not in out:
                    out.append(cand)
    return out


def quadratic_constraint(pair, h=1):
    (a01, a11, a21), (a02, a12, a22) = (tuple(p.coeff(k) for k in range(3)) for p in pair)
    return (a11 + a21 * h) * (a12 - a22 * h) == 2 * a01 * a22 + 2 * a21 * a02


def criterion_1():
    start = time.perf_counter()
    atlas = population_atlas(SL3, (ONE, ONE))
    assert time.perf_counter() - start < 1.0
    assert atlas.degree_vectors() == SL3_DEGREES


def criterion_2():
    members = sl3_members()
    assert len(members) > 30
    for tup in members:
        assert quadratic_constraint(tup)
        scaled = (tup[0] * 3, tup[1] * Fraction(-2, 5))
        assert quadratic_constraint(scaled)
    assert not quadratic_constraint((X * X + 5, X))


def criterion_3():
    space = PolySpace((ONE, X, X * (X - 1) * HALF), 1)
    gram = canonical_form(space, Frame.trivial(2, 1)).gram
    golden = [[0, 0, 1], [0, -1, HALF], [1, HALF, Fraction(-1, 8)]]
    ratio = gram[0][2] / golden[0][2]
    assert all(gram[r][c] == ratio * golden[r][c] for r in range(3) for c in range(3))
    stated = (ONE, X - HALF, (X * X - X - Fraction(1, 8)) * HALF)
    assert check_witt(stated, Frame.trivial(2, 1))


def criterion_4():
    triple = c1_population(ONE, X * X - X + Fraction(1, 8), 1)
    witt = rescale_witt(WittBasis(triple, Frame.trivial(2, 1)), Fraction(-1, 2))
    for alpha in (0, 1, -3, Fraction(7, 2)):
        member = bc_generating_morphism(one_param_action(witt, 1, alpha, "C"), None, "C")[0]
        assert member == (X + alpha - HALF) ** 2 - Fraction(1, 8)
    at_infinity = bc_generating_morphism(one_param_action(witt, 1, INFINITY, "C"), None, "C")[0]
    assert at_infinity == ONE


def criterion_5():
    start = time.perf_counter()
    report = run_identity_suite(trials=200, max_s=4, max_degree=4, per_pair=50, max_s_omission=3)
    assert time.perf_counter() - start < 30
    assert report["B1_one_in_wronskian"]["trials"] >= 200
    assert report["B3_common_factor"]["trials"] >= 200
    assert all(entry["failures"] == 0 for entry in report.values())


def criterion_6():
    sl2 = InitialData("A", 1, (0,), ((2,),))
    sl2_members = []
    for c in range(6):
        tup = immediate_descendant(sl2, (ONE,), 1, c)
        if verify_critical(sl2, tup):
            sl2_members.append(tup)
    cases = [(SL3, [t for t in sl3_members(range(2)) if verify_critical(SL3, t)]), (sl2, sl2_members)]
    for data, members in cases:
        assert len(members) >= 5
        forms = set()
        for tup in members:
            op = fundamental_operator(data, tup)
            forms.add(operator_normal_form(op))
            space = fundamental_basis(data, tup)
            assert all(operator_apply(op, u).is_zero() for u in space.basis)
            assert len(polynomial_kernel(op, max(space.degrees()) + 3)) == data.rank + 1
        assert len(forms) == 1


def criterion_7():
    cases = [
        (InitialData.trivial(1), (X,)),
        (SL3, (X * X + 5 * X + 10, X + 3)),
        (InitialData("A", 1, (0,), ((2,),)), (ONE,)),
        (InitialData("A", 2, (0,), ((1, 0),)), (ONE, ONE)),
        (InitialData("A", 1, (0, Fraction(1, 2)), ((1,), (1,))), (ONE,)),
        (InitialData("A", 2, (0, Fraction(1, 3)), ((1, 1), (0, 1))), (ONE, ONE)),
    ]
    for data, tup in cases:
        assert verify_critical(data, tup)
        assert frame_of_space(fundamental_basis(data, tup)) == t_polynomials(data)


def criterion_8():
    checked = 0
    for entry in load("corpus.json"):
        data = InitialData.from_json(entry["data"])
        tup = tuple(Poly.from_json(p) for p in entry["tuple"])
        if not is_generic(data, tup):
            continue
        roots = all_rational_roots(tup)
        if roots is None:
            continue
        assert bool(verify_critical(data, tup)) == satisfies_bethe(data, roots)
        checked += 1
    assert checked >= 20


def criterion_9():
    for z, lam in [((0, 3), ((1,), (1,))), ((0, 3, 7), ((1,), (1,), (1,))), ((0,), ((2,),))]:
        start = time.perf_counter()
        report = count_check(InitialData("A", 1, z, lam).with_sl_shift(), 1)
        assert time.perf_counter() - start < 1.0
        assert report["agrees"] and report["solverCount"] == report["multiplicity"]


def criterion_10():
    space = PolySpace.all_polys(2, 1)
    for d in (4, 6):
        at_infinity = schubert_position(space, INFINITY, d)
        assert at_infinity.a == (d - 2,) * 3
        total = at_infinity.size
        for z in (0, 1, Fraction(-5, 2)):
            finite = schubert_position(space, z, d)
            assert finite.a == (0, 0, 0)
            total += finite.size
        assert total == 3 * (d + 1 - 3)


def criterion_11():
    for dim in (2, 3, 4, 5):
        space, frame = PolySpace.all_polys(dim - 1, 1), Frame.trivial(dim - 1, 1)
        assert is_selfdual(space, frame)
        form = canonical_form(space, frame)
        assert form.is_symmetric() if dim % 2 else form.is_skew()
    atlas = population_atlas(InitialData("A", 2, (0,), ((1, 1),)), (ONE, ONE))
    tup = atlas.representatives[max(atlas.representatives)]
    nontrivial = fundamental_basis(InitialData("A", 2, (0,), ((1, 1),)), tup)
    for space, frame in [(PolySpace.all_polys(2, 1), Frame.trivial(2, 1)),
                         (nontrivial, t_polynomials(InitialData("A", 2, (0,), ((1, 1),))))]:
        twice = dual_space(dual_space(space, frame), dual_frame(frame))
        assert twice.same_span(space.shifted(space.h))


def criterion_12():
    orbit = shifted_orbit(RootSystem("A", 2), (0, 0))
    assert len(orbit) == 6
    atlas = population_atlas(SL3, (ONE, ONE))
    images = {weight_at_infinity(SL3, deg): deg for deg in atlas.degree_vectors()}
    assert len(images) == 6 and set(images) == set(orbit)
    assert set(images.values()) == SL3_DEGREES


def b2_display(roots, h=Fraction(1)):
    """The two-direction B_2 system with no points, typed in directly."""
    first, second = roots
    for j, t in enumerate(first):
        val = Fraction(1)
        for k, s in enumerate(first):
            if k != j:
                val *= (t - s - h) / (t - s + h)
        for s in second:
            val *= (t - s) / (t - s - h)
        if val != 1:
            return False
    for j, t in enumerate(second):
        val = Fraction(1)
        for s in first:
            val *= ((t - s + h) / (t - s)) ** 2
        for k, s in enumerate(second):
            if k != j:
                val *= (t - s - h) / (t - s + h)
        if val != 1:
            return False
    return True


def criterion_13():
    c1 = InitialData.trivial(1, 1, "C")
    member = X * X - X + Fraction(1, 8)
    assert verify_critical(lift_data(c1), fold_cn((member,), 1))
    b2 = InitialData.trivial(2, 1, "B")
    pair = (X * X + 3 * X, X + 2)
    folded = fold_bn(pair, 1)
    assert folded == (pair[0], pair[1], pair[0].shift(1))
    lifted_verdict = bool(verify_critical(lift_data(b2), folded))
    roots = all_rational_roots(pair)
    assert lifted_verdict and bool(verify_critical(b2, pair))
    assert b2_display(roots) == lifted_verdict == satisfies_bethe(b2, roots)
    wrong = (X * X + 3 * X, X + 1)
    assert not b2_display(all_rational_roots(wrong))
    assert not verify_critical(lift_data(b2), fold_bn(wrong, 1))


CRITERIA = [
    (1, "sl3 population from (1,1) has the six degree vectors", criterion_1),
    (2, "sl3 population members satisfy the quadratic constraint", criterion_2),
    (3, "canonical form of quadratics and the stated Witt basis", criterion_3),
    (4, "C1 family from the one-parameter action", criterion_4),
    (5, "Wronskian identity suite", criterion_5),
    (6, "difference operator is a population invariant", criterion_6),
    (7, "frame of the fundamental space equals the T polynomials", criterion_7),
    (8, "divisibility test agrees with substitution on the corpus", criterion_8),
    (9, "sl2 counting spot checks", criterion_9),
    (10, "Schubert positions of quadratics", criterion_10),
    (11, "selfduality battery", criterion_11),
    (12, "shifted orbit of zero matches the population degrees", criterion_12),
    (13, "B and C folding", criterion_13),
]


def run_criterion(number, title, check):
    try:
        check()
    except Exception:
        print(f"criterion {number:2d}: FAIL  {title}")
        raise
    print(f"criterion {number:2d}: PASS  {title}")


@pytest.mark.parametrize("number, title, check", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, check, capsys):
    with capsys.disabled():
        print()
        run_criterion(number, title, check)


if __name__ == "__main__":
    failures = 0
    for number, title, check in CRITERIA:
        try:
            run_criterion(number, title, check)
        except Exception:
            failures += 1
    sys.exit(1 if failures else 0)
