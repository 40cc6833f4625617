"""Fertility, immediate descendants, populations and the C_1 module."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bethe import (
    InitialData,
    generic_failure,
    neighbor,
    normalize_tuple,
    t_polynomials,
    verify_critical,
    weight_at_infinity,
)
from .errors import BetheError
from .exactalg import (
    INFINITY,
    ONE,
    Poly,
    solve_linear,
    span_coordinates,
    to_fraction,
    poly_shift,
)
from .wronskian import Frame, pairwise_w

# The deterministic parameter schedule used whenever a generic choice is needed.
RETRY_SCHEDULE = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6, 7, -7, 8)


def fertility_solve(y: Poly, rhs: Poly, h) -> Poly | None:
    """Polynomial v with W(y, v) = rhs, normalized to have no x^deg(y) term.

    Returns None when no polynomial solution exists.
    """
    h = to_fraction(h)
    if y.is_zero():
        raise BetheError("zero-entry", "fertility needs a nonzero polynomial")
    l = y.degree
    if rhs.is_zero():
        return Poly()
    target = rhs.degree + 1 - l
    if target < 0:
        return None
    top = max(target, l)
    columns = [pairwise_w(y, Poly.monomial(k), h) for k in range(top + 1)]
    height = max([c.degree + 1 for c in columns] + [rhs.degree + 1])
    matrix = [[c.coeff(r) for c in columns] for r in range(height)]
    sol = solve_linear(matrix, [rhs.coeff(r) for r in range(height)])
    if sol is None:
        return None
    v = Poly(sol.particular)
    if v.degree >= l and v.coeff(l) != 0:
        v = v - y * (v.coeff(l) / y.lc)
    return v


def fertility_rhs(frame: Frame, tup: Sequence[Poly], i: int, kind: str = "A") -> Poly:
    """Right-hand side of the fertility equation in direction i."""
    h = frame.h
    n_dir = len(tup)
    prev_shifted = poly_shift(neighbor(tup, i - 1), h)
    if kind == "B" and i == n_dir:
        return prev_shifted * prev_shifted * frame[i]
    if kind == "C" and i == n_dir:
        return prev_shifted * poly_shift(tup[i - 1], h / 2) * frame[i]
    return frame[i] * prev_shifted * neighbor(tup, i + 1)


@dataclass(frozen=True)
class DescendantFamily:
    """The pencil of descendants of ``base`` in one direction."""

    base: tuple[Poly, ...]
    direction: int
    partner: Poly
    rhs: Poly

    def member(self, c) -> tuple[Poly, ...]:
        i = self.direction
        y = self.base[i - 1]
        new = y if c is INFINITY else self.partner + y * to_fraction(c)
        return self.base[: i - 1] + (new.monic(),) + self.base[i:]


def _frame_for(data: InitialData) -> Frame:
    return t_polynomials(data)


def descendant_family(data: InitialData, tup: Sequence[Poly], i: int) -> DescendantFamily:
    tup = normalize_tuple(tup)
    if not 1 <= i <= data.rank or len(tup) != data.rank:
        raise BetheError("bad-direction", f"direction {i} invalid for a tuple of length {len(tup)}")
    frame = _frame_for(data)
    rhs = fertility_rhs(frame, tup, i, data.kind)
    partner = fertility_solve(tup[i - 1], rhs, data.h)
    if partner is None:
        raise BetheError("infertile", f"tuple is not fertile in direction {i}", direction=i)
    return DescendantFamily(tup, i, partner, rhs)


def immediate_descendant(data: InitialData, tup: Sequence[Poly], i: int, c) -> tuple[Poly, ...]:
    """Replace y_i by a member of its pencil; c = INFINITY keeps y_i.

    For kind C in direction N the pencil is replaced by the conic of the
    C_1 module: c maps to u3 + c*u2 + c^2*u1/2, where u1 = y_N.
    """
    tup = normalize_tuple(tup)
    if data.kind == "C" and i == data.rank:
        if c is INFINITY:
            return tup
        frame = _frame_for(data)
        weight = poly_shift(neighbor(tup, i - 1), data.h) * frame[i]
        u1, u2, u3 = c1_population(weight, tup[i - 1], data.h)
        c = to_fraction(c)
        new = u3 + u2 * c + u1 * (c * c / 2)
        return tup[: i - 1] + (new.monic(),) + tup[i:]
    if c is INFINITY:
        if not 1 <= i <= data.rank:
            raise BetheError("bad-direction", f"direction {i} outside 1..{data.rank}")
        return tup
    return descendant_family(data, tup, i).member(c)


def tuple_is_generic(data: InitialData, tup: Sequence[Poly]) -> bool:
    if data.kind == "A":
        return generic_failure(t_polynomials(data), tup) is None
    from .selfdual import fold_tuple, lift_data

    lifted = lift_data(data)
    return generic_failure(t_polynomials(lifted), fold_tuple(tup, data.h, data.kind)) is None


def generic_descendant(data: InitialData, tup: Sequence[Poly], i: int, require_degree_change: bool = False):
    """First descendant along the retry schedule that is generic.

    Falls back to the first schedule entry meeting the degree requirement when
    no generic choice appears.
    """
    tup = normalize_tuple(tup)
    fallback = None
    for c in RETRY_SCHEDULE:
        cand = immediate_descendant(data, tup, i, c)
        if require_degree_change and cand[i - 1].degree == tup[i - 1].degree:
            continue
        if fallback is None:
            fallback = cand
        if tuple_is_generic(data, cand):
            return cand, True
    if fallback is None:
        raise BetheError("retries-exhausted", f"no degree-changing descendant in direction {i}", direction=i)
    return fallback, False


def tuple_key(tup: Sequence[Poly]) -> str:
    return json.dumps([p.to_json() for p in tup])


def degrees_of(tup: Sequence[Poly]) -> tuple[int, ...]:
    return tuple(p.degree for p in tup)


@dataclass
class PopulationAtlas:
    """One representative tuple per degree vector of a population."""

    data: InitialData
    representatives: dict = field(default_factory=dict)
    weyl_labels: dict = field(default_factory=dict)

    def degree_vectors(self) -> set:
        return set(self.representatives)

    def to_json(self) -> dict:
        out = {
            "data": self.data.to_json(),
            "representatives": {
                ",".join(map(str, k)): [p.to_json() for p in v]
                for k, v in sorted(self.representatives.items())
            },
        }
        if self.weyl_labels:
            out["weylLabels"] = {",".join(map(str, k)): list(v) for k, v in sorted(self.weyl_labels.items())}
        return out


def default_max_degree(data: InitialData, seed: Sequence[Poly]) -> int:
    """Generous bound: twice the root coordinates of the shifted dominant weight."""
    from .repcount import RootSystem, dominant_conjugate

    top = max((p.degree for p in seed), default=0)
    rs = RootSystem(data.kind, data.rank)
    weight = weight_at_infinity(data, degrees_of(seed))
    dom = dominant_conjugate(rs, tuple(w + 1 for w in weight))
    span = max(abs(c) for c in rs.root_coordinates(dom))
    return top + 4 * int(span) + 8


def population_atlas(data: InitialData, seed: Sequence[Poly], max_degree: int | None = None) -> PopulationAtlas:
    """Breadth-first closure of the seed under degree-changing descendants."""
    seed = normalize_tuple(seed)
    verdict = verify_critical(data, seed)
    if not verdict:
        raise BetheError("not-critical", "seed does not represent a critical point", reason=verdict.reason)
    if max_degree is None:
        max_degree = default_max_degree(data, seed)
    atlas = PopulationAtlas(data)
    atlas.representatives[degrees_of(seed)] = seed
    frontier = [seed]
    while frontier:
        found: dict = {}
        for tup in frontier:
            for i in range(1, data.rank + 1):
                cand, _ = generic_descendant(data, tup, i, require_degree_change=True)
                degs = degrees_of(cand)
                if max(degs) > max_degree:
                    raise BetheError("max-degree", "maxDegree exceeded", degrees=list(degs), max_degree=max_degree)
                if degs in atlas.representatives:
                    continue
                best = found.get(degs)
                if best is None or tuple_key(cand) < tuple_key(best):
                    found[degs] = cand
        for degs, cand in found.items():
            atlas.representatives[degs] = cand
        frontier = [found[k] for k in sorted(found)]
    return atlas


# The C_1 module: three polynomials related by half-step Wronskian identities.

def c1_precondition(weight: Poly, y: Poly, h) -> bool:
    """(y, y(x+h/2)) is a generic, fertile pair for the frame (T, T(x+h/2))."""
    h = to_fraction(h)
    frame = Frame((weight.monic(), poly_shift(weight, h / 2).monic()), h)
    pair = (y.monic(), poly_shift(y, h / 2).monic())
    if generic_failure(frame, pair) is not None:
        return False
    return all(fertility_solve(pair[i - 1], fertility_rhs(frame, pair, i), h) is not None for i in (1, 2))


def c1_population(weight: Poly, y: Poly, h) -> tuple[Poly, Poly, Poly]:
    """Triple (u1, u2, u3) with u1 = y and

    W(u1,u2) = u1(x+h/2) T,  W(u1,u3) = u2(x+h/2) T,  W(u2,u3) = u3(x+h/2) T.
    """
    h = to_fraction(h)
    if not c1_precondition(weight, y, h):
        raise BetheError("c1-precondition", "the half-step pair is not a generic critical point")
    half = h / 2
    u1 = y
    u2 = fertility_solve(u1, poly_shift(u1, half) * weight, h)
    if u2 is None:
        raise BetheError("c1-precondition", "first C_1 relation has no polynomial solution")
    u3 = fertility_solve(u1, poly_shift(u2, half) * weight, h)
    if u3 is None:
        raise BetheError("not-c1-consistent", "second C_1 relation has no polynomial solution")
    excess = pairwise_w(u2, u3, h) - poly_shift(u3, half) * weight
    base = poly_shift(u1, half) * weight
    ratio = excess.exact_div(base)
    if ratio is None or ratio.degree > 0:
        raise BetheError("not-c1-consistent", "third C_1 relation cannot be met by rescaling")
    u3 = u3 + u1 * (ratio.coeff(0) / 2)
    triple = (u1, u2, u3)
    if not c1_relations_hold(weight, triple, h):
        raise BetheError("not-c1-consistent", "C_1 relations fail after normalization")
    return triple


def c1_relations_hold(weight: Poly, triple: Sequence[Poly], h) -> bool:
    h = to_fraction(h)
    u1, u2, u3 = triple
    half = h / 2
    return (
        pairwise_w(u1, u2, h) == poly_shift(u1, half) * weight
        and pairwise_w(u1, u3, h) == poly_shift(u2, half) * weight
        and pairwise_w(u2, u3, h) == poly_shift(u3, half) * weight
    )


def c1_member(triple: Sequence[Poly], v: Poly) -> bool:
    """v is a multiple of u1 + a*u2 + a^2*u3/2 for some a, or of u3."""
    coords = span_coordinates(v, list(triple))
    if coords is None or all(c == 0 for c in coords):
        return False
    a, b, c = coords
    return b * b == 2 * a * c


def c1_parameter_member(triple: Sequence[Poly], alpha) -> Poly:
    u1, u2, u3 = triple
    if alpha is INFINITY:
        return u3
    alpha = to_fraction(alpha)
    return u1 + u2 * alpha + u3 * (alpha * alpha / 2)
