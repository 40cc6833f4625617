"""Fundamental spaces, frames, difference operators, flags and Schubert data."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bethe import InitialData, normalize_tuple, t_polynomials, verify_critical, weight_at_infinity
from .errors import BetheError
from .exactalg import (
    INFINITY,
    ONE,
    Poly,
    RationalFunction,
    format_fraction,
    nullspace,
    poly_gcd,
    poly_lcm,
    poly_shift,
    rank,
    span_echelon,
    span_intersection_dim,
    span_rank,
    to_fraction,
)
from .reproduction import generic_descendant
from .wronskian import Frame, divided_wronskian, frame_divisor, wronskian


@dataclass(frozen=True)
class PolySpace:
    """Span of linearly independent polynomials, with the step h."""

    basis: tuple[Poly, ...]
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "h", to_fraction(self.h))
        if span_rank(self.basis) != len(self.basis):
            raise BetheError("dependent-basis", "basis polynomials are linearly dependent")

    @classmethod
    def spanned_by(cls, polys: Sequence[Poly], h) -> PolySpace:
        """Space spanned by possibly dependent polynomials."""
        return cls(span_echelon(polys), h)

    @classmethod
    def all_polys(cls, d: int, h) -> PolySpace:
        """C_d[x], polynomials of degree at most d."""
        return cls(tuple(Poly.monomial(k) for k in range(d + 1)), h)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def echelon(self) -> tuple[Poly, ...]:
        return span_echelon(self.basis)

    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.echelon())

    def shifted(self, a) -> PolySpace:
        return PolySpace(tuple(poly_shift(p, a) for p in self.basis), self.h)

    def contains(self, p: Poly) -> bool:
        return span_rank(self.basis + (p,)) == self.dim

    def same_span(self, other: PolySpace) -> bool:
        return self.echelon() == other.echelon()

    def to_json(self) -> dict:
        return {"h": format_fraction(self.h), "basis": [p.to_json() for p in self.basis]}


@dataclass(frozen=True)
class Flag:
    """Full flag given by an adjusted basis: F_i is spanned by the first i vectors."""

    basis: tuple[Poly, ...]
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "h", to_fraction(self.h))
        if span_rank(self.basis) != len(self.basis):
            raise BetheError("dependent-basis", "flag basis is linearly dependent")

    @property
    def space(self) -> PolySpace:
        return PolySpace(self.basis, self.h)

    def part(self, i: int) -> tuple[Poly, ...]:
        return self.basis[:i]


def degree_flag(space: PolySpace) -> Flag:
    """The flag cut out by degree: F_i = elements of the i lowest degrees."""
    return Flag(space.echelon(), space.h)


# Fundamental basis and frames.

def _chained_vector(data: InitialData, tup: tuple[Poly, ...], k: int) -> Poly:
    for direction in range(k - 1, 0, -1):
        tup, generic = generic_descendant(data, tup, direction)
        if not generic:
            raise BetheError("retries-exhausted", "no generic descendant found", direction=direction)
    return tup[0]


def fundamental_basis(data: InitialData, tup: Sequence[Poly]) -> PolySpace:
    """Basis u_1..u_{N+1} with W(u_1..u_i) = y_i U_i exactly for every i."""
    if data.kind != "A":
        raise BetheError("unsupported", "fundamental bases are built for kind A data; fold first")
    tup = normalize_tuple(tup)
    verdict = verify_critical(data, tup)
    if not verdict:
        raise BetheError("not-critical", "tuple does not represent a critical point", reason=verdict.reason)
    frame = t_polynomials(data)
    targets = tup + (ONE,)
    basis: list[Poly] = []
    for k in range(1, data.rank + 2):
        u = _chained_vector(data, tup, k)
        w = divided_wronskian(basis + [u], frame)
        if w is None or w.is_zero():
            raise BetheError("construction-failed", f"Wronskian of the first {k} vectors is not divisible")
        scale = w.lc / targets[k - 1].lc
        u = u * (1 / scale)
        if divided_wronskian(basis + [u], frame) != targets[k - 1]:
            raise BetheError("construction-failed", f"Wronskian of the first {k} vectors is not y_{k}")
        basis.append(u)
    return PolySpace(tuple(basis), data.h)


def _random_combination(basis: Sequence[Poly], count: int, rng: random.Random) -> list[Poly]:
    out = []
    for _ in range(count):
        p = Poly()
        for q in basis:
            p = p + q * rng.randint(-9, 9)
        out.append(p)
    return out


def frame_of_space(space: PolySpace, samples: int = 5, seed: int = 0) -> Frame | None:
    """Monic T_1..T_N recovered from gcds of i-fold Wronskians.

    Returns None if one of the recursive divisions is not exact.
    """
    if space.dim < 2:
        raise BetheError("dimension", "frames need a space of dimension at least 2")
    base = poly_gcd(space.basis[0], space.basis[0])
    for p in space.basis[1:]:
        base = poly_gcd(base, p)
    if base.degree > 0:
        raise BetheError("base-point", "base point: all elements share a root", common=base.to_json())
    rng = random.Random(seed)
    h = space.h
    gcds = [ONE]  # gcds[i] = U_{i+1}
    for i in range(2, space.dim + 1):
        g = Poly()
        for subset in itertools.combinations(space.basis, i):
            g = _gcd_acc(g, wronskian(subset, h))
        for _ in range(samples):
            g = _gcd_acc(g, wronskian(_random_combination(space.basis, i, rng), h))
        if g.is_zero():
            raise BetheError("dependent-basis", "all Wronskians vanish")
        gcds.append(g)
    polys: list[Poly] = []
    for i in range(1, space.dim):
        # U_{i+1} = U_i(x) * prod_{k<=i} T_k(x + (i-k)h), so T_i is what remains.
        known = gcds[i - 1]
        for k in range(1, i):
            known = known * poly_shift(polys[k - 1], (i - k) * h)
        t = gcds[i].exact_div(known)
        if t is None:
            return None
        polys.append(t.monic())
    return Frame(tuple(polys), h)


def _gcd_acc(g: Poly, w: Poly) -> Poly:
    if w.is_zero():
        return g
    if g.is_zero():
        return w.monic()
    return poly_gcd(g, w)


# Difference operators.

@dataclass(frozen=True)
class DifferenceOperator:
    """(D - f_1)(D - f_2)...(D - f_k), D the shift by h."""

    factors: tuple[RationalFunction, ...]
    h: Fraction

    @property
    def order(self) -> int:
        return len(self.factors)

    def to_json(self) -> dict:
        return {"h": format_fraction(self.h), "factors": [f.to_json() for f in self.factors]}

    def pretty(self) -> str:
        return "".join(f"(D - {f})" for f in self.factors)


def fundamental_operator(data: InitialData, tup: Sequence[Poly]) -> DifferenceOperator:
    """Order N+1 operator whose kernel is the fundamental space.

    Kinds B and C are handled by folding the tuple into kind A.
    """
    if data.kind != "A":
        from .selfdual import fold_tuple, lift_data

        return fundamental_operator(lift_data(data), fold_tuple(tup, data.h, data.kind))
    tup = normalize_tuple(tup)
    h = data.h
    frame = t_polynomials(data)
    n = data.rank
    ys = (ONE,) + tup + (ONE,)  # ys[i] = y_i for i = 0..N+1
    factors = []
    for i in range(n + 1):
        upper, lower = ys[n + 1 - i], ys[n - i]
        f = RationalFunction(poly_shift(upper, h), upper) * RationalFunction(lower, poly_shift(lower, h))
        for s in range(1, n - i + 1):
            t = frame[s]
            f = f * RationalFunction(poly_shift(t, (n - i - s + 1) * h), poly_shift(t, (n - i - s) * h))
        factors.append(f)
    return DifferenceOperator(tuple(factors), h)


def operator_apply(op: DifferenceOperator, p) -> RationalFunction:
    g = p if isinstance(p, RationalFunction) else RationalFunction(p)
    for f in reversed(op.factors):
        g = g.shift(op.h) - f * g
    return g


def operator_normal_form(op: DifferenceOperator) -> tuple[RationalFunction, ...]:
    """Coefficients of D^k for k = order down to 0, leading coefficient 1."""
    coeffs = [RationalFunction(ONE)]  # coeffs[k] multiplies D^k
    for f in reversed(op.factors):
        new = [RationalFunction(Poly())] * (len(coeffs) + 1)
        for k, a in enumerate(coeffs):
            new[k + 1] = new[k + 1] + a.shift(op.h)
            new[k] = new[k] - f * a
        coeffs = new
    lead = coeffs[-1]
    return tuple(c / lead for c in reversed(coeffs))


def polynomial_kernel(op: DifferenceOperator, max_degree: int) -> tuple[Poly, ...]:
    """Basis of the polynomial solutions of degree at most max_degree."""
    images = [operator_apply(op, Poly.monomial(k)) for k in range(max_degree + 1)]
    common = ONE
    for img in images:
        common = poly_lcm(common, img.den)
    nums = [img.num * (common // img.den) for img in images]
    height = max([p.degree + 1 for p in nums] + [1])
    matrix = [[p.coeff(r) for p in nums] for r in range(height)]
    vecs = nullspace(matrix, len(images))
    return span_echelon([Poly(v) for v in vecs])


# Generating morphism and Bruhat positions.

def generating_morphism(flag: Flag, frame: Frame) -> tuple[Poly, ...]:
    """Tuple y_i = W(u_1..u_i) / U_i for i = 1..N."""
    out = []
    for i in range(1, len(flag.basis)):
        y = divided_wronskian(flag.basis[:i], frame)
        if y is None or y.is_zero():
            raise BetheError("incompatible-flag", "flag incompatible with frame", index=i)
        out.append(y.monic())
    return tuple(out)


def bruhat_position(flag: Flag, reference: Flag) -> tuple[int, ...]:
    """w_j = least i with F_j meeting F0_i outside F_{j-1}."""
    m = len(flag.basis)
    if len(reference.basis) != m:
        raise BetheError("dimension", "flags must live in spaces of the same dimension")
    word = []
    for j in range(1, m + 1):
        for i in range(1, m + 1):
            here = span_intersection_dim(flag.part(j), reference.part(i))
            before = span_intersection_dim(flag.part(j - 1), reference.part(i)) if j > 1 else 0
            if here > before:
                word.append(i)
                break
    return tuple(word)


def flag_of_tuple(data: InitialData, tup: Sequence[Poly]) -> Flag:
    """Flag whose generating morphism returns the given tuple."""
    return Flag(fundamental_basis(data, tup).basis, data.h)


# Schubert positions.

@dataclass(frozen=True)
class SchubertPosition:
    a: tuple[int, ...]
    point: object
    d: int

    @property
    def size(self) -> int:
        return sum(self.a)

    def to_json(self) -> dict:
        point = "inf" if self.point is INFINITY else format_fraction(self.point)
        return {"a": list(self.a), "point": point, "d": self.d}


def intersection_dims(space: PolySpace, point, d: int) -> list[int]:
    """dims[j] = dim(V meet F_j(point)) for j = 0..d+1."""
    basis = space.echelon()
    if point is INFINITY:
        degs = [p.degree for p in basis]
        return [sum(1 for g in degs if g < j) for j in range(d + 2)]
    point = to_fraction(point)
    h = space.h
    dims = []
    for j in range(d + 2):
        conditions = d + 1 - j
        rows = [[p(point + k * h) for p in basis] for k in range(conditions)]
        dims.append(space.dim - (rank(rows) if rows else 0))
    return dims


def schubert_position(space: PolySpace, point, d: int | None = None) -> SchubertPosition:
    degs = space.degrees()
    if d is None:
        d = max(degs)
    if max(degs) > d or space.dim > d + 1:
        raise BetheError("dimension", "space does not fit in polynomials of degree at most d")
    n = space.dim - 1
    dims = intersection_dims(space, point, d)
    a = []
    for i in range(1, space.dim + 1):
        j = next(j for j in range(d + 2) if dims[j] >= i)
        a.append(d - n + i - j)
    return SchubertPosition(tuple(a), point, d)


def expected_ramification(data: InitialData, degrees: Sequence[int], d: int):
    """Ramification predicted from the data and the degree vector.

    Needs the special shifts b_s^{(j)} = -(lam_s^{(1)} + ... + lam_s^{(j)}).
    """
    from .repcount import RootSystem, dominant_shifted

    if data.kind != "A":
        raise BetheError("unsupported", "ramification is computed for kind A data")
    if not data.has_sl_shift():
        raise BetheError("hypotheses", "hypotheses not met: shifts are not the special ones")
    for s, r in itertools.combinations(data.z, 2):
        if ((s - r) / data.h).denominator == 1:
            raise BetheError("hypotheses", "hypotheses not met: points differ by a multiple of h")
    n = data.rank
    rs = RootSystem("A", n)
    weight = weight_at_infinity(data, degrees)
    dominant = dominant_shifted(rs, weight)
    total = [sum(row[j] for row in data.lam) for j in range(n)]
    counts = rs.root_coordinates([t - w for t, w in zip(total, dominant)])
    if any(c.denominator != 1 for c in counts):
        raise BetheError("hypotheses", "weight at infinity is not in the root lattice of the data")
    l1 = int(counts[0])
    at_points = []
    for z, lam in zip(data.z, data.lam):
        a = tuple(sum(lam[: n + 1 - i]) for i in range(1, n + 2))
        at_points.append(SchubertPosition(a, z, d))
    a_inf = tuple(d - n - l1 - sum(dominant[: i - 1]) for i in range(1, n + 2))
    return at_points, SchubertPosition(a_inf, INFINITY, d)
