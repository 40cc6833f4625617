"""Initial data, T polynomials, and exact tests for critical points.

Directions are numbered from 1 to N throughout, and tuples are plain Python
tuples of monic ``Poly``.  The implicit neighbours y_0 and y_{N+1} are 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import BetheError
from .exactalg import (
    ONE,
    Poly,
    coprime,
    format_fraction,
    poly_shift,
    rational_roots,
    to_fraction,
)
from .wronskian import Frame

KINDS = ("A", "B", "C")


@dataclass(frozen=True)
class InitialData:
    """Points z_s, Dynkin labels lam[s][i-1], shifts b[s][i-1] and the step h."""

    kind: str
    rank: int
    z: tuple[Fraction, ...] = ()
    lam: tuple[tuple[int, ...], ...] = ()
    b: tuple[tuple[Fraction, ...], ...] = ()
    h: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise BetheError("bad-data", f"kind must be one of {KINDS}, got {self.kind!r}")
        if self.rank < 1:
            raise BetheError("bad-data", "rank must be at least 1")
        z = tuple(to_fraction(v) for v in self.z)
        lam = tuple(tuple(int(v) for v in row) for row in self.lam)
        b = tuple(tuple(to_fraction(v) for v in row) for row in self.b) if self.b else tuple(
            tuple(Fraction(0) for _ in range(self.rank)) for _ in z
        )
        h = to_fraction(self.h)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "h", h)
        if h == 0:
            raise BetheError("zero-step", "step h must be nonzero")
        if len(set(z)) != len(z):
            raise BetheError("bad-data", "ramification points must be pairwise distinct")
        if len(lam) != len(z) or len(b) != len(z):
            raise BetheError("bad-data", "lambda and b need one row per point")
        for row in lam + b:
            if len(row) != self.rank:
                raise BetheError("bad-data", f"each lambda/b row must have {self.rank} entries")
        if any(v < 0 for row in lam for v in row):
            raise BetheError("bad-data", "Dynkin labels must be non-negative")

    @property
    def n(self) -> int:
        return len(self.z)

    @classmethod
    def trivial(cls, rank: int, h=1, kind: str = "A") -> InitialData:
        return cls(kind, rank, (), (), (), h)

    def with_sl_shift(self) -> InitialData:
        """Replace b by b_s^{(j)} = -(lam_s^{(1)} + ... + lam_s^{(j)})."""
        b = tuple(tuple(Fraction(-sum(row[: j + 1])) for j in range(self.rank)) for row in self.lam)
        return InitialData(self.kind, self.rank, self.z, self.lam, b, self.h)

    def has_sl_shift(self) -> bool:
        return self.b == self.with_sl_shift().b

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "rank": self.rank,
            "h": format_fraction(self.h),
            "z": [format_fraction(v) for v in self.z],
            "lambda": [list(row) for row in self.lam],
            "b": [[format_fraction(v) for v in row] for row in self.b],
        }

    @classmethod
    def from_json(cls, data: dict, sl_shift: bool = False) -> InitialData:
        lam = data.get("lambda", [])
        rank = data.get("rank")
        if rank is None:
            if not lam:
                raise BetheError("bad-data", "rank is required when there are no points")
            rank = len(lam[0])
        out = cls(
            data.get("kind", "A"),
            int(rank),
            tuple(data.get("z", [])),
            tuple(tuple(r) for r in lam),
            tuple(tuple(r) for r in data.get("b", [])),
            data.get("h", "1"),
        )
        return out.with_sl_shift() if sl_shift else out


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome with an optional reason code; truthy when ok."""

    ok: bool
    reason: str | None = None
    direction: int | None = None
    detail: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        out = {"critical": self.ok}
        if self.reason:
            out["reason"] = self.reason
        if self.direction is not None:
            out["direction"] = self.direction
        return out


def normalize_tuple(polys: Sequence[Poly]) -> tuple[Poly, ...]:
    out = []
    for p in polys:
        if p.is_zero():
            raise BetheError("zero-entry", "tuple entries must be nonzero")
        out.append(p.monic())
    return tuple(out)


def neighbor(tup: Sequence[Poly], i: int) -> Poly:
    """y_i with the conventions y_0 = y_{N+1} = 1 (1-based)."""
    if 1 <= i <= len(tup):
        return tup[i - 1]
    return ONE


def t_polynomials(data: InitialData) -> Frame:
    """T_i(x) = prod_s prod_{j=1}^{lam_s^{(i)}} (x - z_s + b_s^{(i)} h + j h)."""
    h = data.h
    polys = []
    for i in range(data.rank):
        t = ONE
        for z, lam, b in zip(data.z, data.lam, data.b):
            for j in range(1, lam[i] + 1):
                t = t * Poly([-z + b[i] * h + j * h, 1])
        polys.append(t)
    return Frame(tuple(polys), h)


def abc_coefficients(data: InitialData, tup: Sequence[Poly], i: int) -> tuple[Poly, Poly]:
    """The pair (A_i, C_i) of the second-order difference equation for y_i."""
    if not 1 <= i <= data.rank:
        raise BetheError("bad-direction", f"direction {i} outside 1..{data.rank}")
    h = data.h
    a = ONE
    c = ONE
    for z, lam, b in zip(data.z, data.lam, data.b):
        a = a * Poly([-z + b[i - 1] * h, 1])
        c = c * Poly([-z + b[i - 1] * h + lam[i - 1] * h, 1])
    prev, nxt = neighbor(tup, i - 1), neighbor(tup, i + 1)
    a = a * prev * poly_shift(nxt, -h)
    c = c * poly_shift(prev, h) * nxt
    return a, c


def generic_failure(frame: Frame, tup: Sequence[Poly]) -> int | None:
    """First direction where the genericity conditions break, or None."""
    h = frame.h
    for i in range(1, len(tup) + 1):
        y = tup[i - 1]
        if y.degree == 0:
            continue
        checks = (
            y.derivative(),
            poly_shift(y, h),
            poly_shift(neighbor(tup, i - 1), h),
            neighbor(tup, i + 1),
            frame[i],
        )
        if not all(coprime(y, other) for other in checks):
            return i
    return None


def is_generic(data: InitialData, tup: Sequence[Poly]) -> bool:
    if len(tup) != data.rank:
        raise BetheError("dimension", f"expected {data.rank} polynomials, got {len(tup)}")
    return generic_failure(t_polynomials(data), tup) is None


def verify_critical(data: InitialData, tup: Sequence[Poly]) -> Verdict:
    """Divisibility test: y_i | A_i y_i(x+h) + C_i y_i(x-h) for each i."""
    if data.kind != "A":
        from .selfdual import fold_tuple, lift_data

        return verify_critical(lift_data(data), fold_tuple(tup, data.h, data.kind))
    tup = normalize_tuple(tup)
    if len(tup) != data.rank:
        raise BetheError("dimension", f"expected {data.rank} polynomials, got {len(tup)}")
    bad = generic_failure(t_polynomials(data), tup)
    if bad is not None:
        return Verdict(False, "non-generic", bad)
    h = data.h
    for i in range(1, data.rank + 1):
        y = tup[i - 1]
        if y.degree == 0:
            continue
        a, c = abc_coefficients(data, tup, i)
        expr = a * poly_shift(y, h) + c * poly_shift(y, -h)
        if not y.divides(expr):
            return Verdict(False, "not-divisible", i)
    return Verdict(True)


def cartan_matrix(kind: str, rank: int) -> list[list[int]]:
    """cartan[i][j] = <alpha_i, alpha_j^vee> (row i lists the labels of alpha_i)."""
    gram = root_gram(kind, rank)
    return [[2 * gram[i][j] // gram[j][j] for j in range(rank)] for i in range(rank)]


def root_gram(kind: str, rank: int) -> list[list[int]]:
    """Inner products of simple roots; the long roots of B and C have length 4."""
    if kind not in KINDS:
        raise BetheError("bad-data", f"unknown root system {kind!r}")
    if rank == 1:
        return [[2]]
    if kind == "A":
        diag = [2] * rank
        off = [-1] * (rank - 1)
    elif kind == "B":
        diag = [4] * (rank - 1) + [2]
        off = [-2] * (rank - 1)
    else:
        diag = [2] * (rank - 1) + [4]
        off = [-1] * (rank - 2) + [-2]
    g = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        g[i][i] = diag[i]
        if i + 1 < rank:
            g[i][i + 1] = g[i + 1][i] = off[i]
    return g


def root_counts(data: InitialData, degrees: Sequence[int]) -> list[int]:
    """Numbers l_i of Bethe variables per simple root for the given degrees."""
    degrees = [int(d) for d in degrees]
    if len(degrees) != data.rank:
        raise BetheError("dimension", f"expected {data.rank} degrees")
    if any(d < 0 for d in degrees):
        raise BetheError("bad-degrees", "degrees must be non-negative")
    if data.kind == "C":
        if degrees[-1] % 2:
            raise BetheError("odd-degree", "C_N requires even last degree")
        degrees[-1] //= 2
    return degrees


def weight_at_infinity(data: InitialData, degrees: Sequence[int]) -> tuple[int, ...]:
    """Dynkin labels of sum_s Lambda_s - sum_i l_i alpha_i."""
    counts = root_counts(data, degrees)
    cartan = cartan_matrix(data.kind, data.rank)
    labels = []
    for j in range(data.rank):
        total = sum(row[j] for row in data.lam)
        total -= sum(counts[i] * cartan[i][j] for i in range(data.rank))
        labels.append(total)
    return tuple(labels)


@dataclass(frozen=True)
class Sl2Solution:
    roots: tuple[Fraction, ...]
    count: int

    def to_json(self) -> dict:
        return {"roots": [format_fraction(r) for r in self.roots], "count": self.count}


def solve_sl2_l1(data: InitialData) -> Sl2Solution:
    """All one-variable critical points: roots of A(x) - C(x)."""
    if data.rank != 1:
        raise BetheError("unsupported", "the single-variable solver needs rank 1")
    a, c = abc_coefficients(data, (ONE,), 1)
    diff = a - c
    if diff.is_zero():
        raise BetheError("degenerate", "A and C coincide identically")
    roots = tuple(sorted(set(rational_roots(diff))))
    return Sl2Solution(roots, diff.degree)


def bethe_products(data: InitialData, roots: Sequence[Sequence[Fraction]]) -> list[list[Fraction]] | None:
    """Left-hand sides of the Bethe equations evaluated at explicit roots.

    ``roots[i-1]`` lists the roots of y_i.  For kind A every value equals 1
    exactly at a solution.  Returns None when some denominator vanishes.
    Kinds B and C use their own displayed systems, whose last equation
    carries the doubled or half-step neighbour factors.
    """
    h = data.h
    n_dir = data.rank
    kind = data.kind
    out: list[list[Fraction]] = []
    try:
        for i in range(1, n_dir + 1):
            row = []
            own = list(roots[i - 1])
            prev = list(roots[i - 2]) if i >= 2 else []
            nxt = list(roots[i]) if i < n_dir else []
            for j, t in enumerate(own):
                val = Fraction(1)
                for z, lam, b in zip(data.z, data.lam, data.b):
                    val *= (t - z + b[i - 1] * h + lam[i - 1] * h) / (t - z + b[i - 1] * h)
                prev_factor = Fraction(1)
                for s in prev:
                    prev_factor *= (t - s + h) / (t - s)
                if kind == "B" and i == n_dir:
                    prev_factor *= prev_factor
                val *= prev_factor
                for k, s in enumerate(own):
                    if k != j:
                        val *= (t - s - h) / (t - s + h)
                if kind == "C" and i == n_dir:
                    for s in own:
                        val *= (t - s + h / 2) / (t - s - h / 2)
                elif not (kind == "B" and i == n_dir):
                    for s in nxt:
                        val *= (t - s) / (t - s - h)
                row.append(val)
            out.append(row)
    except ZeroDivisionError:
        return None
    return out


def satisfies_bethe(data: InitialData, roots: Sequence[Sequence[Fraction]]) -> bool | None:
    values = bethe_products(data, roots)
    if values is None:
        return None
    return all(v == 1 for row in values for v in row)


def all_rational_roots(tup: Sequence[Poly]) -> list[list[Fraction]] | None:
    """Root lists for every entry, or None if some entry has an irrational root."""
    out = []
    for y in tup:
        rs = rational_roots(y)
        if len(rs) != y.degree:
            return None
        out.append(rs)
    return out
