"""Exact rational arithmetic: polynomials, rational functions, linear algebra.

Everything here works over ``fractions.Fraction``; there is no floating point.
Polynomials are dense, with ascending coefficients and no trailing zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import BetheError

Scalar = Union[int, Fraction]


class _Infinity:
    """The point at infinity of the projective line of parameters."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __str__(self) -> str:
        return "inf"


INFINITY = _Infinity()


def parse_parameter(text):
    """A rational, or INFINITY for the strings "inf"/"oo"."""
    if text is INFINITY:
        return INFINITY
    if isinstance(text, str) and text.strip().lower() in ("inf", "oo", "infinity"):
        return INFINITY
    return to_fraction(text)


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and strings like "3/4" to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Immutable univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    # constructors

    @classmethod
    def const(cls, c) -> Poly:
        return cls([c])

    @classmethod
    def x(cls) -> Poly:
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> Poly:
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> Poly:
        p = cls([1])
        for r in roots:
            p = p * cls([-to_fraction(r), 1])
        return p

    # basic queries

    @property
    def degree(self) -> int:
        """Degree, with -1 standing in for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def monic(self) -> Poly:
        if not self.coeffs:
            return self
        lead = self.coeffs[-1]
        if lead == 1:
            return self
        return Poly(c / lead for c in self.coeffs)

    def __call__(self, t) -> Fraction:
        t = to_fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    # arithmetic

    def __add__(self, other) -> Poly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([a[i] + b[i] if i < len(b) else a[i] for i in range(len(a))])

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> Poly:
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> Poly:
        return _as_poly(other) - self

    def __mul__(self, other) -> Poly:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return Poly()
            return Poly(c * other for c in self.coeffs)
        other = _as_poly(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Poly:
        if k < 0:
            raise ValueError("negative power")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other) -> tuple[Poly, Poly]:
        other = _as_poly(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.lc
        if len(rem) - 1 < dq:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dq)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            factor = c / lead
            quot[k - dq] = factor
            for j, oc in enumerate(other.coeffs):
                rem[k - dq + j] -= factor * oc
        return Poly(quot), Poly(rem[:dq])

    def __floordiv__(self, other) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other) -> Poly:
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly | None:
        """Quotient if ``other`` divides ``self`` exactly, else None."""
        q, r = divmod(self, other)
        return q if r.is_zero() else None

    def divides(self, other: Poly) -> bool:
        """True when self divides other."""
        return (other % self).is_zero()

    def shift(self, a) -> Poly:
        return poly_shift(self, a)

    def derivative(self) -> Poly:
        return Poly(k * c for k, c in enumerate(self.coeffs) if k > 0)

    # comparisons and display

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = format_fraction(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{format_fraction(mag)}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def to_json(self) -> list[str]:
        return [format_fraction(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence) -> Poly:
        return cls(to_fraction(c) for c in data)


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Poly([value])
    return NotImplemented


X = Poly.x()
ONE = Poly([1])
ZERO = Poly()


def poly_shift(p: Poly, a) -> Poly:
    """Return q with q(x) = p(x + a), by Horner's scheme in x + a."""
    a = to_fraction(a)
    if a == 0 or p.is_constant():
        return p
    step = Poly([a, 1])
    out = Poly()
    for c in reversed(p.coeffs):
        out = out * step + c
    return out


def poly_gcd(p: Poly, q: Poly) -> Poly:
    """Monic greatest common divisor."""
    if p.is_zero() and q.is_zero():
        raise BetheError("undefined-gcd", "gcd of two zero polynomials is undefined")
    a, b = p.monic(), q.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def coprime(p: Poly, q: Poly) -> bool:
    return poly_gcd(p, q).degree == 0


def poly_lcm(p: Poly, q: Poly) -> Poly:
    return (p * q // poly_gcd(p, q)).monic()


def discrete_antiderivative(f: Poly, h) -> Poly:
    """The c with c(x+h) - c(x) = f(x) and c(0) = 0.

    Works from the top degree down: the forward difference of a degree k+1
    term has leading coefficient (k+1)*h in degree k.
    """
    h = to_fraction(h)
    if h == 0:
        raise BetheError("zero-step", "step h must be nonzero")
    c = Poly()
    rest = f
    while not rest.is_zero():
        k = rest.degree
        term = Poly.monomial(k + 1, rest.lc / ((k + 1) * h))
        c = c + term
        rest = rest - (poly_shift(term, h) - term)
    return c


def forward_difference(p: Poly, h) -> Poly:
    return poly_shift(p, h) - p


def rational_roots(p: Poly) -> list[Fraction]:
    """Rational roots of p, each listed with its multiplicity, sorted."""
    if p.is_zero():
        raise BetheError("degenerate", "the zero polynomial has every number as a root")
    roots: list[Fraction] = []
    while p.degree > 0 and p.coeffs[0] == 0:
        roots.append(Fraction(0))
        p = Poly(p.coeffs[1:])
    if p.degree <= 0:
        return sorted(roots)
    den = 1
    for c in p.coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in p.coeffs]
    candidates = {
        Fraction(sign * num, d)
        for num in _divisors(abs(ints[0]))
        for d in _divisors(abs(ints[-1]))
        for sign in (1, -1)
    }
    for r in sorted(candidates):
        factor = Poly([-r, 1])
        while p.degree > 0:
            q, rem = divmod(p, factor)
            if not rem.is_zero():
                break
            roots.append(r)
            p = q
    return sorted(roots)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _divisors(n: int) -> list[int]:
    out = []
    k = 1
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            if k * k != n:
                out.append(n // k)
        k += 1
    return out


class RationalFunction:
    """Quotient num/den of polynomials in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num)
        den = ONE if den is None else _as_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        g = poly_gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        lead = den.lc
        self.num = num * (1 / lead)
        self.den = den * (1 / lead)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def shift(self, a) -> RationalFunction:
        return RationalFunction(poly_shift(self.num, a), poly_shift(self.den, a))

    def __add__(self, other) -> RationalFunction:
        other = _as_rf(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        return self + (-_as_rf(other))

    def __rsub__(self, other) -> RationalFunction:
        return _as_rf(other) - self

    def __mul__(self, other) -> RationalFunction:
        other = _as_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = _as_rf(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __eq__(self, other) -> bool:
        if isinstance(other, (Poly, int, Fraction)):
            other = _as_rf(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        if self.is_polynomial():
            return f"RationalFunction({self.num})"
        return f"RationalFunction(({self.num}) / ({self.den}))"

    def __str__(self) -> str:
        if self.is_polynomial():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}


def _as_rf(value) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction(value)


# Linear algebra over Q.  Matrices are lists of rows of Fractions.

Matrix = list


def rref(matrix: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivoting picks the first column with a nonzero entry and, within it,
    the smallest row index.
    """
    rows = [[to_fraction(v) for v in row] for row in matrix]
    if not rows:
        return rows, []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix: Sequence[Sequence]) -> int:
    return len(rref(matrix)[1]) if matrix else 0


@dataclass(frozen=True)
class LinearSolution:
    """Affine solution set: particular + span(nullspace)."""

    particular: tuple[Fraction, ...]
    nullspace: tuple[tuple[Fraction, ...], ...]


def solve_linear(a: Sequence[Sequence], b: Sequence) -> LinearSolution | None:
    """Solve a x = b exactly; None when the system is inconsistent."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    if len(b) != nrows:
        raise ValueError("right-hand side length does not match the matrix")
    augmented = [list(row) + [b[i]] for i, row in enumerate(a)]
    if nrows == 0:
        return LinearSolution((), ())
    reduced, pivots = rref(augmented)
    if ncols in pivots:
        return None
    particular = [Fraction(0)] * ncols
    for r, col in enumerate(pivots):
        particular[col] = reduced[r][ncols]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for r, col in enumerate(pivots):
            vec[col] = -reduced[r][f]
        lead = next(v for v in vec if v != 0)
        basis.append(tuple(v / lead for v in vec))
    return LinearSolution(tuple(particular), tuple(basis))


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> list[tuple[Fraction, ...]]:
    if not a:
        n = ncols or 0
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    sol = solve_linear(a, [0] * len(a))
    return list(sol.nullspace)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def transpose(a: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*a)]


def determinant(a: Sequence[Sequence]) -> Fraction:
    rows = [[to_fraction(v) for v in row] for row in a]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        pivot = next((i for i in range(col, n) if rows[i][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = -det
        det *= rows[col][col]
        for i in range(col + 1, n):
            factor = rows[i][col] / rows[col][col]
            if factor:
                rows[i] = [x - factor * y for x, y in zip(rows[i], rows[col])]
    return det


# Polynomial spans.

def coefficient_matrix(polys: Sequence[Poly], width: int | None = None) -> list[list[Fraction]]:
    """Rows of ascending coefficients, padded to a common width."""
    if width is None:
        width = max((p.degree + 1 for p in polys), default=0)
    return [[p.coeff(k) for k in range(width)] for p in polys]


def span_echelon(polys: Sequence[Poly]) -> tuple[Poly, ...]:
    """Canonical basis of the span: monic, distinct degrees, fully reduced.

    Returned in ascending degree order.
    """
    width = max((p.degree + 1 for p in polys), default=0)
    if width == 0:
        return ()
    # columns ordered from high degree to low so pivots are leading terms
    rows = [[p.coeff(k) for k in range(width - 1, -1, -1)] for p in polys]
    reduced, pivots = rref(rows)
    basis = []
    for r in range(len(pivots)):
        basis.append(Poly(reversed(reduced[r])))
    return tuple(sorted(basis, key=lambda p: p.degree))


def span_rank(polys: Sequence[Poly]) -> int:
    if not polys:
        return 0
    return rank(coefficient_matrix(polys))


def same_span(first: Sequence[Poly], second: Sequence[Poly]) -> bool:
    return span_echelon(first) == span_echelon(second)


def in_span(p: Poly, polys: Sequence[Poly]) -> bool:
    return span_rank(list(polys) + [p]) == span_rank(polys)


def span_coordinates(p: Poly, basis: Sequence[Poly]) -> tuple[Fraction, ...] | None:
    """Coefficients expressing p in the given independent basis, or None."""
    width = max([q.degree + 1 for q in basis] + [p.degree + 1, 1])
    columns = coefficient_matrix(basis, width)
    a = transpose(columns) if columns else [[] for _ in range(width)]
    sol = solve_linear(a, [p.coeff(k) for k in range(width)])
    if sol is None:
        return None
    return sol.particular


def span_intersection_dim(first: Sequence[Poly], second: Sequence[Poly]) -> int:
    return span_rank(first) + span_rank(second) - span_rank(list(first) + list(second))


def integer_root(q: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a rational, or None if it is not rational."""
    if k == 1:
        return q
    if q < 0:
        if k % 2 == 0:
            return None
        r = integer_root(-q, k)
        return None if r is None else -r
    num = _int_root(q.numerator, k)
    den = _int_root(q.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num, den)


def _int_root(n: int, k: int) -> int | None:
    if n < 2:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        v = mid ** k
        if v == n:
            return mid
        if v < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None
