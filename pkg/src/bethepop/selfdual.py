"""Dual spaces, selfduality, the canonical form, Witt bases and B/C folding."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bethe import InitialData, normalize_tuple
from .errors import BetheError
from .exactalg import (
    INFINITY,
    Poly,
    format_fraction,
    integer_root,
    poly_shift,
    span_coordinates,
    span_echelon,
    to_fraction,
)
from .fundamental import Flag, PolySpace, frame_of_space
from .wronskian import Frame, divided_wronskian


# Folding B and C tuples into type A.

def fold_bn(tup: Sequence[Poly], h) -> tuple[Poly, ...]:
    """(y_1..y_N, y_{N-1}(x+h), ..., y_1(x+(N-1)h))."""
    h = to_fraction(h)
    tup = tuple(tup)
    n = len(tup)
    return tup + tuple(poly_shift(tup[n - i - 1], i * h) for i in range(1, n))


def fold_cn(tup: Sequence[Poly], h) -> tuple[Poly, ...]:
    """(y_1..y_N, y_N(x+h/2), y_{N-1}(x+3h/2), ..., y_1(x+(N-1/2)h))."""
    h = to_fraction(h)
    tup = tuple(tup)
    n = len(tup)
    if tup and tup[-1].degree % 2:
        raise BetheError("odd-degree", "C_N requires even last degree")
    return tup + tuple(poly_shift(tup[n - i], (i - Fraction(1, 2)) * h) for i in range(1, n + 1))


def fold_tuple(tup: Sequence[Poly], h, kind: str) -> tuple[Poly, ...]:
    tup = normalize_tuple(tup)
    if kind == "B":
        return fold_bn(tup, h)
    if kind == "C":
        return fold_cn(tup, h)
    if kind == "A":
        return tup
    raise BetheError("bad-data", f"unknown kind {kind!r}")


def lift_data(data: InitialData) -> InitialData:
    """Type A data whose critical points contain the folded B/C ones.

    Labels are mirrored.  Shifts are measured in units of h, so the mirrored
    copy of direction i sits (N - i) steps further for B, and (N - i + 1/2)
    steps further for C.
    """
    n = data.rank
    if data.kind == "B":
        rank = 2 * n - 1
        lam = tuple(row + tuple(reversed(row[:-1])) for row in data.lam)
        b = tuple(
            row + tuple(row[i - 1] + (n - i) for i in range(n - 1, 0, -1))
            for row in data.b
        )
    elif data.kind == "C":
        rank = 2 * n
        lam = tuple(row + tuple(reversed(row)) for row in data.lam)
        b = tuple(
            row + tuple(row[i - 1] + (n - i) + Fraction(1, 2) for i in range(n, 0, -1))
            for row in data.b
        )
    else:
        raise BetheError("bad-data", "only B or C data can be lifted")
    return InitialData("A", rank, data.z, lam, b, data.h)


# Duality.

def dual_frame(frame: Frame) -> Frame:
    """T'_i(x) = T_{N+1-i}(x + (i-1)h)."""
    n = len(frame)
    return Frame(tuple(poly_shift(frame[n + 1 - i], (i - 1) * frame.h) for i in range(1, n + 1)), frame.h)


def _complement_wronskians(basis: Sequence[Poly], frame: Frame) -> list[Poly]:
    out = []
    for k in range(len(basis)):
        w = divided_wronskian(list(basis[:k]) + list(basis[k + 1:]), frame)
        if w is None:
            raise BetheError("incompatible-flag", "frame does not divide the Wronskians of the space")
        out.append(w)
    return out


def dual_space(space: PolySpace, frame: Frame) -> PolySpace:
    """Span of the divided Wronskians of all N-element subsets of the basis."""
    if space.dim < 2 or len(frame) != space.dim - 1:
        raise BetheError("dimension", "dual space needs dim N+1 >= 2 and a frame of length N")
    duals = _complement_wronskians(space.basis, frame)
    echelon = span_echelon(duals)
    if len(echelon) != space.dim:
        raise BetheError("dimension", "dual space has the wrong dimension", found=len(echelon))
    return PolySpace(echelon, space.h)


def selfdual_shift(space: PolySpace) -> Fraction:
    return -(space.dim - 2) * space.h / 2


def frame_is_symmetric(frame: Frame) -> bool:
    """T_i(x) = T_{N+1-i}(x + (i-1)h - (N-1)h/2)."""
    n, h = len(frame), frame.h
    return all(
        frame[i] == poly_shift(frame[n + 1 - i], (i - 1) * h - (n - 1) * h / 2) for i in range(1, n + 1)
    )


def is_selfdual(space: PolySpace, frame: Frame) -> bool:
    if not frame_is_symmetric(frame):
        return False
    return dual_space(space, frame).same_span(space.shifted(selfdual_shift(space)))


# The canonical form.

@dataclass(frozen=True)
class BilinearForm:
    space: PolySpace
    gram: tuple[tuple[Fraction, ...], ...]

    def __call__(self, first: Sequence, second: Sequence) -> Fraction:
        """Evaluate on coordinate vectors in the space's basis."""
        return sum(
            (first[j] * self.gram[j][k] * second[k] for j in range(len(first)) for k in range(len(second))),
            Fraction(0),
        )

    def is_symmetric(self) -> bool:
        m = len(self.gram)
        return all(self.gram[j][k] == self.gram[k][j] for j in range(m) for k in range(m))

    def is_skew(self) -> bool:
        m = len(self.gram)
        return all(self.gram[j][k] == -self.gram[k][j] for j in range(m) for k in range(m))

    def to_json(self) -> list:
        return [[format_fraction(v) for v in row] for row in self.gram]


def _gram(basis: Sequence[Poly], frame: Frame) -> tuple[tuple[Fraction, ...], ...]:
    m = len(basis)
    n = m - 1
    shift = -(n - 1) * frame.h / 2
    top = divided_wronskian(basis, frame)
    if top is None or top.is_zero():
        raise BetheError("incompatible-flag", "full divided Wronskian is not a nonzero polynomial")
    partners = [poly_shift(w, shift) for w in _complement_wronskians(basis, frame)]
    coords = []
    for u in basis:
        c = span_coordinates(u, partners)
        if c is None:
            raise BetheError("not-selfdual", "space is not selfdual for this frame")
        coords.append(c)
    if not top.is_constant():
        raise BetheError("not-selfdual", "full divided Wronskian is not constant")
    d = top.coeff(0)
    return tuple(tuple(coords[col][row] * (-1) ** row * d for col in range(m)) for row in range(m))


def canonical_form(space: PolySpace, frame: Frame) -> BilinearForm:
    """Gram matrix of (u, v) = W'(u, u_1..u_N) with v = W'(u_1..u_N)(x - (N-1)h/2)."""
    if not is_selfdual(space, frame):
        raise BetheError("not-selfdual", "space is not selfdual for this frame")
    form = BilinearForm(space, _gram(space.basis, frame))
    parity_ok = form.is_symmetric() if space.dim % 2 else form.is_skew()
    if not parity_ok:
        raise BetheError("parity", "canonical form has the wrong symmetry")
    return form


# Witt bases.

@dataclass(frozen=True)
class WittBasis:
    basis: tuple[Poly, ...]
    frame: Frame

    @property
    def h(self) -> Fraction:
        return self.frame.h

    def to_json(self) -> dict:
        return {"basis": [p.to_json() for p in self.basis], **self.frame.to_json()}


def check_witt(basis: Sequence[Poly], frame: Frame, h=None) -> bool:
    """u_i = W'(basis without u_{N+2-i})(x - (N-1)h/2) for every i."""
    basis = list(basis)
    h = frame.h if h is None else to_fraction(h)
    m = len(basis)
    n = m - 1
    if len(frame) != n:
        return False
    shift = -(n - 1) * h / 2
    for i in range(1, m + 1):
        skip = n + 2 - i
        rest = basis[: skip - 1] + basis[skip:]
        w = divided_wronskian(rest, frame)
        if w is None or poly_shift(w, shift) != basis[i - 1]:
            return False
    return True


def _coords_form(gram, first, second) -> Fraction:
    return sum(
        (first[j] * gram[j][k] * second[k] for j in range(len(first)) for k in range(len(second))),
        Fraction(0),
    )


def _rescale_to_witt(basis: list[Poly], frame: Frame) -> list[Poly]:
    """Diagonal rescaling turning an antidiagonal-Gram basis into a Witt basis."""
    m = len(basis)
    gram = _gram(basis, frame)
    for j in range(m):
        for k in range(m):
            if j + k != m - 1 and gram[j][k] != 0:
                raise BetheError("witt-normalization", "Witt normalization failed: Gram is not antidiagonal")
    top = divided_wronskian(basis, frame)
    d0 = top.coeff(0)
    half = m // 2
    r = [(-1) ** j * d0 / gram[j][m - 1 - j] for j in range(half)]
    prod_r = Fraction(1)
    for v in r:
        prod_r *= v
    if m % 2 == 0:
        if half == 1:
            p = Fraction(1)
            if r[0] != 1:
                raise BetheError("witt-normalization", "Witt normalization failed for a plane")
        else:
            p = integer_root(1 / prod_r, half - 1)
        centre = None
    else:
        rc = (-1) ** half * d0 / gram[half][half]
        p = integer_root(1 / (prod_r * prod_r * rc), 2 * half - 1)
        centre = None if p is None else p ** (1 - half) / prod_r
    if p is None:
        raise BetheError("witt-normalization", "Witt normalization failed: scale is not rational")
    scales = [Fraction(1)] * m
    for j in range(half):
        scales[m - 1 - j] = p * r[j]
    if m % 2:
        scales[half] = centre
    out = [u * s for u, s in zip(basis, scales)]
    if not check_witt(out, frame):
        raise BetheError("witt-normalization", "Witt normalization failed verification")
    return out


def witt_basis(space: PolySpace, frame: Frame, flag: Flag | None = None) -> WittBasis:
    """Witt basis adapted to an isotropic flag, by default the degree flag."""
    if not is_selfdual(space, frame):
        raise BetheError("not-selfdual", "space is not selfdual for this frame")
    if flag is None:
        echelon = list(space.echelon())
    elif flag.space.same_span(space):
        echelon = list(flag.basis)
    else:
        raise BetheError("incompatible-flag", "flag does not span the space")
    m = len(echelon)
    gram = _gram(echelon, frame)
    vecs = [[Fraction(int(j == k)) for k in range(m)] for j in range(m)]
    symmetric = m % 2 == 1

    def form(a, b):
        return _coords_form(gram, a, b)

    lo, hi = 0, m - 1
    while lo < hi:
        low, high = vecs[lo], vecs[hi]
        pairing = form(low, high)
        if pairing == 0 or form(low, low) != 0:
            raise BetheError("witt-normalization", "Witt normalization failed: degree flag is not isotropic")
        if symmetric:
            t = form(high, high) / (2 * pairing)
            high = [a - t * b for a, b in zip(high, low)]
            vecs[hi] = high
        for k in range(lo + 1, hi):
            t = form(vecs[k], high) / pairing
            vecs[k] = [a - t * b for a, b in zip(vecs[k], low)]
        lo, hi = lo + 1, hi - 1
    basis = []
    for v in vecs:
        p = Poly()
        for c, e in zip(v, echelon):
            p = p + e * c
        basis.append(p)
    return WittBasis(tuple(_rescale_to_witt(basis, frame)), frame)


def rescale_witt(witt: WittBasis, factor) -> WittBasis:
    """The Witt basis (t u_1, u_2, ..., u_{M-1}, u_M / t)."""
    factor = to_fraction(factor)
    basis = list(witt.basis)
    basis[0] = basis[0] * factor
    basis[-1] = basis[-1] * (1 / factor)
    if not check_witt(basis, witt.frame):
        raise BetheError("witt-normalization", "rescaled basis is not a Witt basis")
    return WittBasis(tuple(basis), witt.frame)


def is_isotropic_flag(flag: Flag, frame: Frame) -> bool:
    """F_i orthogonal complement equals F_{N+1-i}, checked two ways."""
    basis = list(flag.basis)
    m = len(basis)
    n = m - 1
    h = frame.h
    by_wronskians = True
    for i in range(1, n + 1):
        left = divided_wronskian(basis[:i], frame)
        right = divided_wronskian(basis[: n + 1 - i], frame)
        if left is None or right is None:
            raise BetheError("incompatible-flag", "flag incompatible with frame")
        right = poly_shift(right, (i - 1) * h - (n - 1) * h / 2)
        ratio = left.lc / right.lc if not right.is_zero() else None
        if ratio is None or left != right * ratio:
            by_wronskians = False
            break
    gram = _gram(basis, frame)
    by_form = all(gram[j][k] == 0 for j in range(m) for k in range(m) if j + k + 2 <= m)
    if by_wronskians != by_form:
        raise BetheError("inconsistent", "isotropy criteria disagree")
    return by_form


# One-parameter subgroups acting on Witt bases.

def _check_kind(witt: WittBasis, kind: str) -> int:
    m = len(witt.basis)
    if kind == "B":
        if m % 2:
            raise BetheError("dimension", "B actions need an even-dimensional space")
        return m // 2
    if kind == "C":
        if m % 2 == 0:
            raise BetheError("dimension", "C actions need an odd-dimensional space")
        return (m - 1) // 2
    raise BetheError("bad-data", "kind must be B or C")


def one_param_action(witt: WittBasis, i: int, c, kind: str) -> WittBasis:
    """Apply exp(c X_i) to the basis; c = INFINITY gives the swap limits."""
    n = _check_kind(witt, kind)
    if not 1 <= i <= n:
        raise BetheError("bad-direction", f"direction {i} outside 1..{n}")
    u = list(witt.basis)
    old = list(u)

    def at(k):  # 1-based access to the old basis
        return old[k - 1]

    m = len(u)
    if c is INFINITY:
        if kind == "C" and i == n:
            u[n - 1], u[n + 1] = at(n + 2), at(n)
        else:
            pairs = [(i, i + 1)] if i == n else [(i, i + 1), (m - i, m + 1 - i)]
            for a, b in pairs:
                u[a - 1], u[b - 1] = at(b), at(a)
        return WittBasis(tuple(_rescale_to_witt(u, witt.frame)), witt.frame)
    c = to_fraction(c)
    if kind == "C" and i == n:
        u[n - 1] = at(n) + at(n + 1) * c + at(n + 2) * (c * c / 2)
        u[n] = at(n + 1) + at(n + 2) * c
    else:
        u[i - 1] = at(i) + at(i + 1) * c
        if i < n:
            u[m - i - 1] = at(m - i) + at(m + 1 - i) * c
    if not check_witt(u, witt.frame):
        raise BetheError("witt-normalization", "action did not produce a Witt basis")
    return WittBasis(tuple(u), witt.frame)


def bc_generating_morphism(witt: WittBasis, frame: Frame | None, kind: str) -> tuple[Poly, ...]:
    """(y_1..y_N) with y_i the divided Wronskian of the first i basis vectors."""
    n = _check_kind(witt, kind)
    frame = witt.frame if frame is None else frame
    out = []
    for i in range(1, n + 1):
        y = divided_wronskian(witt.basis[:i], frame)
        if y is None or y.is_zero():
            raise BetheError("incompatible-flag", "flag incompatible with frame", index=i)
        out.append(y.monic())
    return tuple(out)


def lifted_space_frame(space: PolySpace, samples: int = 5, seed: int = 0) -> Frame:
    frame = frame_of_space(space, samples, seed)
    if frame is None:
        raise BetheError("frame-failed", "frame extraction failed; raise samples")
    return frame
