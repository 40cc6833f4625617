"""Discrete Wronskians, divided Wronskians and the classical identities they obey."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import BetheError
from .exactalg import ONE, Poly, poly_shift, to_fraction


@dataclass(frozen=True)
class Frame:
    """Monic polynomials T_1..T_N attached to a space, with the step h."""

    polys: tuple[Poly, ...]
    h: Fraction

    def __post_init__(self):
        object.__setattr__(self, "h", to_fraction(self.h))
        object.__setattr__(self, "polys", tuple(self.polys))
        if self.h == 0:
            raise BetheError("zero-step", "step h must be nonzero")
        for t in self.polys:
            if t.is_zero() or t.lc != 1:
                raise BetheError("bad-frame", "frame entries must be monic and nonzero")

    @classmethod
    def trivial(cls, n: int, h) -> Frame:
        return cls(tuple(ONE for _ in range(n)), h)

    def __len__(self) -> int:
        return len(self.polys)

    def __getitem__(self, i: int) -> Poly:
        """1-based access, matching T_1..T_N."""
        return self.polys[i - 1]

    def to_json(self) -> dict:
        from .exactalg import format_fraction

        return {"h": format_fraction(self.h), "frame": [t.to_json() for t in self.polys]}


def _poly_det(matrix: list[list[Poly]]) -> Poly:
    """Bareiss fraction-free elimination over Q[x]."""
    n = len(matrix)
    if n == 0:
        return ONE
    m = [row[:] for row in matrix]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return Poly()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num // prev
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def wronskian(gs: Sequence[Poly], h) -> Poly:
    """det(g_i(x + (j-1)h)); the empty Wronskian is 1."""
    h = to_fraction(h)
    if h == 0:
        raise BetheError("zero-step", "step h must be nonzero")
    s = len(gs)
    if s == 0:
        return ONE
    if s == 1:
        return gs[0]
    matrix = [[poly_shift(g, j * h) for j in range(s)] for g in gs]
    return _poly_det(matrix)


def pairwise_w(u: Poly, v: Poly, h) -> Poly:
    """u(x) v(x+h) - u(x+h) v(x)."""
    h = to_fraction(h)
    if h == 0:
        raise BetheError("zero-step", "step h must be nonzero")
    return u * poly_shift(v, h) - poly_shift(u, h) * v


def frame_divisor(frame: Frame, i: int) -> Poly:
    """U_i = prod_{k<i} prod_{j=1}^{i-k} T_k(x + (j-1)h)."""
    if i > len(frame) + 1:
        raise BetheError("dimension", f"frame of length {len(frame)} cannot divide {i} functions")
    out = ONE
    for k in range(1, i):
        t = frame[k]
        for j in range(1, i - k + 1):
            out = out * poly_shift(t, (j - 1) * frame.h)
    return out


def divided_wronskian(gs: Sequence[Poly], frame: Frame) -> Poly | None:
    """Wronskian divided by U_i, or None if the division is not exact."""
    w = wronskian(gs, frame.h)
    return w.exact_div(frame_divisor(frame, len(gs)))


# The identity suite.

IDENTITIES = (
    "B1_one_in_wronskian",
    "B2_delta_expansion",
    "B3_common_factor",
    "B4_wr_id_2",
    "B5_wr_id_1",
)


def _permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    seen = list(seq)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign


def delta_expansion(gs: Sequence[Poly], h) -> Poly:
    """Alternating sum over j and bijections {1..s} -> {0..s} minus {j}."""
    h = to_fraction(h)
    s = len(gs)
    total = Poly()
    for j in range(s + 1):
        targets = [t for t in range(s + 1) if t != j]
        for omega in itertools.permutations(targets):
            term = ONE
            for g, shift in zip(gs, omega):
                term = term * poly_shift(g, shift * h)
            sign = _permutation_sign(omega) * (-1) ** j
            total = total + term * sign
    return total


def check_identity(identity: str, gs: Sequence[Poly], f: Poly | None = None, k: int = 0, h=1) -> bool:
    """Evaluate both sides of one Wronskian identity exactly.

    For the two omission identities ``gs`` holds s+1 functions and 0 <= k <= s.
    """
    h = to_fraction(h)
    gs = list(gs)
    if identity == "B1_one_in_wronskian":
        lhs = wronskian([ONE] + gs, h)
        rhs = wronskian([poly_shift(g, h) - g for g in gs], h)
        return lhs == rhs
    if identity == "B2_delta_expansion":
        lhs = wronskian([poly_shift(g, h) - g for g in gs], h)
        return lhs == delta_expansion(gs, h)
    if identity == "B3_common_factor":
        if f is None:
            raise BetheError("dimension", "common-factor identity needs f")
        lhs = wronskian([f * g for g in gs], h)
        rhs = wronskian(gs, h)
        for j in range(len(gs)):
            rhs = rhs * poly_shift(f, j * h)
        return lhs == rhs
    if identity in ("B4_wr_id_2", "B5_wr_id_1"):
        s = len(gs) - 1
        if s < 0 or not 0 <= k <= s:
            raise BetheError("dimension", f"need s+1 functions and 0 <= k <= s, got {len(gs)} and k={k}")
        full = wronskian(gs, h)
        head = gs[: s - k]
        if identity == "B4_wr_id_2":
            minors = [wronskian(head + [gs[i - 1]], h) for i in range(s - k + 1, s + 2)]
            lhs = wronskian(minors, h)
            rhs = full
            head_w = wronskian(head, h)
            for j in range(1, k + 1):
                rhs = rhs * poly_shift(head_w, j * h)
            return lhs == rhs
        omitted = [wronskian(gs[: i - 1] + gs[i:], h) for i in range(s + 1, s - k, -1)]
        lhs = wronskian(omitted, h)
        rhs = poly_shift(wronskian(head, h), k * h)
        for j in range(1, k + 1):
            rhs = rhs * poly_shift(full, (j - 1) * h)
        return lhs == rhs
    raise BetheError("unknown-identity", f"unknown identity {identity!r}", known=list(IDENTITIES))


SAMPLE_STEPS = (Fraction(1), Fraction(1, 2), Fraction(-2, 3))


def random_poly(rng: random.Random, max_degree: int, bound: int = 9) -> Poly:
    """Random polynomial with numerators and denominators in [-bound, bound]."""
    degree = rng.randint(0, max_degree)
    coeffs = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(degree + 1)]
    return Poly(coeffs)


def run_identity_suite(trials: int = 200, max_s: int = 4, max_degree: int = 4, seed: int = 0,
                       per_pair: int = 50, max_s_omission: int = 3) -> dict:
    """Randomized exact checks of the identity suite; failures are counted, not raised."""
    rng = random.Random(seed)
    report = {}

    def record(name, ok):
        entry = report.setdefault(name, {"trials": 0, "failures": 0})
        entry["trials"] += 1
        entry["failures"] += 0 if ok else 1

    for name in IDENTITIES[:3]:
        for _ in range(trials):
            s = rng.randint(0, max_s)
            h = rng.choice(SAMPLE_STEPS)
            gs = [random_poly(rng, max_degree) for _ in range(s)]
            f = random_poly(rng, max_degree) if name == "B3_common_factor" else None
            record(name, check_identity(name, gs, f=f, h=h))
    for name in IDENTITIES[3:]:
        for s in range(max_s_omission + 1):
            for k in range(s + 1):
                for _ in range(per_pair):
                    h = rng.choice(SAMPLE_STEPS)
                    gs = [random_poly(rng, max_degree) for _ in range(s + 1)]
                    record(name, check_identity(name, gs, k=k, h=h))
    return report
