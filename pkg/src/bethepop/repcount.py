"""Root systems, shifted Weyl action and multiplicities of weights and tensor products.

Weights are tuples of Dynkin labels.  Weyl group elements are words in the
simple reflections (1-based), applied right to left.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bethe import InitialData, cartan_matrix, root_gram, solve_sl2_l1
from .errors import BetheError
from .exactalg import solve_linear

Weight = tuple


@dataclass(frozen=True)
class RootSystem:
    kind: str
    rank: int
    cartan: tuple = field(init=False)
    gram: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "cartan", tuple(map(tuple, cartan_matrix(self.kind, self.rank))))
        object.__setattr__(self, "gram", tuple(map(tuple, root_gram(self.kind, self.rank))))

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    def simple_root(self, i: int) -> Weight:
        """Dynkin labels of alpha_i (1-based)."""
        return self.cartan[i - 1]

    def reflect(self, i: int, weight: Sequence) -> Weight:
        root = self.cartan[i - 1]
        k = weight[i - 1]
        return tuple(w - k * r for w, r in zip(weight, root))

    def root_coordinates(self, weight: Sequence) -> tuple[Fraction, ...]:
        """Coefficients c with weight = sum c_i alpha_i."""
        # labels_j = sum_i c_i cartan[i][j]
        matrix = [[Fraction(self.cartan[i][j]) for i in range(self.rank)] for j in range(self.rank)]
        sol = solve_linear(matrix, [Fraction(w) for w in weight])
        return sol.particular

    def inner(self, first: Sequence, second: Sequence) -> Fraction:
        """Invariant form with (alpha_i, alpha_i) as in the root data."""
        coords = self.root_coordinates(second)
        return sum(
            (Fraction(first[j]) * coords[j] * Fraction(self.gram[j][j], 2) for j in range(self.rank)),
            Fraction(0),
        )

    def positive_roots(self) -> list[tuple[int, ...]]:
        """Positive roots in simple-root coordinates."""
        found = set()
        queue = deque()
        for i in range(self.rank):
            e = tuple(int(k == i) for k in range(self.rank))
            found.add(e)
            queue.append(e)
        while queue:
            beta = queue.popleft()
            labels = self._labels(beta)
            for i in range(self.rank):
                k = labels[i]
                new = tuple(c - (k if j == i else 0) for j, c in enumerate(beta))
                if all(c >= 0 for c in new) and any(c > 0 for c in new) and new not in found:
                    found.add(new)
                    queue.append(new)
        return sorted(found)

    def _labels(self, coords: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(coords[i] * self.cartan[i][j] for i in range(self.rank)) for j in range(self.rank))

    def root_labels(self, coords: Sequence[int]) -> Weight:
        return self._labels(coords)


def apply_word(rs: RootSystem, word: Sequence[int], weight: Sequence) -> Weight:
    out = tuple(weight)
    for i in reversed(word):
        out = rs.reflect(i, out)
    return out


def shifted_action(rs: RootSystem, word: Sequence[int], weight: Sequence) -> Weight:
    """w . lambda = w(lambda + rho) - rho."""
    if len(weight) != rs.rank:
        raise BetheError("dimension", f"weight needs {rs.rank} labels")
    shifted = tuple(w + 1 for w in weight)
    return tuple(v - 1 for v in apply_word(rs, word, shifted))


def shifted_orbit(rs: RootSystem, weight: Sequence) -> dict:
    """Map from each weight of the shifted orbit to a shortest word reaching it."""
    start = tuple(weight)
    orbit = {start: ()}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for i in range(1, rs.rank + 1):
            nxt = shifted_action(rs, (i,), current)
            if nxt not in orbit:
                orbit[nxt] = (i,) + orbit[current]
                queue.append(nxt)
    return orbit


def weyl_group(rs: RootSystem) -> list[tuple[int, ...]]:
    """One reduced word per group element, found through the orbit of rho."""
    return list(_orbit_words(rs, rs.rho).values())


def _orbit_words(rs: RootSystem, weight: Weight) -> dict:
    orbit = {tuple(weight): ()}
    queue = deque([tuple(weight)])
    while queue:
        current = queue.popleft()
        for i in range(1, rs.rank + 1):
            nxt = rs.reflect(i, current)
            if nxt not in orbit:
                orbit[nxt] = (i,) + orbit[current]
                queue.append(nxt)
    return orbit


def dominant_conjugate(rs: RootSystem, weight: Sequence) -> Weight:
    current = tuple(weight)
    while True:
        i = next((k for k, v in enumerate(current) if v < 0), None)
        if i is None:
            return current
        current = rs.reflect(i + 1, current)


def dominant_shifted(rs: RootSystem, weight: Sequence) -> Weight:
    """The dominant member of the shifted orbit; raises if the orbit meets a wall."""
    shifted = tuple(w + 1 for w in weight)
    dom = dominant_conjugate(rs, shifted)
    if any(v == 0 for v in dom):
        raise BetheError("singular-weight", "weight lies on a shifted reflection wall", weight=list(weight))
    return tuple(v - 1 for v in dom)


def is_dominant(weight: Sequence) -> bool:
    return all(v >= 0 for v in weight)


class _Freudenthal:
    """Weight multiplicities of one irreducible module, memoized per instance."""

    def __init__(self, rs: RootSystem, highest: Weight):
        if not is_dominant(highest):
            raise BetheError("not-dominant", "highest weight must be dominant", weight=list(highest))
        self.rs = rs
        self.highest = tuple(highest)
        self.roots = [rs.root_labels(c) for c in rs.positive_roots()]
        plus_rho = tuple(v + 1 for v in self.highest)
        self.norm_top = rs.inner(plus_rho, plus_rho)
        self.cache: dict = {self.highest: 1}

    def below_top(self, weight: Weight) -> bool:
        diff = [a - b for a, b in zip(self.highest, weight)]
        coords = self.rs.root_coordinates(diff)
        return all(c.denominator == 1 and c >= 0 for c in coords)

    def __call__(self, weight: Sequence) -> int:
        dom = dominant_conjugate(self.rs, weight)
        if dom in self.cache:
            return self.cache[dom]
        if not self.below_top(dom):
            self.cache[dom] = 0
            return 0
        rs = self.rs
        total = Fraction(0)
        for root in self.roots:
            k = 1
            while True:
                up = tuple(m + k * r for m, r in zip(dom, root))
                if not self.below_top(dominant_conjugate(rs, up)):
                    break
                mult = self(up)
                if mult:
                    total += mult * rs.inner(up, root)
                k += 1
        plus_rho = tuple(v + 1 for v in dom)
        denom = self.norm_top - rs.inner(plus_rho, plus_rho)
        value = 2 * total / denom
        if value.denominator != 1:
            raise ArithmeticError("Freudenthal recursion produced a non-integer")
        self.cache[dom] = int(value)
        return int(value)

    def weights(self) -> dict:
        """All weights with positive multiplicity."""
        out = {}
        seen = {self.highest}
        queue = deque([self.highest])
        while queue:
            w = queue.popleft()
            m = self(w)
            if m == 0:
                continue
            out[w] = m
            for root in self.roots:
                nxt = tuple(a - b for a, b in zip(w, root))
                if nxt not in seen and self.below_top(dominant_conjugate(self.rs, nxt)):
                    seen.add(nxt)
                    queue.append(nxt)
        return out


def weight_multiplicity(rs: RootSystem, highest: Sequence, weight: Sequence) -> int:
    return _Freudenthal(rs, tuple(highest))(tuple(weight))


def weight_system(rs: RootSystem, highest: Sequence) -> dict:
    return _Freudenthal(rs, tuple(highest)).weights()


def tensor_multiplicity(rs: RootSystem, first: Sequence, second: Sequence, target: Sequence) -> int:
    """Multiplicity of L_target in L_first (x) L_second by the alternating Weyl sum."""
    for w in (first, second, target):
        if not is_dominant(w):
            raise BetheError("not-dominant", "weights must be dominant", weight=list(w))
    mult = _Freudenthal(rs, tuple(first))
    shifted_target = tuple(v + 1 for v in target)
    shifted_second = tuple(v + 1 for v in second)
    total = 0
    for word in weyl_group(rs):
        image = apply_word(rs, word, shifted_target)
        total += (-1) ** len(word) * mult(tuple(a - b for a, b in zip(image, shifted_second)))
    return total


def tensor_decomposition(rs: RootSystem, first: Sequence, second: Sequence) -> dict:
    """Irreducible constituents of L_first (x) L_second with multiplicities."""
    out = {}
    for w, m in weight_system(rs, first).items():
        candidate = tuple(a + b for a, b in zip(w, second))
        if not is_dominant(candidate) or candidate in out:
            continue
        value = tensor_multiplicity(rs, first, second, candidate)
        if value:
            out[candidate] = value
    return out


def tensor_power_multiplicity(rs: RootSystem, factors: Sequence[Sequence], target: Sequence) -> int:
    """Multiplicity of L_target in the tensor product of all factors."""
    if not is_dominant(target):
        return 0
    current = {(0,) * rs.rank: 1}
    for factor in factors:
        nxt: dict = {}
        for weight, m in current.items():
            for piece, k in tensor_decomposition(rs, weight, factor).items():
                nxt[piece] = nxt.get(piece, 0) + m * k
        current = nxt
    return current.get(tuple(target), 0)


def count_check(data: InitialData, l: int = 1) -> dict:
    """Compare the number of one-variable solutions with a tensor multiplicity.

    Points differing by multiples of h are reported in ``genericPoints`` rather
    than rejected.
    """
    if l != 1:
        raise BetheError("unsupported", "only l=1 supported exactly")
    if data.rank != 1 or data.kind != "A":
        raise BetheError("unsupported", "counting is implemented for sl_2 data")
    if not data.has_sl_shift():
        raise BetheError("hypotheses", "shifts must be the special ones")
    generic = all(((s - r) / data.h).denominator != 1 for s, r in itertools.combinations(data.z, 2))
    solver = solve_sl2_l1(data).count
    rs = RootSystem("A", 1)
    infinity = (sum(row[0] for row in data.lam) - 2 * l,)
    mult = tensor_power_multiplicity(rs, [row for row in data.lam], infinity)
    return {"solverCount": solver, "multiplicity": mult, "agrees": solver == mult, "genericPoints": generic}


def gl_to_sl(partition: Sequence[int]) -> Weight:
    """Consecutive differences of a partition give sl Dynkin labels."""
    return tuple(partition[i] - partition[i + 1] for i in range(len(partition) - 1))


def label_atlas(atlas) -> dict:
    """Attach to each degree vector a Weyl word w with weight w . (dominant weight).

    Returns how much of the shifted orbit the atlas reaches.
    """
    from .bethe import weight_at_infinity

    data = atlas.data
    rs = RootSystem(data.kind, data.rank)
    weights = {deg: weight_at_infinity(data, deg) for deg in atlas.representatives}
    some = next(iter(weights.values()))
    try:
        anchor = dominant_shifted(rs, some)
    except BetheError:
        anchor = some
    orbit = shifted_orbit(rs, anchor)
    reached = set()
    for deg, w in weights.items():
        if w not in orbit:
            raise BetheError("orbit-mismatch", "atlas weight outside the shifted orbit", degrees=list(deg))
        reached.add(w)
        atlas.weyl_labels[deg] = orbit[w]
    missing = sorted(w for w in orbit if w not in reached)
    return {"anchor": list(anchor), "orbit_size": len(orbit), "reached": len(reached), "unreached": [list(w) for w in missing]}
