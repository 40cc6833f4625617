"""Regenerate corpus.json: tuples with rational roots and the data they belong to."""

import json
import pathlib
from fractions import Fraction

from bethepop.bethe import InitialData, all_rational_roots
from bethepop.exactalg import ONE, X
from bethepop.reproduction import immediate_descendant

RANGE = range(-2, 3)


def sl3_family(h=Fraction(1)):
    for a in RANGE:
        yield (ONE, X + a)
        yield (X + a, ONE)
        for b in RANGE:
            first = X * X + X * (2 * a - h) + b
            yield (first, X + a)
            for c in RANGE:
                yield (first, X * X + X * c + (a * c - a * h - b))


def sl2_descendants():
    data = InitialData("A", 1, ("0",), ((2,),), (("0",),), "1")
    seen = []
    frontier = [(ONE,)]
    for _ in range(3):
        nxt = []
        for tup in frontier:
            for c in RANGE:
                cand = immediate_descendant(data, tup, 1, c)
                if cand not in seen:
                    seen.append(cand)
                    nxt.append(cand)
        frontier = nxt
    return data, seen


def perturbed(tup):
    """Shift the roots of the first nonconstant entry by 1/3."""
    out = list(tup)
    for i, y in enumerate(out):
        if y.degree >= 1:
            out[i] = y.shift(Fraction(1, 3))
            break
    return tuple(out)


def main():
    entries = []
    sl3 = InitialData.trivial(2, 1)
    for tup in sl3_family():
        if all_rational_roots(tup) is not None:
            entries.append({"data": sl3.to_json(), "tuple": [p.monic().to_json() for p in tup]})
            entries.append({"data": sl3.to_json(), "tuple": [p.monic().to_json() for p in perturbed(tup)]})
    data, tuples = sl2_descendants()
    for tup in tuples:
        if all_rational_roots(tup) is not None:
            entries.append({"data": data.to_json(), "tuple": [p.to_json() for p in tup]})
    unique = {json.dumps(e, sort_keys=True) for e in entries}
    text = json.dumps([json.loads(u) for u in sorted(unique)], indent=1, sort_keys=True)
    pathlib.Path(__file__).with_name("corpus.json").write_text(text + "\n")
    print(len(unique), "entries")


if __name__ == "__main__":
    main()
