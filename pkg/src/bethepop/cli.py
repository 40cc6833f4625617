"""Command-line front end.  Every command reads JSON files and writes JSON.

Exit codes: 0 on success, 1 on a domain error (a JSON object with error, code
and detail is printed), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import bethe, fundamental, repcount, reproduction, selfdual
from .wronskian import run_identity_suite
from .errors import BetheError
from .exactalg import INFINITY, Poly, parse_parameter, to_fraction


@dataclass(frozen=True)
class RunConfig:
    command: str
    args: argparse.Namespace
    out: str | None
    seed: int
    samples: int
    max_degree: int | None
    d: int | None


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise BetheError("io", f"cannot read {path}", reason=str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise BetheError("bad-json", f"{path} is not valid JSON", reason=str(exc)) from exc


def _load_data(args) -> bethe.InitialData:
    if not args.data:
        raise BetheError("usage", "--data is required")
    raw = _load_json(args.data)
    try:
        return bethe.InitialData.from_json(raw, sl_shift=getattr(args, "sl_shift", False))
    except (TypeError, ValueError, KeyError) as exc:
        if isinstance(exc, BetheError):
            raise
        raise BetheError("bad-data", "malformed initial data", reason=str(exc)) from exc


def _load_tuple(path: str | None) -> tuple[Poly, ...]:
    if not path:
        raise BetheError("usage", "a tuple file is required")
    raw = _load_json(path)
    entries = raw["tuple"] if isinstance(raw, dict) else raw
    return tuple(Poly.from_json(p) for p in entries)


def _poly_arg(text: str) -> Poly:
    try:
        return Poly.from_json(json.loads(text))
    except (json.JSONDecodeError, TypeError, ValueError) as exc:
        raise BetheError("bad-poly", "polynomials are JSON arrays of rational strings", text=text) from exc


def _weight_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise BetheError("bad-weight", "weights are comma-separated integers", text=text) from exc


def _tuple_json(tup) -> list:
    return [p.to_json() for p in tup]


# Commands.  Each returns a JSON-ready object.

def cmd_verify(cfg: RunConfig):
    data = _load_data(cfg.args)
    return bethe.verify_critical(data, _load_tuple(cfg.args.tuple)).to_json()


def cmd_reproduce(cfg: RunConfig):
    data = _load_data(cfg.args)
    tup = _load_tuple(cfg.args.tuple)
    c = parse_parameter(cfg.args.param)
    new = reproduction.immediate_descendant(data, tup, cfg.args.direction, c)
    return {"tuple": _tuple_json(new), "critical": bool(bethe.verify_critical(data, new))}


def cmd_population(cfg: RunConfig):
    data = _load_data(cfg.args)
    atlas = reproduction.population_atlas(data, _load_tuple(cfg.args.seed_tuple), cfg.max_degree)
    orbit = repcount.label_atlas(atlas)
    out = atlas.to_json()
    out["degreeVectors"] = [list(k) for k in sorted(atlas.degree_vectors())]
    out["orbit"] = orbit
    return out


def cmd_space(cfg: RunConfig):
    data = _load_data(cfg.args)
    space = fundamental.fundamental_basis(data, _load_tuple(cfg.args.tuple))
    frame = fundamental.frame_of_space(space, cfg.samples, cfg.seed)
    expected = bethe.t_polynomials(data)
    return {
        "space": space.to_json(),
        "frame": None if frame is None else frame.to_json(),
        "frameMatches": frame == expected,
    }


def cmd_operator(cfg: RunConfig):
    data = _load_data(cfg.args)
    op = fundamental.fundamental_operator(data, _load_tuple(cfg.args.tuple))
    return {
        "operator": op.to_json(),
        "pretty": op.pretty(),
        "normalForm": [c.to_json() for c in fundamental.operator_normal_form(op)],
    }


def cmd_schubert(cfg: RunConfig):
    data = _load_data(cfg.args)
    tup = _load_tuple(cfg.args.tuple)
    space = fundamental.fundamental_basis(data, tup)
    d = cfg.d if cfg.d is not None else max(space.degrees())
    measured = [fundamental.schubert_position(space, z, d).to_json() for z in data.z]
    measured.append(fundamental.schubert_position(space, INFINITY, d).to_json())
    out = {"measured": measured}
    try:
        points, infinity = fundamental.expected_ramification(data, [p.degree for p in tup], d)
        out["expected"] = [p.to_json() for p in points] + [infinity.to_json()]
        out["agrees"] = out["expected"] == measured
    except BetheError as exc:
        out["expected"] = None
        out["skipped"] = exc.code
    return out


def _space_from_args(cfg: RunConfig):
    args = cfg.args
    if args.space:
        raw = _load_json(args.space)
        h = to_fraction(raw.get("h", "1"))
        space = fundamental.PolySpace.spanned_by([Poly.from_json(p) for p in raw["basis"]], h)
        frame = fundamental.frame_of_space(space, cfg.samples, cfg.seed)
        if frame is None:
            raise BetheError("frame-failed", "frame extraction failed; raise --samples")
        return space, frame
    data = _load_data(args)
    tup = _load_tuple(args.tuple)
    if data.kind != "A":
        tup = selfdual.fold_tuple(tup, data.h, data.kind)
        data = selfdual.lift_data(data)
    return fundamental.fundamental_basis(data, tup), bethe.t_polynomials(data)


def cmd_selfdual(cfg: RunConfig):
    space, frame = _space_from_args(cfg)
    if not selfdual.is_selfdual(space, frame):
        return {"selfdual": False}
    form = selfdual.canonical_form(space, frame)
    witt = selfdual.witt_basis(space, frame)
    return {
        "selfdual": True,
        "basis": [p.to_json() for p in space.basis],
        "gram": form.to_json(),
        "witt": [p.to_json() for p in witt.basis],
    }


def cmd_fold(cfg: RunConfig):
    data = _load_data(cfg.args)
    tup = bethe.normalize_tuple(_load_tuple(cfg.args.tuple))
    folded = selfdual.fold_tuple(tup, data.h, data.kind)
    lifted = selfdual.lift_data(data)
    return {
        "folded": _tuple_json(folded),
        "lifted": lifted.to_json(),
        "critical": bethe.verify_critical(lifted, folded).to_json(),
    }


def cmd_c1(cfg: RunConfig):
    args = cfg.args
    triple = reproduction.c1_population(_poly_arg(args.weight), _poly_arg(args.y), to_fraction(args.h))
    return {"triple": _tuple_json(triple)}


def cmd_multiplicity(cfg: RunConfig):
    args = cfg.args
    rs = repcount.RootSystem(args.kind, args.rank)
    first, second, target = (_weight_arg(w) for w in (args.first, args.second, args.target))
    for w in (first, second, target):
        if len(w) != args.rank:
            raise BetheError("dimension", f"weights need {args.rank} labels")
    return {"multiplicity": repcount.tensor_multiplicity(rs, first, second, target)}


def cmd_count_check(cfg: RunConfig):
    return repcount.count_check(_load_data(cfg.args), cfg.args.l)


def cmd_identities(cfg: RunConfig):
    args = cfg.args
    report = run_identity_suite(args.trials, args.max_s, args.max_deg, cfg.seed, args.per_pair)
    return {"identities": report, "allPass": all(r["failures"] == 0 for r in report.values())}


COMMANDS = {
    "verify": (cmd_verify, "check whether a tuple represents a critical point"),
    "reproduce": (cmd_reproduce, "immediate descendant in one direction"),
    "population": (cmd_population, "atlas of degree vectors of a population"),
    "space": (cmd_space, "fundamental basis and its frame"),
    "operator": (cmd_operator, "fundamental difference operator"),
    "schubert": (cmd_schubert, "measured and expected ramification"),
    "selfdual": (cmd_selfdual, "selfduality, canonical form and a Witt basis"),
    "fold": (cmd_fold, "fold a B or C tuple into type A"),
    "c1": (cmd_c1, "the three-dimensional C_1 module"),
    "multiplicity": (cmd_multiplicity, "tensor product multiplicity"),
    "count-check": (cmd_count_check, "solution count against a multiplicity"),
    "identities": (cmd_identities, "randomized Wronskian identity suite"),
}


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get("BETHE_SEED", "0"))
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write JSON here instead of stdout")
    common.add_argument("--seed", type=_nonneg, default=default_seed,
                        help="random seed (default 0, or BETHE_SEED)")
    common.add_argument("--samples", type=_nonneg, default=5, help="random combinations for frame extraction")
    common.add_argument("--max-degree", type=_nonneg, default=None, help="degree cap for population search")
    common.add_argument("--d", type=_nonneg, default=None, help="ambient degree bound for Schubert positions")
    common.add_argument("--sl-shift", action="store_true",
                        help="replace the shifts in --data by the special ones")

    parser = argparse.ArgumentParser(prog="bethepop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    parsers = {name: sub.add_parser(name, parents=[common], help=text) for name, (_, text) in COMMANDS.items()}

    for name in ("verify", "reproduce", "population", "space", "operator", "schubert", "selfdual", "fold",
                 "count-check"):
        parsers[name].add_argument("--data", help="initial data JSON file")
    for name in ("verify", "reproduce", "space", "operator", "schubert", "selfdual", "fold"):
        parsers[name].add_argument("--tuple", help="tuple JSON file")
    parsers["population"].add_argument("--seed-tuple", required=True, help="tuple JSON file of the seed")
    parsers["reproduce"].add_argument("--direction", type=int, required=True, help="direction, 1-based")
    parsers["reproduce"].add_argument("--param", default="0", help="pencil parameter: rational or inf")
    parsers["selfdual"].add_argument("--space", help='JSON file {"basis": [...], "h": "1"}')
    parsers["c1"].add_argument("--weight", default='["1"]', help="weight polynomial as a JSON array")
    parsers["c1"].add_argument("--y", required=True, help="polynomial y as a JSON array")
    parsers["c1"].add_argument("--h", default="1", help="step")
    m = parsers["multiplicity"]
    m.add_argument("--kind", default="A", choices=("A", "B", "C"))
    m.add_argument("--rank", type=int, required=True)
    m.add_argument("--first", required=True, help="Dynkin labels, comma separated")
    m.add_argument("--second", required=True)
    m.add_argument("--target", required=True)
    parsers["count-check"].add_argument("--l", type=int, default=1, help="number of Bethe variables")
    i = parsers["identities"]
    i.add_argument("--trials", type=_nonneg, default=200)
    i.add_argument("--max-s", type=_nonneg, default=4)
    i.add_argument("--max-deg", type=_nonneg, default=4)
    i.add_argument("--per-pair", type=_nonneg, default=50, help="trials per (s, k) for the omission identities")
    return parser


def run(cfg: RunConfig) -> int:
    handler = COMMANDS[cfg.command][0]
    try:
        result = handler(cfg)
    except BetheError as exc:
        print(json.dumps(exc.to_json(), sort_keys=True), file=sys.stdout)
        return 1
    text = json.dumps(result, sort_keys=True, indent=2) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = RunConfig(args.command, args, args.out, args.seed, args.samples, args.max_degree, args.d)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
