"""Command-line interface.

    lyubeznik table "x*y, y*z" [--ring x,y,z] [--char 2] [--json]
    lyubeznik localize "x*y, y*z" --at x,y
    lyubeznik verify --seed 1 --count 20 --chars 0,2

Exit codes: 0 success, 1 internal failure (including failed checks in
``verify``), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import InternalError, NotAFace, UserInputError
from .field_linalg import FieldSpec
from .invariants import (
    bound_B,
    format_grid,
    generalized_lyu,
    hochster_huneke_graph,
    local_complex,
    lyubeznik_table,
    lyubeznik_table_at_face,
    multiplicities,
)
from .monomial import MonomialIdeal, format_monomial, ideal_from_json, parse_ideal, polarize, radical, stanley_reisner
from .simplicial import bits
from .verify import CorpusConfig, all_passed, run_suite

MAX_CLI_VARIABLES = 20


def _field(text: str) -> FieldSpec:
    try:
        return FieldSpec(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _field_list(text: str) -> tuple[FieldSpec, ...]:
    return tuple(_field(t) for t in text.split(",") if t.strip())


def _names(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


class Input:
    """The parsed ideal plus the characteristic to work over."""

    def __init__(self, ideal: MonomialIdeal, field: FieldSpec):
        self.ideal = ideal
        self.field = field

    @property
    def names(self):
        return self.ideal.ring.names

    def envelope(self, result) -> dict:
        return {
            "version": __version__,
            "ring": list(self.names),
            "generators": [list(g) for g in self.ideal.generators],
            "char": self.field.characteristic,
            "result": result,
        }


def read_input(args) -> Input:
    if args.file is not None and args.ideal is not None:
        raise UserInputError("give the ideal inline or with --file, not both")
    if args.file is not None:
        try:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UserInputError(f"cannot read {args.file}: {exc.strerror}") from None
    elif args.ideal is not None:
        text = args.ideal
    else:
        raise UserInputError("no ideal given")
    field = args.char
    if text.lstrip().startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UserInputError(f"malformed JSON input: {exc}") from None
        ideal = ideal_from_json(obj)
        if field is None and "char" in obj:
            try:
                field = FieldSpec(int(obj["char"]))
            except (TypeError, ValueError) as exc:
                raise UserInputError(f"bad characteristic in input: {exc}") from None
    else:
        ring = _names(args.ring) if args.ring else None
        ideal = parse_ideal(text, ring)
    if ideal.n > MAX_CLI_VARIABLES:
        raise UserInputError(f"{ideal.n} variables; at most {MAX_CLI_VARIABLES} are supported")
    return Input(ideal, field or FieldSpec(0))


def _emit(args, inp: Input, result: dict, text: str):
    if args.json:
        print(json.dumps(inp.envelope(result), sort_keys=True))
    else:
        print(text)


def _table_payload(t) -> dict:
    return {"d": t.d, "table": t.to_lists(), "trivial": t.is_trivial()}


def _table_text(t, header: str) -> str:
    return f"{header} (d = {t.d}, {'trivial' if t.is_trivial() else 'nontrivial'})\n{t.pretty()}"


def _prime_face(inp: Input, delta, at: str):
    """Face of the complex attached to the prime generated by the listed variables."""
    names = inp.names
    prime = 0
    for name in _names(at):
        if name not in names:
            raise UserInputError(f"unknown variable {name!r} in --at")
        prime |= 1 << names.index(name)
    listed = [names[i] for i in bits(prime)]
    face = ((1 << len(names)) - 1) & ~prime
    if not delta.is_face(face):
        raise NotAFace(f"the prime ({', '.join(listed)}) does not contain the radical of the ideal")
    return face, listed


def cmd_table(args) -> int:
    inp = read_input(args)
    t = lyubeznik_table(stanley_reisner(radical(inp.ideal)), inp.field)
    _emit(args, inp, _table_payload(t), _table_text(t, f"Lyubeznik table over {inp.field}"))
    return 0


def cmd_localize(args) -> int:
    inp = read_input(args)
    delta = stanley_reisner(radical(inp.ideal))
    face, at = _prime_face(inp, delta, args.at)
    t = lyubeznik_table_at_face(delta, face, inp.field)
    payload = _table_payload(t)
    payload["at"] = at
    _emit(args, inp, payload, _table_text(t, f"Lyubeznik table at ({', '.join(at)}) over {inp.field}"))
    return 0


def cmd_polarize(args) -> int:
    inp = read_input(args)
    pol = polarize(inp.ideal)
    ring = pol.ideal.ring.names
    gens = ", ".join(format_monomial(g, ring) for g in pol.ideal.generators) or "0"
    payload = {
        "ring": list(ring),
        "generators": [list(g) for g in pol.ideal.generators],
        "h": pol.h,
    }
    _emit(args, inp, payload, f"{gens}\nh = {pol.h}")
    return 0


def cmd_gamma(args) -> int:
    inp = read_input(args)
    mt = multiplicities(stanley_reisner(radical(inp.ideal)), inp.field)
    names = inp.names
    m_list = [
        {"index": j, "support": [names[v] for v in bits(sigma)], "value": v}
        for j, row in enumerate(mt.m)
        for sigma, v in sorted(row.items())
    ]
    payload = {"gamma": [list(r) for r in mt.gamma], "multiplicities": m_list, "genlyu": list(mt.genlyu)}
    lines = [f"gamma table over {inp.field} (rows i, columns j)", format_grid(mt.gamma), "", "multiplicities m[j, support]:"]
    for rec in m_list:
        lines.append(f"  H^{rec['index']} {{{','.join(rec['support'])}}}: {rec['value']}")
    _emit(args, inp, payload, "\n".join(lines))
    return 0


def cmd_genlyu(args) -> int:
    inp = read_input(args)
    values = generalized_lyu(stanley_reisner(radical(inp.ideal)), inp.field)
    text = "\n".join(f"lambda0_{j} = {v}" for j, v in enumerate(values))
    _emit(args, inp, {"genlyu": values}, text)
    return 0


def cmd_hhgraph(args) -> int:
    inp = read_input(args)
    delta = stanley_reisner(radical(inp.ideal))
    names = inp.names
    if args.at is not None:
        face, _ = _prime_face(inp, delta, args.at)
        delta = local_complex(delta, face)
        names = [n for i, n in enumerate(names) if not face >> i & 1]
    g = hochster_huneke_graph(delta)
    payload = {
        "vertices": [[names[v] for v in bits(f)] for f in g.vertices],
        "edges": [list(e) for e in g.edges],
        "components": g.component_count,
    }
    text = g.to_dot(names) if args.dot else f"components: {g.component_count}"
    _emit(args, inp, payload, text)
    return 0


def cmd_bound(args) -> int:
    inp = read_input(args)
    B = bound_B(stanley_reisner(radical(inp.ideal)), inp.field)
    _emit(args, inp, {"bound": B}, str(B))
    return 0


def cmd_verify(args) -> int:
    config = CorpusConfig(
        seed=args.seed,
        complex_count=args.count,
        max_vertices=args.max_vertices,
        ideal_count=args.count if args.ideal_count is None else args.ideal_count,
        fields=args.chars,
        goldens=not args.no_goldens,
    )
    reports = run_suite(config)
    ok = all_passed(reports)
    if args.json:
        print(json.dumps({
            "version": __version__,
            "ring": [],
            "generators": [],
            "char": [f.characteristic for f in args.chars],
            "result": {"seed": args.seed, "passed": ok, "reports": [r.to_dict() for r in reports]},
        }, sort_keys=True))
    else:
        for r in reports:
            print(r.summary())
            for inst, expected, actual in r.failures[: args.show]:
                print(f"    {inst}: expected {expected}, got {actual}")
        print("all checks passed" if ok else "some checks FAILED")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lyubeznik", description="Local cohomology invariants of monomial ideals.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def ideal_command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("ideal", nargs="?", help='generators, e.g. "x*y^2, z" or "ring: x,y,z; x*y"; or a JSON envelope')
        p.add_argument("--ring", help="comma-separated variable names")
        p.add_argument("--file", help="read the ideal from this file")
        p.add_argument("--char", type=_field, default=None, help="0 or a prime (default 0)")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.set_defaults(func=func)
        return p

    ideal_command("table", cmd_table, "Lyubeznik table at the graded maximal ideal")
    loc = ideal_command("localize", cmd_localize, "Lyubeznik table at a monomial prime")
    loc.add_argument("--at", required=True, help="variables generating the prime, e.g. x,y")
    ideal_command("polarize", cmd_polarize, "standard polarization")
    ideal_command("gamma", cmd_gamma, "multiplicities and gamma table")
    ideal_command("genlyu", cmd_genlyu, "generalized Lyubeznik numbers")
    hh = ideal_command("hhgraph", cmd_hhgraph, "Hochster-Huneke graph")
    hh.add_argument("--dot", action="store_true", help="print the graph in DOT format")
    hh.add_argument("--at", default=None, help="localize at this monomial prime first")
    ideal_command("bound", cmd_bound, "bound on all Bass numbers of local cohomology")

    ver = sub.add_parser("verify", help="run the theorem checks on a seeded random corpus")
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--count", type=int, default=10, help="random complexes (and ideals) per field")
    ver.add_argument("--ideal-count", type=int, default=None)
    ver.add_argument("--max-vertices", type=int, default=6)
    ver.add_argument("--chars", type=_field_list, default=(FieldSpec(0), FieldSpec(2)))
    ver.add_argument("--no-goldens", action="store_true", help="skip the fixed instances")
    ver.add_argument("--show", type=int, default=3, help="failures listed per check")
    ver.add_argument("--json", action="store_true")
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UserInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
