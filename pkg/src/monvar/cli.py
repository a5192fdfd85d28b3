"""Command-line front end.

Exit codes: 0 holds / found / yes, 1 fails / no, 2 unknown or not found
within bounds, 64 usage or parse error, 70 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import lattices as lat
from . import monoids as mon
from .deciders import FAILS, HOLDS, BasisVariety, decide, parse_variety
from .deduction import (
    deduction_search,
    format_basis,
    is_isoterm,
    load_basis,
    parse_basis,
    step_successors,
    verify_deduction,
)
from .suite import FAIL, run_suite, suite_exit_code
from .words import parse_identity, parse_word

EXIT_OK, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 64, 70


class InvariantViolation(RuntimeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def render_text(obj, indent: int = 0) -> str:
    """Plain-text rendering of a JSON-ready value, one field per line."""
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        lines = []
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return "\n".join(lines)
    return pad + _scalar(obj)


def _scalar(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (dict, list)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def _emit(args, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(render_text(payload))


def _verdict_code(status: str) -> int:
    return {HOLDS: EXIT_OK, FAILS: EXIT_NO}.get(status, EXIT_UNKNOWN)


def cmd_decide(args) -> int:
    v = parse_variety(args.variety)
    ident = parse_identity(args.identity)
    verdict = decide(v, ident)
    if isinstance(v, BasisVariety) and verdict.certificate is not None:
        if not verify_deduction(verdict.certificate, v.basis):
            raise InvariantViolation("certificate failed to verify")
    _emit(args, {"variety": str(v), "identity": str(ident), **verdict.to_dict()})
    return _verdict_code(verdict.status)


def cmd_deduce(args) -> int:
    basis = load_basis(args.basis)
    u, w = parse_word(args.source), parse_word(args.target)
    d = deduction_search(u, w, basis, args.max_steps, args.max_len)
    payload = {"basis": str(basis), "from": str(u), "to": str(w)}
    if d is None:
        payload["status"] = "NotWithinBounds"
        payload["bounds"] = {"max_steps": args.max_steps,
                             "max_len": args.max_len or len(u) + len(w) + 4}
        _emit(args, payload)
        return EXIT_UNKNOWN
    if not verify_deduction(d, basis):
        raise InvariantViolation("deduction failed to verify")
    payload["status"] = "Proved"
    payload["deduction"] = d.to_dict()
    _emit(args, payload)
    return EXIT_OK


def cmd_successors(args) -> int:
    basis = load_basis(args.basis)
    w = parse_word(args.word)
    succ = sorted(step_successors(w, basis))
    _emit(args, {"word": str(w), "basis": str(basis), "successors": [str(s) for s in succ]})
    return EXIT_OK


def cmd_isoterm(args) -> int:
    basis = load_basis(args.basis)
    w = parse_word(args.word)
    ok = is_isoterm(w, basis)
    _emit(args, {"word": str(w), "basis": str(basis), "isoterm": ok})
    return EXIT_OK if ok else EXIT_NO


def _monoid_payload(M: mon.FiniteMonoid) -> dict:
    return {"order": M.order, "name": M.name, "table": M.table.tolist()}


def cmd_monoid_check(args) -> int:
    M = mon.load_monoid(args.monoid)
    ident = parse_identity(args.identity)
    bad = mon.violation(M, ident)
    payload = {"monoid": _monoid_payload(M), "identity": str(ident), "satisfied": bad is None}
    if bad is not None:
        payload["violation"] = bad
    _emit(args, payload)
    return EXIT_OK if bad is None else EXIT_NO


def cmd_monoid_find(args) -> int:
    basis = load_basis(args.basis)
    ident = parse_identity(args.violates)
    M = mon.find_countermodel(basis, ident, args.max_order)
    payload = {"basis": str(basis), "violates": str(ident), "max_order": args.max_order}
    if M is None:
        payload["found"] = False
        _emit(args, payload)
        return EXIT_UNKNOWN
    if not all(mon.satisfies(M, b) for b in basis) or mon.satisfies(M, ident):
        raise InvariantViolation("countermodel failed to verify")
    payload["found"] = True
    payload["monoid"] = _monoid_payload(M)
    payload["violation"] = mon.violation(M, ident)
    if args.out:
        Path(args.out).write_text(mon.format_monoid(M), encoding="utf-8")
        payload["written"] = args.out
    _emit(args, payload)
    return EXIT_OK


def cmd_lattice_analyze(args) -> int:
    L = lat.load_lattice(args.lattice)
    reports = lat.analyze(L)
    for r in reports:
        for name, (y, z) in r.witnesses.items():
            if lat.PREDICATES[name](L, r.element, y, z):
                raise InvariantViolation(f"witness for {name} does not violate")
    _emit(args, {
        "size": L.size,
        "distributive": lat.is_distributive(L),
        "elements": [r.to_dict(L) for r in reports],
    })
    return EXIT_OK


def cmd_lattice_laws(args) -> int:
    census = lat.law_census(args.max_size)
    census["per_size"] = {str(k): v for k, v in census["per_size"].items()}
    _emit(args, census)
    return EXIT_OK if not census["counterexamples"] else EXIT_NO


def cmd_suite(args) -> int:
    only = set(args.only.split(",")) if args.only else None
    t0 = time.monotonic()
    results = run_suite(lattice_max_size=7 if args.lattice_size_7 else 6, only=only,
                        budget=args.budget)
    for r in results:
        if args.json:
            print(json.dumps(r.to_dict(), ensure_ascii=False))
        else:
            head = f"{r.id} {r.status}: {r.title}"
            if r.reason:
                head += f" ({r.reason})"
            print(head)
            if args.verbose and r.evidence:
                print(render_text(r.evidence, 1))
    if not args.json:
        failed = sum(r.status == FAIL for r in results)
        print(f"{len(results)} scenarios, {failed} failed, {time.monotonic() - t0:.1f}s")
    return suite_exit_code(results)


_FORMATTERS = {
    "word": lambda t: str(parse_word(t)),
    "identity": lambda t: str(parse_identity(t)),
    "basis": lambda t: format_basis(parse_basis(t)).rstrip("\n"),
    "monoid": lambda t: mon.format_monoid(mon.parse_monoid(t)).rstrip("\n"),
    "lattice": lambda t: lat.format_lattice(lat.parse_lattice(t)).rstrip("\n"),
}


def cmd_print(args) -> int:
    text = args.input
    if text == "-":
        text = sys.stdin.read()
    elif Path(text).is_file():
        text = Path(text).read_text(encoding="utf-8")
    print(_FORMATTERS[args.kind](text))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="monvar", description="Monoid variety workbench.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=fn)
        return sp

    sp = add("decide", cmd_decide, "decide an identity in a variety expression")
    sp.add_argument("variety")
    sp.add_argument("identity")

    sp = add("deduce", cmd_deduce, "search for a shortest deduction")
    sp.add_argument("--basis", required=True, help="@NAME or basis file")
    sp.add_argument("--from", dest="source", required=True)
    sp.add_argument("--to", dest="target", required=True)
    sp.add_argument("--max-steps", type=int, default=8)
    sp.add_argument("--max-len", type=int, default=None)

    sp = add("successors", cmd_successors, "one-step deduction successors")
    sp.add_argument("word")
    sp.add_argument("--basis", required=True)

    sp = add("isoterm", cmd_isoterm, "is the word an isoterm for the basis")
    sp.add_argument("word")
    sp.add_argument("--basis", required=True)

    sp = add("monoid-check", cmd_monoid_check, "check an identity in a finite monoid")
    sp.add_argument("monoid", help="monoid file or built-in, e.g. cyclic_group(2)")
    sp.add_argument("identity")

    sp = add("monoid-find", cmd_monoid_find, "search a model of a basis violating an identity")
    sp.add_argument("--basis", required=True)
    sp.add_argument("--violates", required=True)
    sp.add_argument("--max-order", type=int, default=5, choices=range(1, 6))
    sp.add_argument("--out", help="write the monoid file here")

    sp = add("lattice-analyze", cmd_lattice_analyze, "special-element report")
    sp.add_argument("lattice", help="lattice file or named lattice, e.g. grid(12,4)")

    sp = add("lattice-laws", cmd_lattice_laws, "check the implication laws on all small lattices")
    sp.add_argument("--max-size", type=int, default=6, choices=range(1, 8))

    sp = add("suite", cmd_suite, "run the reproduction scenarios")
    sp.add_argument("name", choices=["paper"])
    sp.add_argument("--only", help="comma-separated scenario ids")
    sp.add_argument("--lattice-size-7", action="store_true", help="include size-7 lattices in S9")
    sp.add_argument("--budget", type=float, default=None, help="seconds; overrides MONVAR_SUITE_BUDGET")
    sp.add_argument("-v", "--verbose", action="store_true")

    sp = add("print", cmd_print, "parse and print in canonical form")
    sp.add_argument("kind", choices=sorted(_FORMATTERS))
    sp.add_argument("input", help="text, a file path, or - for stdin")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:  # ParseError, MonoidError, LatticeError included
        print(f"monvar: {e}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as e:
        print(f"monvar: internal invariant violated: {e}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
