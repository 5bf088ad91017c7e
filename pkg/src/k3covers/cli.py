"""Command line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 invalid input.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Sequence

from . import covers as cv
from . import evensets as es
from . import k3lattices as k3
from . import lattice as lt
from . import verification
from .errors import K3CoversError
from .exactlin import IntMatrix

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class Output:
    """A report: structured data for json, rows for csv, lines for text."""

    def __init__(self, data: dict, rows: list[dict] | None = None, lines: list[str] | None = None, code: int = 0):
        self.data = data
        self.rows = rows if rows is not None else [_flatten(data)]
        self.lines = lines if lines is not None else _text_lines(data)
        self.code = code

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps(self.data, indent=2) + "\n"
        if fmt == "csv":
            buf = io.StringIO()
            keys: list[str] = []
            for row in self.rows:
                keys += [k for k in row if k not in keys]
            w = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
            w.writeheader()
            for row in self.rows:
                w.writerow({k: _cell(v) for k, v in row.items()})
            return buf.getvalue()
        return "\n".join(self.lines) + "\n"


def _cell(v) -> str:
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v)
    if v is None:
        return ""
    return str(v)


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        else:
            out[key] = v
    return out


def _text_lines(d: dict, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for k, v in d.items():
        if isinstance(v, dict):
            lines.append(f"{pad}{k}:")
            lines += _text_lines(v, indent + 1)
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{pad}{k}:")
            for item in v:
                lines.append(f"{pad}  - " + ", ".join(f"{a}={_cell(b)}" for a, b in item.items()))
        elif isinstance(v, list) and any(isinstance(x, str) and " " in x for x in v):
            lines.append(f"{pad}{k}:")
            lines += [f"{pad}  - {x}" for x in v]
        elif isinstance(v, list):
            lines.append(f"{pad}{k}: " + (", ".join(_cell(x) for x in v) if v else "(none)"))
        else:
            lines.append(f"{pad}{k}: {'-' if v is None else _cell(v)}")
    return lines


# -- lattice loading -------------------------------------------------------------

def _load_lattice(ident: str | None, path: str | None) -> lt.Lattice:
    if path:
        try:
            obj = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise K3CoversError(f"cannot read lattice file {path}: {exc}") from exc
        try:
            return lt.from_json(obj)
        except (KeyError, TypeError, ValueError) as exc:
            raise K3CoversError(f"malformed lattice JSON: {exc}") from exc
    return k3.build(ident)


def _lattice_info(L: lt.Lattice) -> dict:
    info: dict = {"name": L.name, "rank": L.rank, "det": L.det, "even": L.even,
                  "signature": list(L.signature[:2])}
    if L.degenerate:
        info["degenerate"] = True
        return info
    A = lt.discriminant_group(L)
    info["disc_group"] = list(A.elementary_divisors)
    info["qvalues"] = [lt.format_rational(q) for q in A.qvalues]
    info["length"] = A.length
    inv = lt.two_elementary_invariants(L)
    info["two_elementary"] = None if inv is None else {"r": inv.r, "a": inv.a, "delta": inv.delta}
    if L.signature == (1, L.rank - 1, 0):
        st = k3.embedding_status(L)
        info["embedding"] = {"verdict": st.verdict, "reason": st.reason}
    return info


# -- subcommands ------------------------------------------------------------------

def cmd_lattice_info(args) -> Output:
    return Output(_lattice_info(_load_lattice(args.id, args.input)))


def cmd_lattice_build(args) -> Output:
    L = _load_lattice(args.id, args.input)
    data = L.to_json()
    data["basis_gram"] = L.gram.to_json()
    rows = [{"row": i, "entries": list(r)} for i, r in enumerate(L.ambient.rows)]
    lines = [f"name: {L.name}", "labels: " + " ".join(L.ambient_labels), "gram:"]
    lines += ["  " + " ".join(f"{x:3d}" for x in r) for r in L.ambient.rows]
    lines += ["glue:"] + ["  (" + ", ".join(g) + ")" for g in data["glue"]] if data["glue"] else ["glue: (none)"]
    return Output(data, rows, lines)


def cmd_classify(args) -> Output:
    rep = cv.classify_branch(cv.BranchConfig.parse(args.genera))
    return Output(rep.to_json())


def cmd_ns_candidates(args) -> Output:
    cl = k3.ns_candidates(args.n)
    data = {"n": args.n, "candidates": cl.ids()}
    return Output(data, [{"n": args.n, "candidate": i} for i in cl.ids()])


def cmd_derive_candidates(args) -> Output:
    if not 6 <= args.n <= 17:
        raise K3CoversError("derive-candidates needs 6 <= n <= 17")
    trace = k3.derive_candidate_trace(args.n)
    derived = k3.derive_candidate_list(args.n)
    listed = k3.ns_candidates(args.n)
    records = [
        {"candidate": r.describe(), "length": r.length,
         "result": (f"L_{r.identified[0]}_{r.identified[1]}" if r.identified else "survives") if r.survives else "rejected",
         "reasons": "; ".join(r.reasons)}
        for r in trace.records
    ]
    data = {
        "n": args.n, "derived": derived.ids(), "listed": listed.ids(), "agree": derived == listed,
        "census": dict(trace.census.__dict__),
        "c_divisibility": [{"a": a, "note": note} for a, note in trace.c_divisors],
        "candidates": records,
    }
    return Output(data, records, code=EXIT_OK if derived == listed else EXIT_FAIL)


def cmd_even_sets(args) -> Output:
    if args.options is not None:
        opts = es.minimal_primitive_options(args.options)
        data = {"m": args.options, "options": [o.name for o in opts]}
        return Output(data, [{"m": args.options, "option": o.name} for o in opts])
    if args.alternative:
        n, r = args.alternative
        ds = [d.to_json() for d in cv.alternative_even_sets(n, r)]
        return Output({"n": n, "r": r, "even_sets": ds}, ds)
    if args.input:
        try:
            code = es.BinaryCode.from_json(json.loads(Path(args.input).read_text()))
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise K3CoversError(f"cannot read code file {args.input}: {exc}") from exc
        name = args.input
    else:
        name = args.code or "K"
        code = es.code_of(name)
    verdict = es.validate_even_code(code)
    words = es.codewords(code)
    data = {
        "code": name, **code.to_json(), "dimension": code.dimension, "valid": verdict.valid,
        "weights": sorted(es.weight(w) for w in words),
        "violations": [v.describe() for v in verdict.violations],
    }
    rows = [{"word": "{" + ",".join(map(str, es.positions_of(w))) + "}", "weight": es.weight(w)} for w in words]
    return Output(data, rows)


def cmd_existence(args) -> Output:
    return Output(cv.existence(args.n, args.h).to_json())


def cmd_verify_paper(args) -> Output:
    report = verification.run_checks()
    rows = [dict(c.__dict__, kind="check") for c in report.checks]
    rows += [{"kind": "warning", "name": w.name, "expected": "", "actual": w.detail, "passed": "",
              "citation": w.citation} for w in report.warnings]
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name}: expected {c.expected}, got {c.actual}" for c in report.checks]
    lines += [f"WARNING  {w.name}: {w.detail} [{w.citation}]" for w in report.warnings]
    s = report.summary()
    lines.append(f"{s['passed']}/{s['checks']} checks passed, {s['failed']} failed, {s['warnings']} warnings")
    return Output(report.to_json(), rows, lines, EXIT_OK if report.ok else EXIT_FAIL)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--out", metavar="PATH", help="write the report to PATH instead of standard output")

    p = argparse.ArgumentParser(prog="k3covers", description="Lattices and invariants of double covers of K3 surfaces.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("lattice-info", parents=[common], help="invariants of a named lattice")
    s.add_argument("id", nargs="?", help="L_<n>_<r>, M_2e1..M_2e4, K, U, U2, D4, R2d:<2d>")
    s.add_argument("--input", metavar="FILE", help="lattice JSON file instead of an id")
    s.set_defaults(func=cmd_lattice_info)

    s = sub.add_parser("lattice-build", parents=[common], help="emit a lattice as JSON")
    s.add_argument("id", nargs="?")
    s.add_argument("--input", metavar="FILE")
    s.set_defaults(func=cmd_lattice_build)

    s = sub.add_parser("classify", parents=[common], help="classify a branch configuration")
    s.add_argument("--genera", required=True, help="comma separated genera, e.g. 2,0,0,0,0,0")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("ns-candidates", parents=[common], help="listed lattices for n")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_ns_candidates)

    s = sub.add_parser("derive-candidates", parents=[common], help="re-derive the lattices for n by enumeration")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_derive_candidates)

    s = sub.add_parser("even-sets", parents=[common], help="even-set codes and options")
    s.add_argument("code", nargs="?", help="M_2e1..M_2e4 or K (default K)")
    s.add_argument("--input", metavar="FILE", help="code JSON file")
    s.add_argument("--options", type=int, metavar="M", help="minimal primitive lattices for M curves")
    s.add_argument("--alternative", type=int, nargs=2, metavar=("N", "R"), help="alternative even sets on L_N^(R)")
    s.set_defaults(func=cmd_even_sets)

    s = sub.add_parser("existence", parents=[common], help="existence for n in {1,16,17}")
    s.add_argument("n", type=int)
    s.add_argument("h", type=int)
    s.set_defaults(func=cmd_existence)

    s = sub.add_parser("verify-paper", parents=[common], help="run all reference checks")
    s.set_defaults(func=cmd_verify_paper)
    return p


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command in ("lattice-info", "lattice-build") and not (args.id or args.input):
        parser.print_usage(sys.stderr)
        print(f"{args.command}: give an id or --input FILE", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = args.func(args)
    except (K3CoversError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = out.render(args.format)
    if args.out:
        Path(args.out).write_text(text)
    else:
        stdout.write(text)
    return out.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
