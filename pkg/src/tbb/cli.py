"""``tbb solve``: run the solver on a file of Laurent polynomials.

Exit codes: 0 success, 2 parse/usage error, 3 aborted, 4 certificate failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from .errors import InfiniteQuotient, NoInput, PolynomialSyntaxError
from .fields import parse_field
from .laurent import ChoiceFunction, indices
from .parsing import format_monomial, format_poly, parse_system
from .solver import ABORTED, BORDER_BASIS, UNIT_IDEAL, SolverConfig, multiplication_matrices, run
from .syzygy import all_generators

SECTIONS = ("basis", "quotient", "matrices", "syzygies", "trace")
EXIT_OK, EXIT_PARSE, EXIT_ABORTED, EXIT_CERT = 0, 2, 3, 4

SCHEMA_PATH = os.path.join(os.path.dirname(__file__), "result.schema.json")


def _exp(m):
    return list(m)


def _mono(m) -> str:
    return format_monomial(tuple(m)) or "1"


def _syz_term(t) -> str:
    mult = format_monomial(tuple(t["multiplier"]))
    return f"{t['coeff']}{'*' + mult if mult else ''}*Y_{t['slot']}[{_mono(t['base'])}]"


def emit_result(result, sections=SECTIONS, choice: str = "macaulay") -> dict:
    """JSON-ready document with the requested sections."""
    f = result.field
    doc = {
        "outcome": result.outcome,
        "reason": result.reason,
        "nvars": result.nvars,
        "field": f.name,
        "choice": choice,
        "degree": result.degree,
    }
    if result.outcome == BORDER_BASIS:
        doc["certificate"] = {"condition1_ok": result.certificate.condition1_ok,
                              "condition3_ok": result.certificate.condition3_ok}
    if "basis" in sections:
        if result.outcome == UNIT_IDEAL:
            doc["basis"] = [{"poly": "1", "head": None, "tail": []}]
        elif result.outcome == BORDER_BASIS:
            pi = result.projection
            doc["basis"] = [dict(rule, poly=format_poly(pi.rule_poly(tuple(rule["head"]))))
                            for rule in pi.to_json()]
        else:
            doc["basis"] = None
    if "quotient" in sections:
        if result.outcome == ABORTED:
            doc["quotient"] = None
        else:
            doc["quotient"] = [_exp(m) for m in result.basis]
    if "matrices" in sections:
        if result.outcome == ABORTED:
            raise InfiniteQuotient("no finite basis, so no multiplication matrices")
        if result.outcome == UNIT_IDEAL:
            doc["matrices"] = {}
        else:
            mats = multiplication_matrices(result)
            doc["matrices"] = {str(i): [[f.format(c) for c in row] for row in mats[i]]
                               for i in indices(result.nvars)}
    if "syzygies" in sections and result.outcome == BORDER_BASIS:
        gens = []
        for label, g in all_generators(result.projection):
            if label[0] == "phi":
                entry = {"kind": "phi", "indices": [label[1], label[2]], "base": _exp(label[3])}
            else:
                entry = {"kind": "rho", "indices": [label[1]], "base": _exp(label[2])}
            entry["terms"] = g.to_json()
            gens.append(entry)
        doc["syzygies"] = gens
    if "trace" in sections:
        doc["trace"] = result.trace
    return doc


def _render_text(doc: dict) -> str:
    lines = [f"outcome: {doc['outcome']}" + (f" ({doc['reason']})" if doc.get("reason") else ""),
             f"field: {doc['field']}  choice: {doc['choice']}  nvars: {doc['nvars']}"
             f"  degree: {doc['degree']}"]
    if doc.get("basis"):
        lines.append(f"basis ({len(doc['basis'])} polynomials):")
        lines += [f"  {r['poly']}" for r in doc["basis"]]
    if doc.get("quotient") is not None:
        q = doc["quotient"]
        lines.append(f"quotient ({len(q)} monomials):")
        lines.append("  " + ", ".join(_mono(m) for m in q))
    for i, mat in (doc.get("matrices") or {}).items():
        lines.append(f"X_{i}:")
        width = max((len(c) for row in mat for c in row), default=1)
        lines += ["  [" + " ".join(c.rjust(width) for c in row) + "]" for row in mat]
    if "syzygies" in doc:
        lines.append(f"syzygies ({len(doc['syzygies'])} generators):")
        for g in doc["syzygies"]:
            terms = " + ".join(_syz_term(t) for t in g["terms"])
            idx = ",".join(map(str, g["indices"]))
            lines.append(f"  {g['kind']}_{idx}({_mono(g['base'])}) = {terms}")
    if "trace" in doc:
        lines.append("trace:")
        lines += ["  " + json.dumps(t, sort_keys=True) for t in doc["trace"]]
    return "\n".join(lines) + "\n"


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tbb", description="Toric border bases of Laurent systems.")
    sub = ap.add_subparsers(dest="command", required=True)
    s = sub.add_parser("solve", help="compute a border basis")
    s.add_argument("file", help="input file, one polynomial per line ('-' for stdin)")
    s.add_argument("--field", default="q", help="q or fp:P")
    s.add_argument("--choice", default="macaulay", choices=["macaulay", "lexmax"])
    s.add_argument("--tiebreak", default="signed", choices=["signed", "positive"])
    s.add_argument("--max-degree", type=int, default=None)
    s.add_argument("--emit", default="basis,quotient",
                   help="comma-separated subset of " + ",".join(SECTIONS))
    s.add_argument("--format", default="text", choices=["text", "json"])
    s.add_argument("--dump-matrices", nargs="?", const="tbb-matrices", default=None,
                   metavar="DIR", help="write every loop matrix in MatrixMarket form")
    s.add_argument("--oracle", action="store_true", help=argparse.SUPPRESS)
    s.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    sections = [x.strip() for x in args.emit.split(",") if x.strip()]
    bad = [x for x in sections if x not in SECTIONS]
    if not sections or bad:
        print(f"tbb: --emit needs a non-empty subset of {','.join(SECTIONS)}", file=sys.stderr)
        return EXIT_PARSE
    try:
        field = parse_field(args.field)
        text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
        polys = parse_system(text, field)
        if not polys:
            raise NoInput("the input has no polynomials")
    except PolynomialSyntaxError as e:
        print(f"tbb: {args.file}: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (OSError, ValueError) as e:
        print(f"tbb: {e}", file=sys.stderr)
        return EXIT_PARSE

    config = SolverConfig(field=field, choice=args.choice, max_degree=args.max_degree,
                          dump_matrices=args.dump_matrices is not None)
    result = run(polys, ChoiceFunction(args.choice, args.tiebreak), config)
    if args.dump_matrices:
        os.makedirs(args.dump_matrices, exist_ok=True)
        for t, mm in enumerate(result.matrices, start=1):
            with open(os.path.join(args.dump_matrices, f"turn{t:03d}.mtx"), "w") as fh:
                fh.write(mm)
    try:
        doc = emit_result(result, sections, args.choice)
    except InfiniteQuotient as e:
        print(f"tbb: {e}", file=sys.stderr)
        doc = emit_result(result, [x for x in sections if x != "matrices"], args.choice)
    if args.oracle:
        from .oracle import oracle_quotient_dim
        dim = oracle_quotient_dim(polys, 4 * max(p.degree() for p in polys) + 8)
        doc["oracle_quotient_dim"] = dim if isinstance(dim, int) else None
    if args.format == "json":
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write(_render_text(doc))
    if result.outcome == ABORTED:
        if result.reason == "CertificateFailure":
            return EXIT_CERT
        return EXIT_ABORTED
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
