"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 the triviality
condition fails (``check-condition`` only).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import constructors
from .explorer import BudgetExceeded, classify_facets, enumerate_characteristic_functions
from .io import (
    DocumentError,
    aut_report_to_dict,
    builtin_names,
    document_from_pair,
    dumps_report,
    facet_report_to_dict,
    load_builtin,
    parse_document,
    references_from_dict,
    serialize_document,
    summary_to_dict,
)
from .lattice import LatticeError
from .pair import CharPair, PairError, Singular, gl_equivalent
from .polytope import PolytopeError, f_vector
from .symmetry import check_condition, combinatorial_isomorphism, pair_automorphisms

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_NONTRIVIAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt_vec(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    p = Path(path)
    if p.exists():
        return p.read_text(encoding="utf-8")
    if path in builtin_names():
        return load_builtin(path)
    raise InputError(f"{path}: no such file (built-in documents: {', '.join(builtin_names())})")


def _load_doc(path: str):
    try:
        return parse_document(_read(path))
    except DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_pair(path: str) -> CharPair:
    doc = _load_doc(path)
    if not doc.is_pair:
        raise InputError(f"{path}: document has no lambda vectors")
    try:
        return doc.to_pair()
    except (PolytopeError, PairError, LatticeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(args, text: str) -> None:
    out = getattr(args, "output", None)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- subcommands ---------------------------------------------------------


def cmd_validate(args) -> int:
    doc = _load_doc(args.file)
    kind = "pair" if doc.is_pair else "polytope"
    try:
        p = doc.to_polytope()
    except PolytopeError as exc:
        return _finish_validate(args, {"valid": False, "kind": kind,
                                       "error": f"{type(exc).__name__}: {exc}"})
    result = {"valid": True, "kind": kind, "dim": p.dim, "facet_count": p.facet_count,
              "f_vector": list(f_vector(p))}
    if doc.is_pair:
        try:
            CharPair(p, doc.lambdas)
        except Singular as exc:
            result["valid"] = False
            result["offending_vertices"] = [
                {"vertex": k, "facets": list(p.vertices[k]), "det": d} for k, d in exc.offending
            ]
        except PairError as exc:
            result.update(valid=False, error=f"{type(exc).__name__}: {exc}")
    return _finish_validate(args, result)


def _finish_validate(args, result: dict) -> int:
    if args.json:
        _emit(args, dumps_report(result))
    elif result["valid"]:
        _emit(args, f"valid {result['kind']}: dim {result['dim']}, {result['facet_count']} facets, "
                    f"f-vector {fmt_vec(result['f_vector'])}\n")
    else:
        lines = [f"invalid {result['kind']}"]
        if "error" in result:
            lines.append(result["error"])
        for e in result.get("offending_vertices", []):
            lines.append(f"  vertex {e['vertex']} on facets {fmt_vec(e['facets'])}: det {e['det']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if result["valid"] else EXIT_INVALID


def _aut_text(cp: CharPair, report) -> str:
    lines = [
        f"|aut(P)| = {len(report.poset_auts)}",
        f"|aut(P, lambda)| = {report.order}",
        f"image order = {len(report.image)}",
        f"kernel order = {len(report.kernel)}",
        f"condition trivial: {'yes' if report.condition_trivial else 'no'}",
    ]
    moving = [x for x in report.pair_auts if not x.f.is_identity()]
    if moving:
        w = moving[0]
        lines.append(f"witness: facets {fmt_vec(w.f.facet_perm)} with g = "
                     + " ".join(fmt_vec(r) for r in w.g))
    return "\n".join(lines) + "\n"


def cmd_aut(args) -> int:
    cp = _load_pair(args.file)
    report = pair_automorphisms(cp)
    _emit(args, dumps_report(aut_report_to_dict(report)) if args.json else _aut_text(cp, report))
    return EXIT_OK


def cmd_check(args) -> int:
    cp = _load_pair(args.file)
    trivial, report = check_condition(cp)
    _emit(args, dumps_report(aut_report_to_dict(report)) if args.json else _aut_text(cp, report))
    return EXIT_OK if trivial else EXIT_NONTRIVIAL


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_construct(args) -> int:
    kind = args.kind
    try:
        if kind == "simplex":
            cp = constructors.simplex_pair(args.n)
        elif kind == "product":
            cp = constructors.product_pair(_load_pair(args.first), _load_pair(args.second))
        elif kind == "vertex-cut":
            cp = constructors.vertex_cut(_load_pair(args.file), args.vertex)
        elif kind == "bott":
            cp = constructors.bott_pair(_int_list(args.k))
        else:
            cp = constructors.example_m2(args.n, _int_list(args.k))
    except (constructors.BadParameters, constructors.CutNotNonsingular, IndexError) as exc:
        raise InputError(str(exc)) from None
    _emit(args, serialize_document(document_from_pair(cp)))
    return EXIT_OK


def _load_refs(source: str, dim: int):
    if source == "table1":
        try:
            return constructors.blowup_references(dim)
        except constructors.BadParameters as exc:
            raise InputError(f"built-in references: {exc}") from None
    try:
        data = json.loads(_read(source))
        return references_from_dict(data)
    except (json.JSONDecodeError, DocumentError, PolytopeError) as exc:
        raise InputError(f"{source}: {exc}") from None


def cmd_classify(args) -> int:
    cp = _load_pair(args.file)
    refs = _load_refs(args.refs, cp.dim)
    report = classify_facets(cp, refs)
    if args.json:
        _emit(args, dumps_report(facet_report_to_dict(report)))
        return EXIT_OK
    lines = [f"{'count':>5}  {'combinatorial type':<40}  (alpha_1,...,alpha_n)"]
    for name, count in report.histogram.items():
        lams = [fmt_vec(f.lam) for f in report.facets if f.type_name == name]
        lines.append(f"{count:>5}  {name:<40}  {' '.join(lams)}")
    _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_search(args) -> int:
    doc = _load_doc(args.file)
    try:
        p = doc.to_polytope()
    except PolytopeError as exc:
        raise InputError(f"{args.file}: {exc}") from None
    try:
        summary = enumerate_characteristic_functions(
            p, args.bound, mode=args.mode, samples=args.samples, seed=args.seed,
            budget=args.budget, strategy=args.strategy,
        )
    except BudgetExceeded as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _emit(args, dumps_report(summary_to_dict(summary)))
    else:
        frac = summary.trivial_fraction
        _emit(args, (
            f"tested {summary.tested}, non-singular {summary.nonsingular}, "
            f"condition trivial {summary.trivial}"
            + (f" ({frac:.3f} of non-singular)" if frac is not None else "") + "\n"
        ))
    return EXIT_OK


def cmd_iso(args) -> int:
    a, b = _load_doc(args.first), _load_doc(args.second)
    try:
        if a.is_pair and b.is_pair:
            found = gl_equivalent(a.to_pair(), b.to_pair())
            result = {"kind": "pair", "isomorphic": found is not None}
            if found:
                result["facet_map"] = list(found[0])
                result["g"] = [list(r) for r in found[1]]
        else:
            iso = combinatorial_isomorphism(a.to_polytope(), b.to_polytope())
            result = {"kind": "polytope", "isomorphic": iso is not None}
            if iso:
                result["facet_map"] = list(iso.facet_perm)
    except (PolytopeError, PairError, LatticeError) as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _emit(args, dumps_report(result))
    else:
        text = "isomorphic" if result["isomorphic"] else "not isomorphic"
        if result["isomorphic"]:
            text += f": facets {fmt_vec(result['facet_map'])}"
            if "g" in result:
                text += " with g = " + " ".join(fmt_vec(r) for r in result["g"])
        _emit(args, text + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-o", "--output", help="write output here instead of stdout")

    ap = _Parser(prog="charpair", description="Symmetries of quasitoric characteristic pairs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", parents=[common], help="check a polytope or pair document")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("aut", parents=[common], help="automorphism group of a pair")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("check-condition", parents=[common],
                       help="exit 0 if aut(P,lambda) -> aut(P) is trivial, 3 otherwise")
    p.add_argument("file", nargs="?", default="-")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("construct", help="write a pair document")
    csub = p.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    c = csub.add_parser("simplex", parents=[common])
    c.add_argument("--n", type=int, required=True)
    c = csub.add_parser("product", parents=[common])
    c.add_argument("first")
    c.add_argument("second")
    c = csub.add_parser("vertex-cut", parents=[common])
    c.add_argument("file", nargs="?", default="-")
    c.add_argument("--vertex", type=int, required=True)
    c = csub.add_parser("bott", parents=[common])
    c.add_argument("--k", required=True, help="comma-separated twisting integers")
    c = csub.add_parser("m2", parents=[common])
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", required=True, help="comma-separated, n-2 pairwise distinct integers")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify-facets", parents=[common], help="facet types against references")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--refs", default="table1", help="'table1' or a reference library JSON path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("search", parents=[common], help="count characteristic functions")
    p.add_argument("file", nargs="?", default="-")
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--mode", choices=["exhaustive", "random"], default="exhaustive")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--strategy", choices=["sequential", "uniform"], default="sequential")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("iso", parents=[common], help="compare two documents")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_iso)
    return ap


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"charpair: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"charpair: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_cli())
