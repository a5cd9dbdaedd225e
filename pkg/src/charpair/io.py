"""JSON documents for polytopes, characteristic pairs and reports."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Any, Sequence

from jsonschema import Draft202012Validator

from .explorer import FacetType, FacetTypeReport, SearchSummary
from .pair import CharPair
from .polytope import Polytope
from .symmetry import AutReport, PairAut, PosetAut

SCHEMA_VERSION = "1.0"

DOCUMENT_SCHEMA = {
    "type": "object",
    "required": ["schema_version", "dim", "vertices"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"type": "string"},
        "dim": {"type": "integer", "minimum": 1},
        "facet_count": {"type": "integer", "minimum": 2},
        "facet_names": {"type": "array", "items": {"type": "string"}},
        "vertices": {
            "type": "array",
            "minItems": 1,
            "items": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        },
        "lambda": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "integer"}},
        },
    },
}

_validator = Draft202012Validator(DOCUMENT_SCHEMA)


class DocumentError(ValueError):
    pass


class DocumentSyntaxError(DocumentError):
    def __init__(self, msg: str, line: int, column: int):
        self.line, self.column = line, column
        super().__init__(f"line {line}, column {column}: {msg}")


class SchemaError(DocumentError):
    def __init__(self, path: str, msg: str):
        self.path = path
        self.msg = msg
        super().__init__(f"{path or '/'}: {msg}")


def _pointer(parts: Sequence[Any]) -> str:
    return "".join("/" + str(p).replace("~", "~0").replace("/", "~1") for p in parts)


@dataclass(frozen=True)
class PolytopeDocument:
    dim: int
    vertices: tuple[tuple[int, ...], ...]
    facet_count: int | None = None
    facet_names: tuple[str, ...] | None = None
    lambdas: tuple[tuple[int, ...], ...] | None = None
    schema_version: str = SCHEMA_VERSION

    @property
    def is_pair(self) -> bool:
        return self.lambdas is not None

    def resolved_facet_count(self) -> int:
        if self.facet_count is not None:
            return self.facet_count
        if self.lambdas is not None:
            return len(self.lambdas)
        if self.facet_names is not None:
            return len(self.facet_names)
        return max(i for v in self.vertices for i in v) + 1

    def to_polytope(self) -> Polytope:
        return Polytope(self.dim, self.resolved_facet_count(), self.vertices)

    def to_pair(self) -> CharPair:
        if self.lambdas is None:
            raise DocumentError("document has no lambda vectors")
        return CharPair(self.to_polytope(), self.lambdas)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"schema_version": self.schema_version, "dim": self.dim}
        if self.facet_count is not None:
            out["facet_count"] = self.facet_count
        if self.facet_names is not None:
            out["facet_names"] = list(self.facet_names)
        out["vertices"] = [list(v) for v in self.vertices]
        if self.lambdas is not None:
            out["lambda"] = [list(v) for v in self.lambdas]
        return out


def document_from_dict(data: Any) -> PolytopeDocument:
    errors = sorted(_validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise SchemaError(_pointer(e.absolute_path), e.message)
    dim = data["dim"]
    names = data.get("facet_names")
    lams = data.get("lambda")
    m = data.get("facet_count")
    if m is None:
        m = len(lams) if lams is not None else len(names) if names is not None else None
    if m is not None:
        for k, v in enumerate(data["vertices"]):
            for t, i in enumerate(v):
                if i >= m:
                    raise SchemaError(f"/vertices/{k}/{t}", f"facet index {i} out of range [0, {m})")
        if names is not None and len(names) != m:
            raise SchemaError("/facet_names", f"expected {m} names, got {len(names)}")
        if lams is not None and len(lams) != m:
            raise SchemaError("/lambda", f"expected {m} vectors, one per facet, got {len(lams)}")
    if lams is not None:
        for k, v in enumerate(lams):
            if len(v) != dim:
                raise SchemaError(f"/lambda/{k}", f"vector has length {len(v)}, expected {dim}")
    return PolytopeDocument(
        dim=dim,
        vertices=tuple(tuple(v) for v in data["vertices"]),
        facet_count=data.get("facet_count"),
        facet_names=tuple(names) if names is not None else None,
        lambdas=tuple(tuple(v) for v in lams) if lams is not None else None,
        schema_version=data["schema_version"],
    )


def parse_document(text: str) -> PolytopeDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    return document_from_dict(data)


def serialize_document(doc: PolytopeDocument) -> str:
    # one key per line, values compact
    d = doc.to_dict()
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in d.items())
    return "{\n" + body + "\n}\n"


def document_from_polytope(p: Polytope, facet_names: Sequence[str] | None = None) -> PolytopeDocument:
    return PolytopeDocument(
        dim=p.dim,
        vertices=p.vertices,
        facet_count=p.facet_count,
        facet_names=tuple(facet_names) if facet_names is not None else None,
    )


def document_from_pair(cp: CharPair, facet_names: Sequence[str] | None = None) -> PolytopeDocument:
    return PolytopeDocument(
        dim=cp.dim,
        vertices=cp.polytope.vertices,
        facet_names=tuple(facet_names) if facet_names is not None else None,
        lambdas=cp.lambdas,
    )


def load_builtin(name: str) -> str:
    """Text of a document shipped in the package data directory."""
    return resources.files("charpair").joinpath("data", name).read_text(encoding="utf-8")


def builtin_names() -> list[str]:
    return sorted(p.name for p in resources.files("charpair").joinpath("data").iterdir()
                  if p.name.endswith(".json"))


# --- reference libraries --------------------------------------------------


def references_to_dict(refs: dict[str, Polytope]) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "references": [
            {"name": name, "polytope": document_from_polytope(p).to_dict()} for name, p in refs.items()
        ],
    }


def serialize_references(refs: dict[str, Polytope]) -> str:
    entries = []
    for name, p in refs.items():
        doc = json.dumps(document_from_polytope(p).to_dict(), ensure_ascii=False)
        entries.append(f'    {{"name": {json.dumps(name, ensure_ascii=False)}, "polytope": {doc}}}')
    return ('{\n  "schema_version": ' + json.dumps(SCHEMA_VERSION) + ',\n  "references": [\n'
            + ",\n".join(entries) + "\n  ]\n}\n")


def references_from_dict(data: dict) -> dict[str, Polytope]:
    try:
        entries = data["references"]
    except (KeyError, TypeError):
        raise SchemaError("/references", "missing reference list") from None
    out = {}
    for k, entry in enumerate(entries):
        try:
            doc = document_from_dict(entry["polytope"])
        except SchemaError as exc:
            raise SchemaError(f"/references/{k}/polytope{exc.path}", exc.msg) from None
        out[entry["name"]] = doc.to_polytope()
    return out


# --- reports -------------------------------------------------------------


def _aut_dict(x: PosetAut) -> dict:
    return {"facet_perm": list(x.facet_perm), "vertex_perm": list(x.vertex_perm)}


def _pair_aut_dict(x: PairAut) -> dict:
    return {**_aut_dict(x.f), "g": [list(r) for r in x.g]}


def aut_report_to_dict(r: AutReport) -> dict:
    return {
        "dim": r.dim,
        "order": r.order,
        "poset_aut_order": len(r.poset_auts),
        "image_order": len(r.image),
        "kernel_order": len(r.kernel),
        "condition_trivial": r.condition_trivial,
        "pair_auts": [_pair_aut_dict(x) for x in r.pair_auts],
        "poset_auts": [_aut_dict(x) for x in r.poset_auts],
        "image": [_aut_dict(x) for x in r.image],
        "kernel": [_pair_aut_dict(x) for x in r.kernel],
    }


def aut_report_from_dict(d: dict) -> AutReport:
    def aut(e):
        return PosetAut(tuple(e["facet_perm"]), tuple(e["vertex_perm"]))

    def pair_aut(e):
        return PairAut(aut(e), tuple(tuple(r) for r in e["g"]))

    return AutReport(
        dim=d["dim"],
        pair_auts=tuple(pair_aut(e) for e in d["pair_auts"]),
        poset_auts=tuple(aut(e) for e in d["poset_auts"]),
        image=tuple(aut(e) for e in d["image"]),
        kernel=tuple(pair_aut(e) for e in d["kernel"]),
        condition_trivial=d["condition_trivial"],
    )


def facet_report_to_dict(r: FacetTypeReport) -> dict:
    return {
        "facets": [{"facet": f.facet, "lambda": list(f.lam), "type": f.type_name} for f in r.facets],
        # a list keeps the reference order under sorted-key serialization
        "histogram": [{"type": name, "count": c} for name, c in r.histogram.items()],
    }


def facet_report_from_dict(d: dict) -> FacetTypeReport:
    rows = tuple(FacetType(e["facet"], tuple(e["lambda"]), e["type"]) for e in d["facets"])
    return FacetTypeReport(rows, {e["type"]: e["count"] for e in d["histogram"]})


def summary_to_dict(s: SearchSummary) -> dict:
    return {
        "polytope_id": s.polytope_id,
        "bound": s.bound,
        "mode": s.mode,
        "seed": s.seed,
        "strategy": s.strategy,
        "tested": s.tested,
        "nonsingular": s.nonsingular,
        "trivial": s.trivial,
        "witnesses": s.witnesses,
    }


def summary_from_dict(d: dict) -> SearchSummary:
    return SearchSummary(
        polytope_id=d["polytope_id"],
        bound=d["bound"],
        mode=d["mode"],
        tested=d["tested"],
        nonsingular=d["nonsingular"],
        trivial=d["trivial"],
        seed=d["seed"],
        strategy=d["strategy"],
        witnesses={k: [list(map(list, w)) for w in v] for k, v in d["witnesses"].items()},
    )


def dumps_report(d: dict) -> str:
    return json.dumps(d, sort_keys=True, indent=2) + "\n"
