"""Instance documents: canonical JSON for spaces and topological monoids.

Schema (one document per file)::

    {"kind": "space" | "monoid",
     "points": [str, ...],
     "opens": [[str, ...], ...],      # full open-set lattice
     "table": [[str, ...], ...]}      # monoid only; row i, column j = points[i]·points[j]

Canonical form lists members in declared point order and sorts ``opens`` by
size, then by member index list.
"""

from __future__ import annotations

import hashlib
import json

from .errors import (
    AssociativityViolation,
    CarrierMismatch,
    DuplicatePoint,
    FintopError,
    ForeignPoint,
    ParseError,
    TopologyAxiomViolation,
)
from .finspace import FiniteSpace, Partition, bits, make_space
from .semigroup import CayleyTable, make_table
from .topmonoid import TopMonoid, assemble


def label(atom) -> str:
    """String form of a point: tuples from products print as ``(x,y)``, blocks as ``{x,y}``."""
    if isinstance(atom, str):
        return atom
    if isinstance(atom, tuple):
        return "(" + ",".join(label(a) for a in atom) + ")"
    if isinstance(atom, frozenset):
        return "{" + ",".join(sorted(label(a) for a in atom)) + "}"
    return str(atom)


def _space_doc(space: FiniteSpace, kind: str) -> dict:
    names = [label(p) for p in space.points]
    if len(set(names)) != len(names):
        raise DuplicatePoint("two points render to the same label")
    return {
        "kind": kind,
        "points": names,
        "opens": [[names[i] for i in bits(u)] for u in space.sorted_opens],
    }


def to_document(obj) -> dict:
    if isinstance(obj, TopMonoid):
        doc = _space_doc(obj.space, "monoid")
        names = doc["points"]
        doc["table"] = [[names[k] for k in row] for row in obj.algebra.table]
        return doc
    if isinstance(obj, FiniteSpace):
        return _space_doc(obj, "space")
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(doc) -> str:
    return json.dumps(doc, ensure_ascii=False)


def serialize(obj) -> str:
    """Canonical one-line JSON text (newline-terminated)."""
    return dumps(to_document(obj)) + "\n"


def digest(obj) -> str:
    """sha256 over the canonical serialisation of an instance (tuples hash their parts)."""
    h = hashlib.sha256()
    for part in _flatten(obj):
        h.update(part.encode())
        h.update(b"\x00")
    return h.hexdigest()


def _flatten(obj):
    if isinstance(obj, (FiniteSpace, TopMonoid)):
        yield serialize(obj)
    elif isinstance(obj, Partition):
        yield dumps([[label(a) for a in block] for block in obj.block_lists()])
    elif isinstance(obj, tuple):
        for item in obj:
            yield from _flatten(item)
    elif hasattr(obj, "partition"):
        yield from _flatten(obj.partition)
    else:
        yield repr(obj)


def partition_doc(p: Partition) -> list[list[str]]:
    return [[label(a) for a in block] for block in p.block_lists()]


# -- parsing -----------------------------------------------------------------


def _expect(cond, message, path):
    if not cond:
        raise ParseError(message, path=path)


def _string_list(value, path):
    _expect(isinstance(value, list), "expected a list", path)
    for k, item in enumerate(value):
        _expect(isinstance(item, str), "expected a string", f"{path}[{k}]")
    return value


def from_document(doc) -> FiniteSpace | TopMonoid:
    _expect(isinstance(doc, dict), "document must be a JSON object", "$")
    unknown = set(doc) - {"kind", "points", "opens", "table"}
    _expect(not unknown, f"unknown fields {sorted(unknown)}", "$")
    kind = doc.get("kind")
    _expect(kind in ("space", "monoid"), 'kind must be "space" or "monoid"', "$.kind")
    _expect("points" in doc, "missing field", "$.points")
    _expect("opens" in doc, "missing field", "$.opens")
    points = _string_list(doc["points"], "$.points")
    _expect(isinstance(doc["opens"], list), "expected a list", "$.opens")
    opens = [_string_list(u, f"$.opens[{k}]") for k, u in enumerate(doc["opens"])]
    try:
        space = make_space(points, opens)
    except (TopologyAxiomViolation, DuplicatePoint, ForeignPoint) as exc:
        field = "$.points" if isinstance(exc, DuplicatePoint) else "$.opens"
        raise type(exc)(str(exc), path=field) from None
    if kind == "space":
        _expect("table" not in doc, "a space document has no table", "$.table")
        return space
    _expect("table" in doc, "missing field", "$.table")
    table = doc["table"]
    _expect(isinstance(table, list), "expected a list", "$.table")
    rows = [_string_list(r, f"$.table[{k}]") for k, r in enumerate(table)]
    try:
        algebra = make_table(points, rows)
    except AssociativityViolation as exc:
        raise AssociativityViolation(str(exc), exc.witness, path="$.table") from None
    except (CarrierMismatch, ForeignPoint) as exc:
        raise type(exc)(str(exc), path="$.table") from None
    return assemble(space, algebra)


def parse_instance(text: str) -> FiniteSpace | TopMonoid:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, path=f"line {exc.lineno} column {exc.colno}") from None
    return from_document(doc)


def load_instance(path) -> FiniteSpace | TopMonoid:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def table_to_atoms(t: CayleyTable) -> list[list[str]]:
    names = [label(p) for p in t.points]
    return [[names[k] for k in row] for row in t.table]


__all__ = [
    "FintopError",
    "digest",
    "dumps",
    "from_document",
    "label",
    "load_instance",
    "parse_instance",
    "partition_doc",
    "serialize",
    "to_document",
]
