"""JSON set-function documents.

A document lists the ground set and one entry per subset::

    {"ground": ["a", "b"],
     "values": [{"set": [], "value": 0}, {"set": ["a"], "value": 2},
                {"set": ["b"], "value": "-inf"}]}

Subsets that are missing, or whose value is ``"-inf"``, lie outside the
effective domain.  Sets are written as label arrays in ground-set order.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path
from typing import Any

from .core import NEG_INF, GroundSet, SetFunction
from .errors import OrdConcaveError, ParseError

FIXTURES = ("wconcave_only", "lex_u1", "lex_u2")


def number(value: float) -> int | float:
    """Integral floats as ints, so integer tables serialize without ``.0``."""
    if isinstance(value, float) and value.is_integer():
        return int(value)
    return value


def parse_document(text: bytes | str) -> SetFunction:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8: {exc}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None
    return from_document(doc)


def from_document(doc: Any) -> SetFunction:
    if not isinstance(doc, dict):
        raise ParseError("document must be an object with 'ground' and 'values'")
    for key in ("ground", "values"):
        if key not in doc:
            raise ParseError("missing key", field=key)
    labels = doc["ground"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ParseError("must be a list of strings", field="ground")
    try:
        ground = GroundSet(labels)
    except OrdConcaveError as exc:
        raise ParseError(str(exc), field="ground") from None
    entries = doc["values"]
    if not isinstance(entries, list):
        raise ParseError("must be a list of entries", field="values")

    table: list = [NEG_INF] * (1 << ground.n)
    seen: set[int] = set()
    for k, entry in enumerate(entries):
        where = f"values[{k}]"
        if not isinstance(entry, dict) or set(entry) != {"set", "value"}:
            raise ParseError("entry must have exactly the keys 'set' and 'value'", field=where)
        members = entry["set"]
        if not isinstance(members, list) or not all(isinstance(x, str) for x in members):
            raise ParseError("must be a list of labels", field=f"{where}.set")
        bits = 0
        for j, label in enumerate(members):
            if label not in ground:
                raise ParseError(f"unknown label {label!r}", field=f"{where}.set[{j}]")
            bit = 1 << ground.index(label)
            if bits & bit:
                raise ParseError(f"label {label!r} repeated", field=f"{where}.set[{j}]")
            bits |= bit
        if bits in seen:
            raise ParseError(f"duplicate entry for {ground.from_bits(bits)!r}", field=f"{where}.set")
        seen.add(bits)
        value = entry["value"]
        if value == "-inf":
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ParseError('value must be a finite number or "-inf"', field=f"{where}.value")
        table[bits] = float(value)
    if all(v is NEG_INF for v in table):
        raise ParseError("no finite value", field="values")
    return SetFunction(ground, table)


def to_document(u: SetFunction, *, include_neg_inf: bool = False) -> dict:
    entries = []
    for m in range(1 << u.n):
        value = u.at(m)
        if value is NEG_INF:
            if include_neg_inf:
                entries.append({"set": list(u.ground.labels_of(m)), "value": "-inf"})
            continue
        entries.append({"set": list(u.ground.labels_of(m)), "value": number(value)})
    return {"ground": list(u.ground.labels), "values": entries}


def dump_document(u: SetFunction) -> str:
    doc = to_document(u)
    lines = ["{", f'  "ground": {json.dumps(doc["ground"])},', '  "values": [']
    body = [f"    {json.dumps(e)}" for e in doc["values"]]
    lines.append(",\n".join(body))
    lines += ["  ]", "}"]
    return "\n".join(lines) + "\n"


def load(path: str | Path) -> SetFunction:
    return parse_document(Path(path).read_bytes())


def load_fixture(name: str) -> SetFunction:
    """One of the bundled tables: ``wconcave_only`` (ordinally w-concave, not ordinally concave) and the pair ``lex_u1``, ``lex_u2``."""
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; choose from {FIXTURES}")
    return parse_document(resources.files("ordconcave.fixtures").joinpath(f"{name}.json").read_bytes())


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("ordconcave.fixtures").joinpath(f"{name}.json")))
