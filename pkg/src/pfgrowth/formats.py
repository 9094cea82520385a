"""JSON and CSV formats for algebras, character tables, matrices and reports.

Three input documents are recognized by their distinguishing key:

``{"rank", "constants", "labels"?, "unit"?, "element"?, "meta"?}``
    Structure constants ``constants[i][j][k]`` as ints or ``"p/q"`` strings.
``{"order", "class_sizes", "characters", "identity_class"?, "labels"?, "element"?, "meta"?}``
    Character values as numbers or ``[re, im]`` pairs.
``{"matrix", "labels"?, "meta"?}``
    A raw action matrix with the unit at index 0.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import _exact
from .action_graph import ActionMatrix, PreActionMatrix, matrix_from_rows
from .based_algebra import CharacterTable, Element, StructureTensor, new_based_algebra
from .errors import InputError

SCHEMA_VERSION = 1
CSV_HEADER = ("n", "b", "a", "ratio")


@dataclass
class Document:
    """A parsed input file."""

    kind: str  # "algebra" | "chartable" | "matrix"
    algebra: StructureTensor | None = None
    table: CharacterTable | None = None
    matrix: PreActionMatrix | None = None
    element: list | None = None
    meta: dict = field(default_factory=dict)


def parse_json_text(text: str, origin: str = "<string>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{origin}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def read_json(path) -> object:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return parse_json_text(text, str(path))


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise InputError(f"{where}: missing key {key!r}")
    return doc[key]


def _meta(doc: dict, where: str) -> dict:
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise InputError(f"{where}: 'meta' must be an object")
    return meta


def _complex(x, where: str) -> complex:
    if isinstance(x, bool):
        raise InputError(f"{where}: boolean is not a character value")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(isinstance(t, (int, float)) for t in x):
        return complex(x[0], x[1])
    raise InputError(f"{where}: character value {x!r} is neither a number nor [re, im]")


def algebra_from_dict(doc: dict, where: str = "algebra") -> Document:
    rank = _require(doc, "rank", where)
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise InputError(f"{where}: 'rank' must be an integer")
    constants = _require(doc, "constants", where)
    labels = doc.get("labels")
    unit = doc.get("unit", 0)
    if isinstance(unit, str):
        if labels is None or unit not in labels:
            raise InputError(f"{where}: unit label {unit!r} not among the labels")
        unit = labels.index(unit)
    alg = new_based_algebra(rank, constants, labels, unit_index=unit)
    return Document("algebra", algebra=alg, element=doc.get("element"), meta=_meta(doc, where))


def chartable_from_dict(doc: dict, where: str = "character table") -> Document:
    order = _require(doc, "order", where)
    sizes = _require(doc, "class_sizes", where)
    rows = _require(doc, "characters", where)
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{where}: 'characters' must be a list of rows")
    chars = np.array(
        [[_complex(x, f"{where} row {i}") for x in row] for i, row in enumerate(rows)],
        dtype=complex,
    )
    if chars.ndim != 2:
        raise InputError(f"{where}: character rows have unequal lengths")
    table = CharacterTable(
        int(order), tuple(sizes), chars, int(doc.get("identity_class", 0)), doc.get("labels")
    )
    table.check()
    return Document("chartable", table=table, element=doc.get("element"), meta=_meta(doc, where))


def matrix_from_dict(doc: dict, where: str = "matrix") -> Document:
    rows = _require(doc, "matrix", where)
    pre = matrix_from_rows(rows, doc.get("labels"))
    return Document("matrix", matrix=pre, meta=_meta(doc, where))


def document_from_dict(doc, where: str = "input") -> Document:
    if not isinstance(doc, dict):
        raise InputError(f"{where}: top level must be a JSON object")
    if "constants" in doc:
        return algebra_from_dict(doc, where)
    if "characters" in doc:
        return chartable_from_dict(doc, where)
    if "matrix" in doc:
        return matrix_from_dict(doc, where)
    raise InputError(f"{where}: expected one of the keys 'constants', 'characters', 'matrix'")


def load_document(path, kind: str | None = None) -> Document:
    """Read a JSON input; ``kind`` (if given) must match what the file holds."""
    out = document_from_dict(read_json(path), str(path))
    if kind is not None and out.kind != kind:
        raise InputError(f"{path}: expected a {kind} document, found a {out.kind} document")
    return out


# -- writers ------------------------------------------------------------------

def _exact_json(x):
    x = _exact.normalize(x)
    return x if isinstance(x, int) else str(x)


def algebra_to_dict(alg: StructureTensor, element: Element | None = None, meta=None) -> dict:
    doc = {
        "rank": alg.rank,
        "labels": list(alg.labels),
        "constants": [[[_exact_json(x) for x in row] for row in plane] for plane in alg.constants],
    }
    if element is not None:
        doc["element"] = [_exact_json(x) for x in element]
    if meta:
        doc["meta"] = meta
    return doc


def chartable_to_dict(table: CharacterTable, element=None, meta=None) -> dict:
    def value(z):
        z = complex(z)
        return z.real if z.imag == 0 else [z.real, z.imag]

    doc = {
        "order": table.group_order,
        "class_sizes": list(table.class_sizes),
        "identity_class": table.identity_class,
        "labels": list(table.row_labels()),
        "characters": [[value(z) for z in row] for row in table.characters],
    }
    if element is not None:
        doc["element"] = [_exact_json(x) for x in element]
    if meta:
        doc["meta"] = meta
    return doc


def matrix_to_dict(m: ActionMatrix | PreActionMatrix, meta=None) -> dict:
    doc = {"matrix": [[_exact_json(x) for x in row] for row in m.entries]}
    if m.labels is not None:
        doc["labels"] = list(m.labels)
    if meta:
        doc["meta"] = meta
    return doc


def _finite(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    return x


def _prepare(obj, floats: list):
    """Copy ``obj`` with every float replaced by a placeholder token."""
    if isinstance(obj, dict):
        return {str(k): _prepare(v, floats) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_prepare(v, floats) for v in obj]
    if isinstance(obj, (np.floating, float)) and not isinstance(obj, bool):
        x = _finite(float(obj))
        if x is None:
            return None
        floats.append(format_float(x))
        return f"\x00{len(floats) - 1}\x00"
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def format_float(x: float) -> str:
    """17 significant digits, always parseable back to the same double."""
    s = "%.17g" % x
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def dumps_report(report: dict) -> str:
    """Deterministic JSON: sorted keys, floats printed with 17 significant digits."""
    floats: list[str] = []
    text = json.dumps(_prepare(report, floats), sort_keys=True, indent=2, ensure_ascii=True)
    for i, s in enumerate(floats):
        text = text.replace(f'"\\u0000{i}\\u0000"', s, 1)
    return text + "\n"


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"


def ratio_csv(rows) -> str:
    """CSV with header ``n,b,a,ratio``: exact ``b``, 17-digit ``a`` and ``ratio``."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in rows:
        writer.writerow([r.n, _exact.format_exact(r.b), "%.17g" % r.a, "%.17g" % r.ratio])
    return buf.getvalue()


def write_text(path, text: str) -> None:
    path = Path(path)
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None
