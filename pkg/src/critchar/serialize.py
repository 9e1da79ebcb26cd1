"""Deterministic text/CSV/JSON renderings of characters and reports."""
from __future__ import annotations

import csv
import io
import json
from typing import Any

from .charseries import AffineCharacter, QSeries, qdims
from .rootdata import RootSystem

FORMAT_TAG = "critchar/1"


def _header(kind: str, meta: dict[str, Any]) -> str:
    items = " ".join(f"{k}={v}" for k, v in meta.items())
    return f"# {FORMAT_TAG} {kind} {items}".rstrip()


def character_meta(rs: RootSystem, c: AffineCharacter, formula: str) -> dict[str, Any]:
    lam = ",".join(str(x) for x in c.base.finite)
    meta = {"formula": formula, "type": rs.label, "lambda": f"({lam})", "level": str(c.base.level), "depth": c.N}
    if c.height_cap is not None:
        meta["height"] = c.height_cap
    return meta


def character_records(rs: RootSystem, c: AffineCharacter, formula: str) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "format": FORMAT_TAG,
        "kind": "character",
        "formula": formula,
        "type": rs.type_label,
        "rank": rs.rank,
        "lambda_bar": [str(x) for x in c.base.finite],
        "level": str(c.base.level),
        "depth": c.N,
        "height_cap": c.height_cap,
        "records": [
            {"delta_degree": n, "finite_offset": list(o), "multiplicity": str(m)}
            for n, s in enumerate(c.slices)
            for o, m in sorted(s.items())
        ],
    }
    if c.height_cap is None:
        doc["qdims"] = [str(x) for x in qdims(c).coefficients]
    return doc


def dumps_json(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


def character_table(rs: RootSystem, c: AffineCharacter, formula: str) -> str:
    lines = [_header("character", character_meta(rs, c, formula))]
    if c.height_cap is None:
        lines.append("qdims " + " ".join(str(x) for x in qdims(c).coefficients))
    for n, s in enumerate(c.slices):
        lines.append(f"degree {n} terms {len(s)}")
        for o, m in sorted(s.items()):
            lines.append(f"  ({','.join(map(str, o))}) {m}")
    return "\n".join(lines) + "\n"


def character_csv(rs: RootSystem, c: AffineCharacter, formula: str) -> str:
    buf = io.StringIO()
    buf.write(_header("character", character_meta(rs, c, formula)) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["delta_degree"] + [f"offset_{i + 1}" for i in range(rs.rank)] + ["multiplicity"])
    for n, s in enumerate(c.slices):
        for o, m in sorted(s.items()):
            w.writerow([n, *o, str(m)])
    return buf.getvalue()


def render_character(rs: RootSystem, c: AffineCharacter, formula: str, fmt: str) -> str:
    if fmt == "records":
        return dumps_json(character_records(rs, c, formula))
    if fmt == "csv":
        return character_csv(rs, c, formula)
    return character_table(rs, c, formula)


def render_qseries(rs: RootSystem, s: QSeries, meta: dict[str, Any], fmt: str) -> str:
    if fmt == "records":
        return dumps_json({"format": FORMAT_TAG, "kind": "qseries", **meta,
                           "coefficients": [str(x) for x in s.coefficients]})
    if fmt == "csv":
        rows = [_header("qseries", meta), "delta_degree,coefficient"]
        rows += [f"{n},{x}" for n, x in enumerate(s.coefficients)]
        return "\n".join(rows) + "\n"
    return _header("qseries", meta) + "\nqdims " + " ".join(str(x) for x in s.coefficients) + "\n"


def load_character_records(text: str) -> dict[str, Any]:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_TAG or doc.get("kind") != "character":
        raise ValueError(f"not a {FORMAT_TAG} character record document")
    return doc


def records_to_slices(doc: dict[str, Any]) -> list[dict[tuple[int, ...], int]]:
    slices: list[dict] = [{} for _ in range(int(doc["depth"]) + 1)]
    for r in doc["records"]:
        slices[int(r["delta_degree"])][tuple(int(x) for x in r["finite_offset"])] = int(r["multiplicity"])
    return slices
