"""CSV/JSON report writing and reading with pinned column schemas."""
from __future__ import annotations

import csv
import io
import json
import math
from fractions import Fraction
from pathlib import Path

from .census import PrimeRecord, VerificationReport
from .expsum import SumScanResult

__all__ = ["SCHEMAS", "emit_report", "format_value", "parse_csv", "read_csv", "render"]

SCHEMAS: dict[str, list[str]] = {
    "census": ["p", "t_p", "tau_pm1", "in_E", "in_Eprime"],
    "scan": ["p", "t_p", "max_abs", "argmax_a", "exact", "hbk", "trivial_bound"],
    "verify": ["lhs", "rhs", "ratio", "term1", "term2", "term3", "exact"],
    "discrepancy": ["p", "t_p", "N", "H", "star", "extreme", "erdos_turan"],
    "lsieve": ["K", "T", "s_T", "lhs", "rhs", "ratio"],
    "pairs": ["provenance", "alpha", "beta", "f", "best"],
    "corollary": ["X", "T", "epsilon", "c_corr", "threshold", "n_eprime", "n_violating", "fraction", "empty", "exact"],
    "erdos-murty": ["count", "bound", "ratio", "divisibility_ok"],
    "titchmarsh": ["X", "ratio"],
    "suggest": ["T", "L", "Delta"],
}


def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return f"{v:.11e}"
    return str(v)


def _json_value(v):
    if isinstance(v, Fraction):
        return format_value(v)
    if isinstance(v, float):
        return format_value(v) if not math.isfinite(v) else float(format_value(v))
    if isinstance(v, dict):
        return {k: _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def render(kind: str, rows: list[dict], fmt: str = "csv", meta: dict | None = None) -> str:
    """Serialise ``rows`` (dicts keyed by the schema columns) to text."""
    columns = SCHEMAS[kind]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(c)) for c in columns])
        return buf.getvalue()
    if fmt == "json":
        doc = {"kind": kind, "columns": columns, "rows": [{c: _json_value(row.get(c)) for c in columns} for row in rows]}
        if meta:
            doc["meta"] = _json_value(meta)
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def emit_report(kind: str, rows: list[dict], fmt: str = "csv", path: str | Path | None = None, meta: dict | None = None) -> str:
    """Render and write to ``path`` (if given). Returns the rendered text."""
    text = render(kind, rows, fmt, meta)
    if path is not None:
        Path(path).write_text(text)
    return text


def _parse_bool(text: str) -> bool:
    if text not in ("true", "false"):
        raise ValueError(f"bad boolean {text!r}")
    return text == "true"


def _parse_float(text: str) -> float:
    return float("nan") if text == "" else float(text)


def read_csv(path: str | Path, kind: str) -> list:
    return parse_csv(Path(path).read_text(), kind)


def parse_csv(text: str, kind: str) -> list:
    """Parse report text back into records.

    ``census`` rows become :class:`PrimeRecord`, ``scan`` rows
    :class:`SumScanResult` (``strategy`` is not part of the schema and comes
    back as ``"exact"`` or ``"sampled"``), ``verify`` rows
    :class:`VerificationReport`. Other kinds come back as dicts of strings.
    """
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != SCHEMAS[kind]:
        raise ValueError(f"columns {reader.fieldnames} do not match the {kind} schema")
    out = []
    for row in reader:
        if kind == "census":
            out.append(PrimeRecord(int(row["p"]), int(row["t_p"]), int(row["tau_pm1"]), _parse_bool(row["in_E"]), _parse_bool(row["in_Eprime"])))
        elif kind == "scan":
            exact = _parse_bool(row["exact"])
            out.append(
                SumScanResult(
                    p=int(row["p"]),
                    t_p=int(row["t_p"]),
                    max_abs=float(row["max_abs"]),
                    argmax_a=int(row["argmax_a"]),
                    exact=exact,
                    strategy="exact" if exact else "sampled",
                    hbk=float(row["hbk"]),
                    trivial_bound=float(row["trivial_bound"]),
                )
            )
        elif kind == "verify":
            parts = {k: _parse_float(row[k]) for k in ("term1", "term2", "term3") if row[k] != ""}
            out.append(VerificationReport(float(row["lhs"]), float(row["rhs"]), parts, _parse_bool(row["exact"])))
        else:
            out.append(dict(row))
    return out
