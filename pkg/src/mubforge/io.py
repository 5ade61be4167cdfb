"""JSON interchange (schema ``mubforge/1``) and the lossy CSV export.

Every table and matrix is indexed by vectors of Z_p^n in lexicographic
order, coords[0] most significant.
"""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any

import numpy as np

from .bent import FunctionTable, MubentSet
from .constructions import SpreadSet
from .engine import STANDARD, PhaseMatrix
from .zmod import Matrix, SymMatrix

SCHEMA = "mubforge/1"


class SchemaError(ValueError):
    pass


def dumps(obj: Any) -> str:
    """Canonical serialization: sorted keys, compact separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"


def write_json(path: str | Path, obj: Any) -> None:
    Path(path).write_text(dumps(obj))


def _check_schema(d: dict) -> None:
    if not isinstance(d, dict):
        raise SchemaError("expected a JSON object")
    if d.get("schema", SCHEMA) != SCHEMA:
        raise SchemaError(f"unsupported schema {d.get('schema')!r}")


def _int(d: dict, key: str) -> int:
    try:
        v = d[key]
    except KeyError:
        raise SchemaError(f"missing field {key!r}") from None
    if not isinstance(v, int) or isinstance(v, bool):
        raise SchemaError(f"field {key!r} must be an integer")
    return v


def table_to_dict(f: FunctionTable) -> dict:
    return {"schema": SCHEMA, "p": f.p, "n": f.n, "codomain": f.codomain, "values": list(f.values)}


def table_from_dict(d: dict) -> FunctionTable:
    _check_schema(d)
    try:
        return FunctionTable(_int(d, "p"), _int(d, "n"), _int(d, "codomain"), tuple(d["values"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad function table: {exc}") from exc


def mubent_to_dict(s: MubentSet) -> dict:
    return {
        "schema": SCHEMA,
        "kind": "mubent_set",
        "p": s.p,
        "n": s.n,
        "codomain": s.codomain,
        "functions": [list(f.values) for f in s],
    }


def mubent_from_dict(d: dict) -> MubentSet:
    _check_schema(d)
    p, n, m = _int(d, "p"), _int(d, "n"), _int(d, "codomain")
    try:
        return MubentSet(tuple(FunctionTable(p, n, m, tuple(v)) for v in d["functions"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad mubent set: {exc}") from exc


def spread_to_dict(s: SpreadSet) -> dict:
    return {"schema": SCHEMA, "p": s.p, "n": s.n, "matrices": [m.to_lists() for m in s.matrices]}


def spread_from_dict(d: dict) -> SpreadSet:
    _check_schema(d)
    p, n = _int(d, "p"), _int(d, "n")
    try:
        mats = []
        for rows in d["matrices"]:
            m = Matrix(p, tuple(tuple(r) for r in rows))
            if m.n != n:
                raise ValueError(f"matrix is {m.n} x {m.n}, expected {n} x {n}")
            mats.append(SymMatrix(p, m.entries) if m.is_symmetric() else m)
        return SpreadSet(tuple(mats))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad spread set: {exc}") from exc


def phase_to_dict(m: PhaseMatrix) -> dict:
    if m.exponents is None:
        exps = None
    elif m.p == 2:
        exps = [[list(st) for st in row] for row in m.exponents]
    else:
        exps = [list(row) for row in m.exponents]
    return {
        "schema": SCHEMA,
        "p": m.p,
        "n": m.n,
        "encoding": m.encoding,
        "normalization": m.normalization,
        "exponents": exps,
    }


def phase_from_dict(d: dict) -> PhaseMatrix:
    _check_schema(d)
    p, n = _int(d, "p"), _int(d, "n")
    enc = d.get("encoding")
    try:
        if enc == STANDARD:
            return PhaseMatrix(p, n, enc)
        exps = d["exponents"]
        if enc == "pm_i":
            exps = tuple(tuple(tuple(st) for st in row) for row in exps)
            if any(len(st) != 2 for row in exps for st in row):
                raise ValueError("pm_i exponents must be [s, t] pairs")
        else:
            exps = tuple(tuple(row) for row in exps)
            if any(not isinstance(e, int) for row in exps for e in row):
                raise ValueError("zeta_p exponents must be integers")
        return PhaseMatrix(p, n, enc, exps)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad phase matrix: {exc}") from exc


def detect_kind(d: dict) -> str:
    if not isinstance(d, dict):
        raise SchemaError("expected a JSON object")
    if d.get("kind") == "mub_family":
        return "family"
    if "encoding" in d:
        return "phase_matrix"
    if "functions" in d:
        return "mubent_set"
    if "matrices" in d:
        return "spread_set"
    if "values" in d:
        return "function_table"
    raise SchemaError("unrecognized document")


def read_json(path: str | Path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc


def phase_to_csv(m: PhaseMatrix) -> str:
    """Normalized complex entries, one per line: row,col,re,im (12 significant digits)."""
    mat = m.to_complex(normalized=True)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    for (a, v), z in np.ndenumerate(mat):
        re, im = float(z.real), float(z.imag)
        # avoid "-0" noise
        re = 0.0 if abs(re) < 1e-15 else re
        im = 0.0 if abs(im) < 1e-15 else im
        w.writerow([a, v, f"{re:.12g}", f"{im:.12g}"])
    return buf.getvalue()
