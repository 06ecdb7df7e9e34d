"""JSON persistence for Scalars, matrices, families, RE matrices and residuals.

Field order in every object is fixed, so ``dumps(to_json(x))`` is canonical and
write-then-read round trips are bit-exact.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ShapeError
from .quantum import RepLabel
from .rekit import REData, REMatrix, Residual, RMatrixFamily
from .ring import scalar_from_json, scalar_to_json
from .tensor import Mat


def _int_list(x, what):
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise ValueError(f"{what} must be a list of integers")
    return x


def mat_to_json(m: Mat) -> dict:
    return {
        "row_legs": list(m.row_legs),
        "col_legs": list(m.col_legs),
        "entries": [[scalar_to_json(x) for x in r] for r in m.rows],
    }


def mat_from_json(obj) -> Mat:
    if not isinstance(obj, dict) or not {"row_legs", "col_legs", "entries"} <= set(obj):
        raise ValueError("Mat JSON needs row_legs, col_legs and entries")
    entries = obj["entries"]
    if not isinstance(entries, list) or not all(isinstance(r, list) for r in entries):
        raise ValueError("Mat entries must be a list of rows")
    rows = [[scalar_from_json(x) for x in r] for r in entries]
    return Mat(rows, _int_list(obj["row_legs"], "row_legs"), _int_list(obj["col_legs"], "col_legs"))


def rematrix_to_json(K: REMatrix) -> dict:
    return {"rep": K.rep, "coeff_dim": K.coeff_dim, "matrix": mat_to_json(K.k)}


def rematrix_from_json(obj) -> REMatrix:
    if not isinstance(obj, dict) or not {"rep", "coeff_dim", "matrix"} <= set(obj):
        raise ValueError("REMatrix JSON needs rep, coeff_dim and matrix")
    if not isinstance(obj["rep"], str) or not isinstance(obj["coeff_dim"], int):
        raise ValueError("REMatrix rep must be a string and coeff_dim an integer")
    return REMatrix(obj["rep"], obj["coeff_dim"], mat_from_json(obj["matrix"]))


def family_to_json(fam: RMatrixFamily) -> dict:
    ids = fam.ids
    pairs = [(i, j) for i in ids for j in ids if (i, j) in fam.r]
    return {
        "reps": [{"id": rep.id, "dim": rep.dim} for rep in fam.reps],
        "r": [{"pair": [i, j], "matrix": mat_to_json(fam.R(i, j))} for i, j in pairs],
    }


def family_from_json(obj) -> RMatrixFamily:
    if not isinstance(obj, dict) or not {"reps", "r"} <= set(obj):
        raise ValueError("family JSON needs reps and r")
    reps = []
    for rep in obj["reps"]:
        if not isinstance(rep, dict) or not isinstance(rep.get("id"), str) or not isinstance(rep.get("dim"), int):
            raise ValueError(f"bad representation entry {rep!r}")
        reps.append(RepLabel(rep["id"], rep["dim"]))
    r = {}
    for item in obj["r"]:
        pair = item.get("pair") if isinstance(item, dict) else None
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(p, str) for p in pair)):
            raise ValueError(f"bad R-matrix entry {item!r}")
        r[tuple(pair)] = mat_from_json(item["matrix"])
    return RMatrixFamily(tuple(reps), r)


def redata_to_json(data: REData) -> dict:
    return {
        "family": family_to_json(data.family),
        "triples": {i: rematrix_to_json(K) for i, K in data.triples.items()},
    }


def redata_from_json(obj) -> REData:
    if not isinstance(obj, dict) or not {"family", "triples"} <= set(obj):
        raise ValueError("REData JSON needs family and triples")
    if not isinstance(obj["triples"], dict):
        raise ValueError("REData triples must be an object")
    fam = family_from_json(obj["family"])
    triples = {i: rematrix_from_json(K) for i, K in obj["triples"].items()}
    return REData(fam, triples)


def residual_to_json(res: Residual) -> dict:
    out = {"ok": res.ok}
    if res.witness is not None:
        row, col, v = res.witness
        out["witness"] = [row, col, scalar_to_json(v)]
    return out


def residual_from_json(obj) -> Residual:
    if not isinstance(obj, dict) or not isinstance(obj.get("ok"), bool):
        raise ValueError("Residual JSON needs a boolean 'ok'")
    w = obj.get("witness")
    if w is None:
        return Residual(obj["ok"])
    row, col, v = w
    return Residual(obj["ok"], (row, col, scalar_from_json(v)))


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":")) + "\n"


def write_json(path, obj):
    text = dumps(obj)
    if path in (None, "-"):
        import sys

        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def classify(obj) -> str:
    """Which of our types a parsed JSON object looks like."""
    if isinstance(obj, dict):
        if {"family", "triples"} <= set(obj):
            return "redata"
        if {"rep", "coeff_dim", "matrix"} <= set(obj):
            return "rematrix"
        if {"row_legs", "col_legs", "entries"} <= set(obj):
            return "mat"
        if {"reps", "r"} <= set(obj):
            return "family"
    raise ValueError("unrecognised JSON document")


def load_rematrix(obj, rep: str | None = None, default_rep: str = "f") -> tuple[REMatrix, REData | None]:
    """Accept an REMatrix, a bare Mat (coeff_dim 1) or an REData (pick ``rep``)."""
    kind = classify(obj)
    if kind == "rematrix":
        return rematrix_from_json(obj), None
    if kind == "mat":
        return REMatrix(default_rep, 1, mat_from_json(obj)), None
    if kind == "redata":
        data = redata_from_json(obj)
        if not data.triples:
            raise ValueError("REData has no triples")
        key = rep if rep is not None else list(data.triples)[-1]
        return data.K(key), data
    raise ShapeError(f"expected a K-matrix document, got {kind}")
