"""JSON encoding of matrices, forms, bases, maps and cone reports.

Complex entries are ``[re, im]`` pairs of floats.  Python's float repr is
the shortest string that round-trips, so ``loads(dumps(x)) == x`` entrywise.
"""
import json

import numpy as np

from . import maps as M
from .errors import ChoikitError, DimensionMismatch
from .forms import BasisFamily, BilinearForm


class ParseError(ChoikitError, ValueError):
    """Malformed JSON input."""


def matrix_to_json(a):
    a = np.asarray(a, dtype=np.complex128)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    rows, cols = a.shape
    return {"rows": rows, "cols": cols,
            "entries": [[float(z.real), float(z.imag)] for z in a.reshape(-1)]}


def matrix_from_json(obj):
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
        if len(entries) != rows * cols or rows < 1 or cols < 1:
            raise ParseError(f"expected {rows}x{cols} entries, got {len(entries)}")
        data = np.array([complex(float(re), float(im)) for re, im in entries], dtype=np.complex128)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad matrix object: {exc}") from exc
    return data.reshape(rows, cols)


def form_to_json(form):
    return {"dim": form.dim, "gram": matrix_to_json(form.gram)}


def form_from_json(obj):
    try:
        gram = matrix_from_json(obj["gram"])
        dim = int(obj["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad form object: {exc}") from exc
    if gram.shape != (dim, dim):
        raise DimensionMismatch(f"form dim {dim} but gram has shape {gram.shape}")
    return BilinearForm(gram)


def basis_to_json(basis):
    return {"dim": basis.dim, "elements": matrix_to_json(basis.vectors)}


def basis_from_json(obj):
    try:
        vectors = matrix_from_json(obj["elements"])
        dim = int(obj["dim"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad basis object: {exc}") from exc
    if vectors.shape != (dim, dim):
        raise DimensionMismatch(f"basis dim {dim} but elements have shape {vectors.shape}")
    return BasisFamily(vectors)


def map_to_json(phi, metadata=None):
    out = {"dimIn": phi.dim_in, "dimOut": phi.dim_out, "transfer": matrix_to_json(phi.transfer)}
    if metadata:
        out["metadata"] = metadata
    return out


def map_from_json(obj):
    """A map object, or a builtin: ``{"builtin": "id"|"transpose", "dim": m}`` / ``{"builtin": "ad", "s": matrix}``."""
    if not isinstance(obj, dict):
        raise ParseError("map must be a JSON object")
    if "builtin" in obj:
        return builtin_map(obj["builtin"], obj)
    try:
        m, n = int(obj["dimIn"]), int(obj["dimOut"])
        t = matrix_from_json(obj["transfer"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad map object: {exc}") from exc
    if m < 1 or n < 1:
        raise ParseError("map dimensions must be positive")
    return M.LinearMapRep(m, n, t)


def builtin_map(name, obj=None):
    obj = obj or {}
    try:
        if name == "id":
            return M.identity_map(int(obj["dim"]))
        if name == "transpose":
            return M.transpose_map(int(obj["dim"]))
        if name == "ad":
            return M.ad_map(matrix_from_json(obj["s"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ChoikitError):
            raise
        raise ParseError(f"bad builtin map {name!r}: {exc}") from exc
    raise ParseError(f"unknown builtin map {name!r}")


def operator_to_json(op):
    return {"dimA": op.dim_a, "dimB": op.dim_b, **matrix_to_json(op.matrix)}


def verdict_to_json(verdict, seed=None, budget=None):
    witness = verdict.witness
    return {
        "cone": verdict.cone,
        "k": verdict.k,
        "status": verdict.status.value,
        "witness": None if witness is None else matrix_to_json(witness),
        "value": None if verdict.value is None else float(verdict.value),
        "detail": verdict.detail,
        "seed": seed,
        "budget": budget,
    }


def dumps(obj):
    """Deterministic JSON text (sorted keys, fixed separators, trailing newline)."""
    return json.dumps(_plain(obj), sort_keys=True, indent=1, allow_nan=True) + "\n"


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc


def load_file(path):
    try:
        with open(path) as fh:
            return loads(fh.read())
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc


def _plain(obj):
    """Recursively convert numpy scalars and arrays to JSON-native values."""
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return matrix_to_json(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj
