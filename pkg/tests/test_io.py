import json

import numpy as np
import pytest

from choikit import cones as C
from choikit import forms as F
from choikit import io
from choikit import maps as M
from choikit import sampling as S
from choikit.errors import DimensionMismatch


def _roundtrip(obj):
    return io.loads(io.dumps(obj))


def test_matrix_roundtrip_is_exact(rng):
    a = S.random_matrix(rng, 3, 4) * 1e-7 + np.pi
    back = io.matrix_from_json(_roundtrip(io.matrix_to_json(a)))
    assert np.array_equal(back, a)


def test_map_form_basis_roundtrip(rng):
    phi = S.random_map(rng, 2, 3)
    assert io.map_from_json(_roundtrip(io.map_to_json(phi))) == phi
    form = S.random_form(rng, 4)
    assert io.form_from_json(_roundtrip(io.form_to_json(form))) == form
    basis = S.random_basis(rng, 4)
    assert io.basis_from_json(_roundtrip(io.basis_to_json(basis))) == basis


def test_builtin_maps():
    assert io.map_from_json({"builtin": "id", "dim": 3}) == M.identity_map(3)
    assert io.map_from_json({"builtin": "transpose", "dim": 2}) == M.transpose_map(2)
    s = np.array([[1, 2j], [0, 1]])
    ad = io.map_from_json({"builtin": "ad", "s": io.matrix_to_json(s)})
    assert ad == M.ad_map(s)
    with pytest.raises(io.ParseError):
        io.map_from_json({"builtin": "nope"})


def test_json_layout():
    obj = io.matrix_to_json(np.array([[1 + 2j]]))
    assert obj == {"rows": 1, "cols": 1, "entries": [[1.0, 2.0]]}
    m = io.map_to_json(M.identity_map(1))
    assert set(m) == {"dimIn", "dimOut", "transfer"}


def test_parse_errors():
    with pytest.raises(io.ParseError):
        io.loads("{not json")
    with pytest.raises(io.ParseError):
        io.matrix_from_json({"rows": 2, "cols": 2, "entries": [[1, 0]]})
    with pytest.raises(io.ParseError):
        io.map_from_json({"dimIn": 2})
    with pytest.raises(DimensionMismatch):
        io.form_from_json({"dim": 3, "gram": io.matrix_to_json(np.eye(2))})
    with pytest.raises(DimensionMismatch):
        io.map_from_json({"dimIn": 2, "dimOut": 2, "transfer": io.matrix_to_json(np.eye(3))})


def test_verdict_report_fields():
    v = C.is_cp(M.transpose_map(2))
    rep = json.loads(io.dumps(io.verdict_to_json(v, seed=3, budget=64)))
    assert {"cone", "k", "status", "witness", "value", "seed", "budget"} <= set(rep)
    assert rep["status"] == "NonMember" and rep["seed"] == 3


def test_dumps_is_deterministic(rng):
    obj = {"b": np.float64(1.5), "a": [np.int64(2), np.bool_(True)], "c": 1 + 1j}
    assert io.dumps(obj) == io.dumps(dict(reversed(list(obj.items()))))
    assert json.loads(io.dumps(obj)) == {"a": [2, True], "b": 1.5, "c": [1.0, 1.0]}
