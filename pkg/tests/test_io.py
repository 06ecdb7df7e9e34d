import json

import pytest
from hypothesis import given, settings, strategies as st

from qre import LAMBDA, Q, Mat, REMatrix, Scalar, gl_family, uniform_data, fuse
from qre import io
from qre.rekit import Residual
from qre.ring import scalar_from_json, scalar_to_json

coef = st.fractions(min_value=-5, max_value=5, max_denominator=6)
terms = st.lists(st.tuples(coef, st.integers(-3, 3)), max_size=3)


@st.composite
def scalars(draw):
    num = draw(terms)
    den = draw(terms)
    s = Scalar.from_terms(num) if num else Scalar.const(0)
    d = Scalar.from_terms(den) if den else Scalar.const(1)
    return s if d.is_zero() else s / d


@st.composite
def mats(draw):
    r, c = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    return Mat([[draw(scalars()) for _ in range(c)] for _ in range(r)])


def test_scalar_json_shape():
    assert scalar_to_json(LAMBDA) == {"n": [["1", 1], ["-1", -1]]}
    s = 1 / (Q + 1)
    assert scalar_to_json(s) == {"n": [["1", 0]], "d": [["1", 1], ["1", 0]]}
    assert scalar_from_json(scalar_to_json(s)) == s


@settings(max_examples=60, deadline=None)
@given(scalars())
def test_scalar_roundtrip(s):
    obj = scalar_to_json(s)
    back = scalar_from_json(json.loads(io.dumps(obj)))
    assert back == s
    assert io.dumps(scalar_to_json(back)) == io.dumps(obj)


@settings(max_examples=40, deadline=None)
@given(mats())
def test_mat_roundtrip(m):
    text = io.dumps(io.mat_to_json(m))
    back = io.mat_from_json(json.loads(text))
    assert back == m and back.row_legs == m.row_legs
    assert io.dumps(io.mat_to_json(back)) == text


def test_redata_roundtrip(fam2, K_q):
    data = fuse(uniform_data(fam2, K_q), "f", "f")
    text = io.dumps(io.redata_to_json(data))
    back = io.redata_from_json(json.loads(text))
    assert io.dumps(io.redata_to_json(back)) == text
    assert back.K("f*f") == data.K("f*f")
    assert back.family.R("f*f", "f*f") == data.family.R("f*f", "f*f")


def test_residual_roundtrip():
    for r in (Residual(True), Residual(False, (2, 3, LAMBDA * Q))):
        back = io.residual_from_json(json.loads(io.dumps(io.residual_to_json(r))))
        assert back.ok == r.ok and back.witness == r.witness


def test_write_read(tmp_path):
    K = REMatrix.scalar("f", Mat.diag([0, Q]))
    p = tmp_path / "K.json"
    io.write_json(p, io.rematrix_to_json(K))
    assert io.rematrix_from_json(io.read_json(p)) == K


@pytest.mark.parametrize("bad", [
    [],
    {"row_legs": [2], "col_legs": [2]},
    {"row_legs": [2], "col_legs": [2], "entries": "x"},
    {"row_legs": [2], "col_legs": [2], "entries": [[{"n": [["1", 0]]}]]},
    {"row_legs": ["2"], "col_legs": [1], "entries": [[{"n": []}], [{"n": []}]]},
    {"row_legs": [1], "col_legs": [1], "entries": [[{"n": [["one", 0]]}]]},
    {"row_legs": [1], "col_legs": [1], "entries": [[{"n": [["1", 0]], "d": [["0", 0]]}]]},
])
def test_malformed_mat(bad):
    with pytest.raises((ValueError, TypeError, KeyError, ArithmeticError)):
        io.mat_from_json(bad)


def test_classify():
    fam = gl_family(2)
    assert io.classify(io.family_to_json(fam)) == "family"
    assert io.classify(io.mat_to_json(Mat.identity([2]))) == "mat"
    with pytest.raises(ValueError):
        io.classify({"foo": 1})


def test_load_rematrix_variants(fam2, K_diag):
    K, data = io.load_rematrix(io.mat_to_json(K_diag.k))
    assert K == K_diag and data is None
    obj = io.redata_to_json(uniform_data(fam2, K_diag))
    K, data = io.load_rematrix(obj)
    assert K == K_diag and data is not None
