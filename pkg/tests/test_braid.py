import pytest
from hypothesis import given, settings, strategies as st

from qre import Mat, REMatrix, gl_R, verify_re
from qre.rekit import family_from_R
from qre.braid import braid_residuals, build_cylinder_rep, tau_relation
from qre.errors import ShapeError
from qre.tensor import embed, invert


def all_ok(rep):
    return all(r.ok for r in braid_residuals(rep))


def test_identity_two_strands(R2, K_identity):
    rep = build_cylinder_rep(R2, K_identity, 2)
    assert rep.tau == Mat.identity([2, 2, 1])
    assert all_ok(rep)


def test_diag_two_strands(R2, K_diag):
    assert tau_relation(build_cylinder_rep(R2, K_diag, 2)).ok


@pytest.mark.parametrize("name", ["I", "diag01", "Q"])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_corpus_relations(R2, corpus, name, n):
    rep = build_cylinder_rep(R2, corpus[name], n)
    assert len(rep.sigma) == n - 1
    assert all_ok(rep)


def test_q_solution_shape(R2, K_q):
    rep = build_cylinder_rep(R2, K_q, 3)
    assert rep.tau.shape == (16, 16)


def test_sigmas_invertible(R2, K_diag):
    rep = build_cylinder_rep(R2, K_diag, 3)
    for s in rep.sigma:
        assert s @ invert(s) == Mat.identity(s.row_legs)


def test_non_solution_fails_tau_relation(R2, K_bad):
    rep = build_cylinder_rep(R2, K_bad, 3)
    bad = [r for r in braid_residuals(rep) if not r.ok]
    assert [r.name for r in bad] == ["s2 t1 s2 t1 = t1 s2 t1 s2"]
    assert bad[0].witness is not None


def test_sigma_relations_gl3():
    K = REMatrix.scalar("f", Mat.diag([0, 0, 1]))
    assert all_ok(build_cylinder_rep(gl_R(3), K, 3))


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_tau_relation_iff_re(entries):
    fam_R = gl_R(2)
    K = REMatrix.scalar("f", Mat([entries[:2], entries[2:]]))
    rep = build_cylinder_rep(fam_R, K, 2)
    assert tau_relation(rep).ok == verify_re(family_from_R(fam_R), K).ok


def test_tau_relation_iff_re_corpus(fam2, R2, corpus, K_bad):
    for K in list(corpus.values()) + [K_bad]:
        assert tau_relation(build_cylinder_rep(R2, K, 3)).ok == verify_re(fam2, K).ok


def test_extra_tau_identity(R2, K_diag):
    t2 = Mat.identity([2, 2, 2, 1])
    rep = build_cylinder_rep(R2, K_diag, 3, [t2])
    assert all_ok(rep)
    assert any(r.name.startswith("s2^-1 t2 s2 t1") for r in braid_residuals(rep))


def test_extra_tau_mixed_relation_fails(R2, K_diag):
    # the swap solves the RE on its own but is not a second boundary line for diag(0,1)
    t2 = embed(Mat([[0, 1], [1, 0]]), [3, 4], (2, 2, 2, 1))
    bad = [r.name for r in braid_residuals(build_cylinder_rep(R2, K_diag, 3, [t2])) if not r.ok]
    assert bad == ["s2^-1 t2 s2 t1 = t1 s2^-1 t2 s2"]


def test_shape_errors(R2, K_identity):
    with pytest.raises(ShapeError):
        build_cylinder_rep(R2, K_identity, 1)
    with pytest.raises(ShapeError):
        build_cylinder_rep(R2, REMatrix.scalar("f", Mat.identity([3])), 2)
    with pytest.raises(ShapeError):
        build_cylinder_rep(R2, K_identity, 2, [Mat.identity([8])])
