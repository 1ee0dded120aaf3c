from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import load
from oracles import jacobi_naive
from test_fkts import invertible, transport
from triplekit import dicyclic as dic, fixtures as fx, liebuild as lb
from triplekit.errors import PreconditionError
from triplekit.jternary import JordanAlgebra, JTernarySystem
from triplekit.linalg import as_matrix, as_vector, identity, zeros
from triplekit.tensors import BasedSpace


def idx(g, label):
    return g.space.labels.index(label)


def col(m, i):
    return m[:, i].tolist()


def unit_vec(n, i, c=1):
    v = [0] * n
    v[i] = c
    return v


# -- constructions -------------------------------------------------------------

def test_g_jt_sp2():
    g = lb.build_g_JT(load("FIX-SP2"))
    assert g.dim == 10 and not g.is_super
    assert g.verify().passed
    assert [g.grades.count(t) for t in ("slJ", "VT", "der")] == [3, 4, 3]
    assert jacobi_naive(g.bracket)


def test_g_jt_osp():
    g = lb.build_g_JT(load("FIX-OSP-JT"))
    assert g.super_dim() == (3, 2) and g.is_super
    assert g.verify().passed
    assert jacobi_naive(g.bracket, g.space.parity)


def test_g_jt_trivial_is_sl2():
    J = JordanAlgebra(BasedSpace(("1",)), zeros(1, 1, 1) + Fraction(1), as_vector([1]))
    s = JTernarySystem(J, BasedSpace(()), zeros(1, 0, 0), zeros(0, 0, 1), zeros(0, 0, 0, 0), 1)
    g = lb.build_g_JT(s)
    assert g.dim == 3
    assert g.bracket.tolist() == lb.sl2_algebra().bracket.tolist()


def test_g_a_dic_sp2():
    g, act = lb.build_g_A(load("FIX-DIC-SP2"))
    assert g.dim == 10 and g.grades.count("tau") == 4
    assert g.verify().passed and act.verify(g).passed
    assert jacobi_naive(g.bracket)
    assert lb.check_tau_bracket_formula(load("FIX-DIC-SP2")).ok
    # [i1(x1), i1(x2)] = i2(x1*x2) = i2(-2 * 1_J)
    out = g.br(unit_vec(10, idx(g, "i1(x1)")), unit_vec(10, idx(g, "i1(x2)")))
    assert out.tolist() == unit_vec(10, idx(g, "i2(1)"), -2)


def test_g_a_zero_algebra():
    n = 2
    a = dic.DicyclicTernary(BasedSpace.standard(n), identity(n), zeros(n, n, n), zeros(n, n, n, n))
    g, act = lb.build_g_A(a)
    assert g.dim == 2 * n and g.frame is None
    assert all(v == 0 for v in g.bracket.reshape(-1))


def test_g_a_precondition():
    a = load("FIX-DIC-SP2")
    t = a.triple.copy()
    t[1, 2, 1, 1] += 1
    with pytest.raises(PreconditionError):
        lb.build_g_A(dic.DicyclicTernary(a.space, a.bar, a.star, t))


@pytest.mark.parametrize(
    "name,dims,sdim",
    [
        ("FIX-FKTS-B", (1, 2, 4, 2, 1), (10, 0)),
        ("FIX-OSP", (1, 1, 1, 1, 1), (3, 2)),
        ("FIX-JTS", (0, 1, 1, 1, 0), (3, 0)),
        ("FIX-ZERO-2", (0, 2, 0, 2, 0), (4, 0)),
    ],
)
def test_g_u(name, dims, sdim):
    u = load(name)
    g = lb.build_g_U(u)
    assert g.graded_dims(lb.GU_ORDER) == dims
    assert g.super_dim() == sdim
    assert g.verify().passed
    assert lb.check_grade_compatibility(g).ok
    assert jacobi_naive(g.bracket, g.space.parity if g.is_super else None)


def test_g_u_osp_needs_parity():
    g = lb.build_g_U(load("FIX-OSP"))
    assert not jacobi_naive(g.bracket)  # only a Lie superalgebra


def test_g_u_zero_abelian():
    g = lb.build_g_U(fx.zero(2))
    assert all(v == 0 for v in g.bracket.reshape(-1))


def test_g_u_precondition():
    with pytest.raises(PreconditionError):
        lb.build_g_U(fx.fkts_b(-1, 1))


# -- Dic3 ------------------------------------------------------------------------

def test_dic3_on_g_jt():
    g = lb.build_g_JT(load("FIX-SP2"))
    act = lb.attach_dic3_to_gJT(g)
    assert act.verify(g).passed
    assert act.eigenspace_dims() == (4, 3, 3)
    th = act.theta
    t2 = th.dot(th)
    F, E = idx(g, "F⊗1"), idx(g, "E⊗1")
    assert col(th, F) == unit_vec(10, E, -1)
    assert col(t2, F) == unit_vec(10, F)
    for x in ("u⊗x1", "u⊗x2"):
        assert col(t2, idx(g, x)) == unit_vec(10, idx(g, x), -1)


def test_dic3_on_g_u_fkts_b():
    u = load("FIX-FKTS-B")
    g = lb.build_g_U(u)
    act = lb.attach_dic3_to_gU(g, u)
    assert act.verify(g).passed
    t2 = act.theta.dot(act.theta)
    grading = np.diag([Fraction(-1) if gr in ("(-1)", "(1)") else Fraction(1) for gr in g.grades])
    assert t2.tolist() == grading.tolist()
    assert t2.dot(t2).tolist() == identity(10).tolist() != t2.tolist()
    lo, hi = idx(g, "K-[1]"), idx(g, "K+[1]")
    assert col(act.theta, lo) == unit_vec(10, hi, -1)


def test_dic3_on_g_u_jts_is_s3():
    u = load("FIX-JTS")
    g = lb.build_g_U(u)
    act = lb.attach_dic3_to_gU(g, u)
    assert act.verify(g, s3=True).passed


def test_dic3_on_g_u_osp():
    u = load("FIX-OSP")
    g = lb.build_g_U(u)
    assert lb.attach_dic3_to_gU(g, u).verify(g).passed


def test_sl2_dic3():
    g = lb.sl2_algebra()
    act = lb.sl2_dic3()
    assert act.verify(g).passed
    assert act.eigenspace_dims() == (1, 1, 1)


# -- extraction consistency -----------------------------------------------------

@pytest.mark.parametrize("name", ["FIX-FKTS-B", "FIX-ZERO-2"])
def test_extraction_g_u(name):
    u = load(name)
    g = lb.build_g_U(u)
    act = lb.attach_dic3_to_gU(g, u)
    via = dic.from_lie_with_dic3(g, act.theta, act.phi, lb.gu_omega_basis(g))
    direct = dic.from_fkts_11(u)
    for k in ("bar", "star", "triple"):
        assert getattr(via, k).tolist() == getattr(direct, k).tolist(), k


def test_extraction_g_jt():
    s = load("FIX-SP2")
    g = lb.build_g_JT(s)
    act = lb.attach_dic3_to_gJT(g)
    via = dic.from_lie_with_dic3(g, act.theta, act.phi, lb.gjt_omega_basis(g))
    direct = dic.from_jternary(s)
    for k in ("bar", "star", "triple"):
        assert getattr(via, k).tolist() == getattr(direct, k).tolist(), k


def test_extraction_g_a_recovers_input():
    a = load("FIX-DIC-SP2")
    g, act = lb.build_g_A(a)
    via = dic.from_lie_with_dic3(g, act.theta, act.phi, lb.ga_omega_basis(g))
    for k in ("bar", "star", "triple"):
        assert getattr(via, k).tolist() == getattr(a, k).tolist(), k


# -- embedding -------------------------------------------------------------------

@pytest.mark.parametrize("name", ["FIX-FKTS-B", "FIX-OSP"])
def test_embedding_bijective(name):
    e = lb.embed_gU_in_gJT(load(name))
    assert e.verified and e.injective and e.bijective


def test_embedding_zero():
    e = lb.embed_gU_in_gJT(fx.zero(2))
    assert e.verified and e.injective and not e.bijective
    assert (e.source.dim, e.target.dim) == (4, 7)


@pytest.mark.parametrize("scale", [(Fraction(-1, 2), Fraction(1)), (Fraction(2), Fraction(-1, 4))])
def test_embedding_other_scales(scale):
    assert lb.embed_gU_in_gJT(load("FIX-FKTS-B"), scale=scale).verified


@pytest.mark.parametrize("name", ["FIX-FKTS-B", "FIX-OSP"])
def test_embedding_unscaled_map_is_not_a_homomorphism(name):
    e = lb.embed_gU_in_gJT(load(name), scale=(Fraction(1), Fraction(1)))
    bad = {c.name: c for c in e.report.checks}["homomorphism"]
    assert not bad.ok and bad.witness is not None
    assert e.injective


def test_embedding_precondition():
    with pytest.raises(PreconditionError):
        lb.embed_gU_in_gJT(fx.jts())


# -- BC1 -------------------------------------------------------------------------

def test_bc1_examples():
    assert lb.bc1_decompose(lb.build_g_JT(load("FIX-SP2"))).as_tuple() == (1, 2, 3)
    d = lb.bc1_decompose(lb.build_g_A(load("FIX-DIC-SP2"))[0])
    assert d.as_tuple() == (1, 2, 3) and d.verified
    d = lb.bc1_decompose(lb.sl2_algebra())
    assert d.as_tuple() == (1, 0, 0) and d.verified


def sl2_with_spin_three_halves() -> lb.LieAlgebraGA:
    """sl2 acting on its 4-dimensional irreducible module, as an abelian ideal."""
    n = 7
    c = zeros(n, n, n)
    c[:3, :3, :3] = lb.sl2_algebra().bracket
    H, E, F = 0, 1, 2
    for k in range(4):
        w = 3 + k
        c[H, w, w] = Fraction(3 - 2 * k)
        if k < 3:
            c[F, w, w + 1] = Fraction(1)
        if k > 0:
            c[E, w, w - 1] = Fraction(k * (4 - k))
    for i in range(3):
        for w in range(3, n):
            c[w, i] = -c[i, w]
    e = identity(n)
    return lb.LieAlgebraGA(BasedSpace.standard(n), c, frame=(e[0], e[1], e[2]))


def test_bc1_rejects_other_weights():
    g = sl2_with_spin_three_halves()
    assert g.verify().passed
    with pytest.raises(lb.NotBC1GradedError) as err:
        lb.bc1_decompose(g)
    assert err.value.vector is not None


def test_bc1_needs_frame():
    g = lb.build_g_U(fx.zero(2))
    with pytest.raises(PreconditionError):
        lb.bc1_decompose(lb.LieAlgebraGA(g.space, g.bracket))


# -- properties --------------------------------------------------------------------

@settings(max_examples=10)
@given(invertible)
def test_basis_change_preserves_g_u(m):
    P = as_matrix([[m[0], m[1]], [m[2], m[3]]])
    u = transport(fx.fkts_b(), P)
    g = lb.build_g_U(u)
    assert g.graded_dims(lb.GU_ORDER) == (1, 2, 4, 2, 1)
    assert not g.jacobi_defect()
    act = lb.attach_dic3_to_gU(g, u)
    assert act.verify(g).passed
    via = dic.from_lie_with_dic3(g, act.theta, act.phi, lb.gu_omega_basis(g))
    direct = dic.from_fkts_11(u)
    assert via.triple.tolist() == direct.triple.tolist()
    assert lb.embed_gU_in_gJT(u).verified
