from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import load
from oracles import fk_identities_hold, is_special_naive
from triplekit import fixtures as fx, io
from triplekit.errors import PreconditionError
from triplekit.fkts import (
    FKTS, K_op, L_op, check_fk, check_invariants, check_k_identities, check_prop_ss, check_st_identities,
    check_unital_special, is_balanced, is_special, is_unitary, st_ops,
)
from triplekit.linalg import as_matrix, identity, zeros
from triplekit.report import VACUOUS
from triplekit.tensors import einsum, triple_derivation_defect

X1, X2 = [1, 0], [0, 1]
SIGNS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def mat(m):
    return m.tolist()


def test_fixture_files_match_constructors():
    for name, ctor in fx.REGISTRY.items():
        assert io.same_tensors(load(name), ctor()), name


def test_L_examples():
    assert all(v == 0 for v in L_op(fx.zero(2), X1, X2).reshape(-1))
    b = fx.fkts_b()
    assert list(L_op(b, X1, X2).dot(np.array(X1, dtype=object))) == [1, 0]
    assert mat(L_op(fx.osp(), [1], [1])) == [[1]]


def test_K_examples():
    b = fx.fkts_b()
    assert mat(K_op(b, X1, X2)) == mat(-identity(2))
    assert mat(K_op(fx.osp(), [1], [1])) == [[2]]
    assert mat(K_op(fx.jts(), [1], [1])) == [[0]]


def test_L_dimension_mismatch():
    with pytest.raises(ValueError):
        L_op(fx.fkts_b(), [1], [1, 0])


@pytest.mark.parametrize("eps,delta", SIGNS)
def test_zero_is_fkts_for_all_signs(eps, delta):
    u = fx.zero(3, eps, delta)
    assert check_fk(u).passed
    assert check_st_identities(u).passed
    assert check_k_identities(u).passed
    assert is_special(u)


def test_check_fk_examples():
    assert check_fk(fx.fkts_b()).passed
    rep = check_fk(fx.fkts_b(-1, 1))
    fk1 = next(c for c in rep.checks if c.name == "FK1")
    assert not fk1.ok and fk1.witness is not None
    assert check_fk(fx.osp()).passed and check_fk(fx.jts()).passed


def test_check_fk_witness_is_a_real_counterexample():
    rep = check_fk(fx.fkts_b(-1, 1))
    bad = rep.failures()[0]
    assert bad.lhs is not None and any(a != b for a, b in zip(np.ravel(bad.lhs), np.ravel(bad.rhs)))


def test_st_examples():
    S, T = st_ops(fx.osp(), [1], [1])
    assert mat(S) == [[0]]
    b = fx.fkts_b()
    S, T = st_ops(b, X1, X2)
    assert triple_derivation_defect(S, b.triple).ok
    assert mat(T) == mat(K_op(b, X1, X2)) == mat(-identity(2))


@pytest.mark.parametrize("name", ["FIX-ZERO-2", "FIX-FKTS-B", "FIX-OSP", "FIX-JTS"])
def test_identity_suites(name):
    u = load(name)
    assert check_st_identities(u).passed
    assert check_k_identities(u).passed
    assert check_prop_ss(u).passed
    assert check_invariants(u).passed


def test_prop_ss_check_names():
    assert {c.name for c in check_prop_ss(fx.fkts_b()).checks} == {"KKs"}
    assert {c.name for c in check_prop_ss(fx.osp()).checks} == {"KKs"}
    assert {"eesymmetry", "KKT"} <= {c.name for c in check_prop_ss(fx.jts()).checks}


def test_prop_ss_precondition():
    t = zeros(1, 1, 1, 1)
    t[0, 0, 0, 0] = Fraction(1)
    u = FKTS(fx.osp().space, 1, -1, t)
    assert not is_special(u)
    with pytest.raises(PreconditionError):
        check_prop_ss(u)


def test_is_special_examples():
    assert is_special(fx.fkts_b()) and is_special(fx.osp()) and is_special(fx.zero(3))


def test_unitary_examples():
    ok, w = is_unitary(fx.osp())
    assert ok and w.tolist() == [[Fraction(1, 2)]]
    ok, w = is_unitary(fx.fkts_b())
    assert ok
    # any witness must reproduce the identity
    b = fx.fkts_b()
    assert mat(einsum("ij,ijab->ab", w, b.K)) == mat(identity(2))
    assert is_unitary(fx.zero(2)) == (False, None)


def test_balanced_examples():
    ok, form = is_balanced(fx.fkts_b())
    assert ok and form.tolist() == [[0, -1], [1, 0]]
    ok, form = is_balanced(fx.zero(2))
    assert ok and form.tolist() == [[0, 0], [0, 0]]
    ok, form = is_balanced(fx.osp())
    assert ok and form.tolist() == [[2]]


def test_unital_special():
    assert check_unital_special(fx.osp()).passed
    assert check_unital_special(fx.fkts_b()).passed
    rep = check_unital_special(fx.zero(2))
    assert rep.passed and rep.checks[0].status == VACUOUS


@pytest.mark.parametrize("name", ["FIX-FKTS-B", "FIX-OSP", "FIX-JTS", "FIX-ZERO-2"])
def test_naive_oracle_agrees(name):
    u = load(name)
    assert check_fk(u).passed == fk_identities_hold(u.triple, u.epsilon, u.delta)
    assert is_special(u) == is_special_naive(u.triple, u.epsilon, u.delta)


entries = st.sampled_from([Fraction(-1), Fraction(0), Fraction(0), Fraction(1)])


@given(st.lists(entries, min_size=16, max_size=16), st.sampled_from(SIGNS))
def test_random_candidates_agree_with_oracle(vals, signs):
    t = np.array(vals, dtype=object).reshape(2, 2, 2, 2)
    u = FKTS(fx.fkts_b().space, *signs, t)
    ok = check_fk(u).passed
    assert ok == fk_identities_hold(t, *signs)
    assert is_special(u) == is_special_naive(t, *signs)
    if ok:
        # theorems: these hold for every genuine system
        assert check_st_identities(u).passed
        assert check_k_identities(u).passed
        assert check_invariants(u).checks[0].ok


def transport(u: FKTS, P: np.ndarray) -> FKTS:
    """The triple ``P^-1 ((Px)(Py)(Pz))``, isomorphic to ``u``."""
    n = u.dim
    det = P[0, 0] * P[1, 1] - P[0, 1] * P[1, 0]
    Pinv = as_matrix([[P[1, 1] / det, -P[0, 1] / det], [-P[1, 0] / det, P[0, 0] / det]])
    t = einsum("ai,bj,ck,abcd,ld->ijkl", P, P, P, u.triple, Pinv)
    assert t.shape == (n,) * 4
    return FKTS(u.space, u.epsilon, u.delta, t)


invertible = st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0)


@given(invertible)
def test_transport_invariance(m):
    P = as_matrix([[m[0], m[1]], [m[2], m[3]]])
    u = transport(fx.fkts_b(), P)
    assert check_fk(u).passed
    assert is_special(u)
    assert is_unitary(u)[0]
    assert is_balanced(u)[0]
    assert check_prop_ss(u).passed


def test_S_is_derivation_for_fkts_b():
    b = fx.fkts_b()
    for i in range(2):
        for j in range(2):
            assert triple_derivation_defect(b.S[i, j], b.triple).ok
