from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import jacobi_naive
from triplekit.linalg import as_matrix, zeros
from triplekit.scalars import OMEGA, Cyc
from triplekit.tensors import (
    check_sl2_relations, derivation_defect, einsum, jacobi_defect, sl2_bracket, sl2_frame,
)

small = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))


def _arr(shape, draw, elements):
    a = zeros(*shape)
    for idx in np.ndindex(*shape):
        a[idx] = draw(elements)
    return a


def _loop_contract(a, b):
    """out[i, k] = sum_j a[i, j] b[j, k], written out."""
    out = zeros(a.shape[0], b.shape[1])
    for i in range(a.shape[0]):
        for k in range(b.shape[1]):
            out[i, k] = sum((a[i, j] * b[j, k] for j in range(a.shape[1])), Fraction(0))
    return out


@given(st.data(), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_einsum_exact_matches_loops(data, n, m, p):
    a = _arr((n, m), data.draw, small)
    b = _arr((m, p), data.draw, small)
    got = einsum("ij,jk->ik", a, b)
    assert got.tolist() == _loop_contract(a, b).tolist()
    assert all(isinstance(v, Fraction) for v in got.reshape(-1))


def test_einsum_cyclotomic():
    a = as_matrix([[1, 0], [0, 1]]) * OMEGA
    out = einsum("ij,jk->ik", a, a)
    assert out[0, 0] == OMEGA * OMEGA and out[0, 1] == 0


def test_einsum_large_entries_stay_exact():
    big = Fraction(2**70, 3)
    a = as_matrix([[big, 1], [1, big]])
    out = einsum("ij,jk->ik", a, a)
    assert out[0, 0] == big * big + 1


def test_sl2_bracket_is_lie():
    c = sl2_bracket()
    assert jacobi_defect(c) == []
    assert jacobi_naive(c)
    fr = sl2_frame()
    e = [np.array(v, dtype=object) for v in ([1, 0, 0], [0, 1, 0], [0, 0, 1])]
    assert check_sl2_relations(c, *e).ok
    assert fr.trace_table().tolist() == [[2, 0, 0], [0, 0, 1], [0, 1, 0]]


def test_gamma_values():
    fr = sl2_frame()
    u, v = [1, 0], [0, 1]
    assert fr.form(u, v) == 1 and fr.form(v, u) == -1
    assert fr.gamma(u, u).tolist() == (2 * fr.E).tolist()
    assert fr.gamma(v, v).tolist() == (-2 * fr.F).tolist()
    assert fr.gamma(u, v).tolist() == (-fr.H).tolist()


def test_jacobi_defect_catches_broken_bracket():
    c = sl2_bracket().copy()
    c[1, 2, 0] = Fraction(2)  # [E,F] = 2H, so not antisymmetric and not Jacobi
    bad = jacobi_defect(c)
    assert (1, 2) in bad
    assert not jacobi_naive(c)
    c = sl2_bracket().copy()
    c[0, 1, 1], c[1, 0, 1] = Fraction(1), Fraction(-1)
    # [H,E] = E keeps antisymmetry but breaks Jacobi
    defect = jacobi_defect(c)
    assert defect and all(len(t) == 3 for t in defect)
    assert not jacobi_naive(c)


def test_super_jacobi_requires_parity():
    with pytest.raises(ValueError):
        jacobi_defect(sl2_bracket(), super=True)


def test_derivation_defect():
    c = sl2_bracket()
    # ad H is a derivation of sl2
    adH = zeros(3, 3)
    for j in range(3):
        adH[:, j] = c[0, j]
    assert derivation_defect(adH, c).ok
    assert not derivation_defect(as_matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]]), c).ok
