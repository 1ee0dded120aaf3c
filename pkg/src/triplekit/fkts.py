"""(epsilon, delta) Freudenthal-Kantor triple systems.

An FKTS is a triple product ``xyz`` on ``U`` whose operators
``L(x,y)z = xyz`` and ``K(x,y)z = xzy - delta*yzx`` satisfy FK1 and FK2.
Values of :class:`FKTS` are candidates: nothing is trusted until
:func:`check_fk` passes.

All checks are exhaustive over basis tuples; multilinearity makes that
complete.  Operator families are kept as arrays ``op[i, j]`` holding the
matrix of ``op(e_i, e_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import PreconditionError
from .linalg import Subspace, as_vector, identity, solve, zeros
from .report import Check, PASS, FAIL, VACUOUS, Report, compare
from .tensors import BasedSpace, einsum

__all__ = [
    "FKTS",
    "K_op",
    "L_op",
    "check_fk",
    "check_k_identities",
    "check_prop_ss",
    "check_st_identities",
    "check_unital_special",
    "is_balanced",
    "is_special",
    "is_unitary",
    "st_ops",
]


@dataclass(frozen=True, eq=False)
class FKTS:
    space: BasedSpace
    epsilon: int
    delta: int
    triple: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        if self.epsilon not in (1, -1) or self.delta not in (1, -1):
            raise ValueError("epsilon and delta must be +1 or -1")
        n = self.space.dim
        if self.triple.shape != (n, n, n, n):
            raise ValueError(f"triple tensor shape {self.triple.shape} does not match dim {n}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def L(self) -> np.ndarray:
        """``L[i, j]`` is the matrix of ``L(e_i, e_j)``."""
        return einsum("ijkl->ijlk", self.triple)

    @cached_property
    def K(self) -> np.ndarray:
        """``K[i, j]`` is the matrix of ``K(e_i, e_j)``."""
        t = self.triple
        return einsum("ikjl->ijlk", t) - self.delta * einsum("jkil->ijlk", t)

    @cached_property
    def S(self) -> np.ndarray:
        return self.L + self.epsilon * self.L.transpose(1, 0, 2, 3)

    @cached_property
    def T(self) -> np.ndarray:
        return self.L.transpose(1, 0, 2, 3) - self.epsilon * self.L

    def product(self, x, y, z) -> np.ndarray:
        return einsum("i,j,k,ijkl->l", as_vector(x), as_vector(y), as_vector(z), self.triple)

    def with_signs(self, epsilon: int, delta: int) -> FKTS:
        return FKTS(self.space, epsilon, delta, self.triple)


class _Ops:
    """The operator families of ``u``, as int64 arrays when that is exact.

    Every identity checked below is a polynomial of degree at most three in the
    structure constants summed over at most ``n**3`` terms, so integer triples
    with ``64 * (max|t| + 1)**3 * n**3 < 2**62`` cannot overflow.
    """

    def __init__(self, u: FKTS) -> None:
        self.epsilon, self.delta = u.epsilon, u.delta
        t = u.triple
        flat = t.reshape(-1)
        n = u.dim
        small = n > 0 and all(type(v) in (int, Fraction) and v.denominator == 1 for v in flat)
        if small:
            bound = max(abs(int(v)) for v in flat) + 1
            small = 64 * bound**3 * n**3 < 2**62
        if not small:
            self.triple, self.L, self.K, self.S, self.T = u.triple, u.L, u.K, u.S, u.T
            return
        t = np.array([int(v) for v in flat], dtype=np.int64).reshape(t.shape)
        L = t.transpose(0, 1, 3, 2)
        K = np.einsum("ikjl->ijlk", t) - self.delta * np.einsum("jkil->ijlk", t)
        Lt = L.transpose(1, 0, 2, 3)
        self.triple, self.L, self.K = t, L, K
        self.S, self.T = L + self.epsilon * Lt, Lt - self.epsilon * L


def _pair_op(family: np.ndarray, x, y) -> np.ndarray:
    x, y = as_vector(x), as_vector(y)
    n = family.shape[0]
    if len(x) != n or len(y) != n:
        raise ValueError(f"dimension mismatch: expected vectors of length {n}")
    return einsum("i,j,ijab->ab", x, y, family)


def L_op(u: FKTS, x, y) -> np.ndarray:
    return _pair_op(u.L, x, y)


def K_op(u: FKTS, x, y) -> np.ndarray:
    return _pair_op(u.K, x, y)


def st_ops(u: FKTS, x, y) -> tuple[np.ndarray, np.ndarray]:
    """``S(x,y) = L(x,y) + eps L(y,x)`` and ``T(x,y) = L(y,x) - eps L(x,y)``."""
    return _pair_op(u.S, x, y), _pair_op(u.T, x, y)


# -- bulk operator algebra on 4-tuples (u, v, x, y) -------------------------

def _prod(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``out[u,v,x,y] = A[u,v] @ B[x,y]``."""
    return einsum("uvab,xybc->uvxyac", A, B)


def _prod_rev(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``out[u,v,x,y] = B[x,y] @ A[u,v]``."""
    return einsum("xyab,uvbc->uvxyac", B, A)


def _left_slot(A: np.ndarray, C: np.ndarray) -> np.ndarray:
    """``out[u,v,x,y] = C(A(u,v) x, y)``."""
    return einsum("uvmx,myac->uvxyac", A, C)


def _right_slot(A: np.ndarray, C: np.ndarray) -> np.ndarray:
    """``out[u,v,x,y] = C(x, A(u,v) y)``."""
    return einsum("uvmy,xmac->uvxyac", A, C)


def _bracket_rule(name: str, A, B, C, s1: int, s2: int) -> Check:
    """``[A(u,v), B(x,y)] = s1 C(A(u,v)x, y) + s2 C(x, A(u,v)y)``."""
    lhs = _prod(A, B) - _prod_rev(A, B)
    rhs = s1 * _left_slot(A, C) + s2 * _right_slot(A, C)
    return compare(name, lhs, rhs, 4)


def check_fk(u: FKTS) -> Report:
    o = _Ops(u)
    L, K, eps = o.L, o.K, o.epsilon
    rep = Report("fkts axioms")
    # FK1: [L(u,v), L(x,y)] = L(L(u,v)x, y) + eps L(x, L(v,u)y)
    lhs = _prod(L, L) - _prod_rev(L, L)
    rhs = _left_slot(L, L) + eps * _right_slot(L.transpose(1, 0, 2, 3), L)
    rep.add(compare("FK1", lhs, rhs, 4))
    # FK2: K(K(u,v)x, y) = L(y,x) K(u,v) - eps K(u,v) L(x,y)
    lhs = _left_slot(K, K)
    rhs = einsum("yxab,uvbc->uvxyac", L, K) - eps * _prod(K, L)
    rep.add(compare("FK2", lhs, rhs, 4))
    return rep


def _triple_rule(name: str, A: np.ndarray, t: np.ndarray, signs) -> Check:
    """``A(u,v)(xyz) = s1 (A x)yz + s2 x(A y)z + s3 xy(A z)`` on 5-tuples."""
    s1, s2, s3 = signs
    lhs = einsum("uvrl,xyzl->uvxyzr", A, t)
    rhs = (
        s1 * einsum("uvax,ayzr->uvxyzr", A, t)
        + s2 * einsum("uvby,xbzr->uvxyzr", A, t)
        + s3 * einsum("uvcz,xycr->uvxyzr", A, t)
    )
    return compare(name, lhs, rhs, 5)


def check_st_identities(u: FKTS) -> Report:
    """Derivation properties of S and T and the five bracket identities they imply."""
    o = _Ops(u)
    S, T, L, eps = o.S, o.T, o.L, o.epsilon
    rep = Report("S/T identities")
    rep.add(_triple_rule("S derivation", S, o.triple, (1, 1, 1)))
    rep.add(_triple_rule("T twisted derivation", T, o.triple, (1, -1, 1)))
    rep.add(_bracket_rule("[SL]", S, L, L, 1, 1))
    rep.add(_bracket_rule("[TL]", T, L, L, 1, -1))
    rep.add(_bracket_rule("[ST]", S, T, T, 1, 1))
    rep.add(_bracket_rule("[TS]", T, S, T, -eps, eps))
    rep.add(_bracket_rule("[TT]", T, T, S, -eps, eps))
    return rep


def special_check(u: FKTS) -> Check:
    """``K(x,y) = eps*delta L(y,x) - eps L(x,y)`` on all basis pairs."""
    eps, dlt = u.epsilon, u.delta
    rhs = eps * dlt * u.L.transpose(1, 0, 2, 3) - eps * u.L
    return compare("special", u.K, rhs, 2)


def is_special(u: FKTS) -> bool:
    return special_check(u).ok


def _k_system(u: FKTS) -> np.ndarray:
    """Columns are the flattened ``K(e_i, e_j)`` in (i, j) order."""
    n = u.dim
    return u.K.reshape(n * n, n * n).T


def is_unitary(u: FKTS) -> tuple[bool, np.ndarray | None]:
    """Solve ``id = sum c[i,j] K(e_i,e_j)``; return the witness ``c`` on success."""
    n = u.dim
    if n == 0:
        return True, zeros(0, 0)
    sol = solve(_k_system(u), identity(n).reshape(-1))
    if sol is None:
        return False, None
    return True, sol.reshape(n, n)


def is_balanced(u: FKTS) -> tuple[bool, np.ndarray | None]:
    """Whether every ``K(e_i,e_j)`` is ``b[i,j] * id``; returns the form ``b``."""
    n = u.dim
    b = zeros(n, n)
    for i in range(n):
        for j in range(n):
            k = u.K[i, j]
            c = k[0, 0]
            if any(k[a, a] != c for a in range(n)) or any(
                k[a, c2] != 0 for a in range(n) for c2 in range(n) if a != c2
            ):
                return False, None
            b[i, j] = c
    return True, b


def check_prop_ss(u: FKTS) -> Report:
    """The identities satisfied by special (eps, delta) systems."""
    if not is_special(u):
        raise PreconditionError("check_prop_ss requires a special triple system")
    o = _Ops(u)
    K, T, eps = o.K, o.T, o.epsilon
    rep = Report("special identities")
    if u.epsilon == u.delta:
        # K(u,v)K(x,y) + K(x,y)K(u,v) = K(K(u,v)x, y) + K(x, K(u,v)y)
        lhs = _prod(K, K) + _prod_rev(K, K)
        rhs = _left_slot(K, K) + _right_slot(K, K)
        rep.add(compare("KKs", lhs, rhs, 4))
    else:
        t = o.triple
        lhs = t + eps * einsum("xzyl->xyzl", t)
        rep.add(compare("eesymmetry", lhs, np.zeros_like(lhs), 3))
        rep.add(_triple_rule("K derivation", K, t, (1, 1, 1)))
        # K(u,v)T(x,y) + T(x,y)K(u,v) = K(K(u,v)x, y) - K(x, K(u,v)y)
        lhs = _prod(K, T) + _prod_rev(K, T)
        rhs = _left_slot(K, K) - _right_slot(K, K)
        rep.add(compare("KKT", lhs, rhs, 4))
    return rep


def check_k_identities(u: FKTS) -> Report:
    o = _Ops(u)
    L, K, eps, dlt = o.L, o.K, o.epsilon, o.delta
    rep = Report("K identities")
    # eps K(a,b)K(c,d) + L(K(a,b)c, d) - delta L(K(a,b)d, c) = 0
    lhs = eps * _prod(K, K) + _left_slot(K, L) - dlt * einsum("abmd,mcpq->abcdpq", K, L)
    rep.add(compare("KKLK.", lhs, np.zeros_like(lhs), 4))
    # K(c,d)K(a,b) + delta L(c, K(a,b)d) - L(d, K(a,b)c) = 0
    lhs = _prod_rev(K, K) + dlt * _right_slot(K, L) - einsum("abmc,dmpq->abcdpq", K, L)
    rep.add(compare("KKL.K", lhs, np.zeros_like(lhs), 4))
    return rep


def check_unital_special(u: FKTS) -> Report:
    """A nonzero unitary system has eps = delta and is special."""
    rep = Report("unitary implies special")
    unitary, witness = is_unitary(u)
    if u.dim == 0 or not unitary:
        rep.add(Check("unitary => eps = delta and special", VACUOUS, detail="not unitary" if u.dim else "U = 0"))
        return rep
    rep.data["witness"] = witness
    ok = u.epsilon == u.delta and is_special(u)
    rep.add(Check("unitary => eps = delta and special", PASS if ok else FAIL,
                  detail=None if ok else f"eps={u.epsilon}, delta={u.delta}, special={is_special(u)}"))
    return rep


def check_invariants(u: FKTS) -> Report:
    """Identities that hold for every (special) system by construction."""
    rep = Report("fkts invariants")
    rep.add(compare("K skew", u.K, -u.delta * u.K.transpose(1, 0, 2, 3), 2))
    if u.epsilon == u.delta and is_special(u):
        t, eps = u.triple, u.epsilon
        lam = t + eps * einsum("xzyl->xyzl", t)
        if eps == 1:
            rep.add(compare("Lambda symmetric (12)", lam, einsum("yxzl->xyzl", lam), 3))
            rep.add(compare("Lambda symmetric (23)", lam, einsum("xzyl->xyzl", lam), 3))
        else:
            rep.add(compare("Lambda alternating (12)", lam, -einsum("yxzl->xyzl", lam), 3))
            rep.add(compare("Lambda alternating (23)", lam, -einsum("xzyl->xyzl", lam), 3))
        rep.add(jordan_closure_check(u))
    return rep


def k_span_with_unit(u: FKTS) -> tuple[Subspace, list[tuple[int, int] | None]]:
    """Basis of ``F id + K(U,U)`` as flattened matrices, identity first.

    The second value records which ``K(e_i, e_j)`` each later basis vector is
    (``None`` for the identity).
    """
    n = u.dim
    sub = Subspace(n * n)
    origin: list[tuple[int, int] | None] = []
    if n:
        sub.add(identity(n).reshape(-1))
        origin.append(None)
    for i in range(n):
        for j in range(n):
            if sub.add(u.K[i, j].reshape(-1)):
                origin.append((i, j))
    return sub, origin


def jordan_closure_check(u: FKTS) -> Check:
    """``F id + K(U,U)`` is closed under ``(fg + gf)/2``."""
    n = u.dim
    sub, _ = k_span_with_unit(u)
    mats = [b.reshape(n, n) for b in sub.basis]
    for i, f in enumerate(mats):
        for j, g in enumerate(mats):
            prod = (f.dot(g) + g.dot(f)) * Fraction(1, 2)
            if not sub.contains(prod.reshape(-1)):
                return Check("Jordan closure of F1+K(U,U)", FAIL, witness=(i, j))
    return Check("Jordan closure of F1+K(U,U)", PASS)
