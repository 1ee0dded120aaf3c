"""Dicyclic ternary algebras.

A :class:`DicyclicTernary` is a space ``A`` with an involution ``bar``, an
anticommutative product ``x*y`` and a triple product ``{x,y,z}``.  Tensors:

* ``bar`` is an ``(m, m)`` matrix, column ``i`` is the image of ``e_i``;
* ``star[i, j, r]`` is the ``r``-th coordinate of ``e_i * e_j``;
* ``triple[i, j, k, r]`` is the ``r``-th coordinate of ``{e_i, e_j, e_k}``.

``A0`` and ``A1`` are the +1 and -1 eigenspaces of ``bar``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import ConstructionError, PreconditionError, ScalarFieldError
from .fkts import FKTS, check_fk
from .jternary import JordanAlgebra, JTernarySystem, check_jt_axioms
from .linalg import NotInSpanError, Subspace, as_vector, canonical, identity, kernel, span_basis, zeros
from .report import Check, FAIL, PASS, VACUOUS, Report, compare, predicate
from .scalars import OMEGA, Cyc
from .tensors import BasedSpace, einsum

if TYPE_CHECKING:
    from .liebuild import LieAlgebraGA

__all__ = [
    "DicyclicTernary",
    "NotAutomorphismError",
    "GroupRelationError",
    "check_d_axioms",
    "check_unit",
    "check_unit_lemmas",
    "find_unit",
    "from_fkts_11",
    "from_jternary",
    "from_lie_with_dic3",
    "to_jternary",
    "unit_report",
]

HALF = Fraction(1, 2)


class NotAutomorphismError(PreconditionError):
    """A map that should be an automorphism of the Lie algebra is not."""


class GroupRelationError(PreconditionError):
    """theta and phi do not satisfy theta^4 = 1 = phi^3, phi theta phi = theta."""


@dataclass(frozen=True, eq=False)
class DicyclicTernary:
    space: BasedSpace
    bar: np.ndarray = field(repr=False)
    star: np.ndarray = field(repr=False)
    triple: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = self.space.dim
        for name, arr, shape in (
            ("bar", self.bar, (m, m)),
            ("star", self.star, (m, m, m)),
            ("triple", self.triple, (m, m, m, m)),
        ):
            if arr.shape != shape:
                raise ValueError(f"{name} has shape {arr.shape}, expected {shape}")

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def A0(self) -> list[np.ndarray]:
        return kernel(canonical(self.bar - identity(self.dim))) if self.dim else []

    @cached_property
    def A1(self) -> list[np.ndarray]:
        return kernel(canonical(self.bar + identity(self.dim))) if self.dim else []

    def conj(self, x) -> np.ndarray:
        return canonical(self.bar.dot(as_vector(x)))

    def mul(self, x, y) -> np.ndarray:
        return einsum("i,j,ijr->r", as_vector(x), as_vector(y), self.star)

    def tri(self, x, y, z) -> np.ndarray:
        return einsum("i,j,k,ijkr->r", as_vector(x), as_vector(y), as_vector(z), self.triple)

    @cached_property
    def tau(self) -> np.ndarray:
        """``tau[u, v]`` is the matrix of ``x -> {u, v, x}``."""
        return einsum("uvkr->uvrk", self.triple)


def check_structure(a: DicyclicTernary) -> Report:
    B, s, t, m = a.bar, a.star, a.triple, a.dim
    rep = Report("dicyclic structure")
    rep.add(compare("bar involution", canonical(B.dot(B)), identity(m), 1))
    rep.add(compare("star anticommutative", s, -s.transpose(1, 0, 2), 2))
    # overline(x*y) = xbar * ybar
    lhs = einsum("ijc,rc->ijr", s, B)
    rhs = einsum("ai,bj,abr->ijr", B, B, s)
    rep.add(compare("bar automorphism of star", lhs, rhs, 2))
    lhs = einsum("ijkc,rc->ijkr", t, B)
    rhs = einsum("ai,bj,ck,abcr->ijkr", B, B, B, t)
    rep.add(compare("bar automorphism of triple", lhs, rhs, 3))
    return rep


def check_d_axioms(a: DicyclicTernary) -> Report:
    """Structure invariants and D1-D5 on all basis tuples."""
    B, s, t = a.bar, a.star, a.triple
    rep = Report("dicyclic axioms")
    rep.extend(check_structure(a))
    q = einsum("ai,bj,abr->ijr", B, B, s)  # q[x, y] = xbar * ybar

    # D1: {x,z,y} - {y,z,x} = (xbar*ybar)*zbar, indexed (x, y, z)
    lhs = einsum("xzyr->xyzr", t) - einsum("yzxr->xyzr", t)
    rhs = einsum("xyc,dz,cdr->xyzr", q, B, s)
    rep.add(compare("D1", lhs, rhs, 3))

    # D2: {u, vbar, x*y} + {v,u,x}*y + x*{v,u,y} = 0
    d2 = (
        einsum("av,xyc,uacr->uvxyr", B, s, t)
        + einsum("vuxc,cyr->uvxyr", t, s)
        + einsum("vuyc,xcr->uvxyr", t, s)
    )
    rep.add(compare("D2", d2, zeros(*d2.shape), 4))

    # D3: tau(x, y*z) + tau(y, z*x) + tau(z, x*y) = 0
    tau = a.tau
    part = einsum("yzc,xcij->xyzij", s, tau)
    d3 = part + einsum("yzxij->xyzij", part) + einsum("zxyij->xyzij", part)
    rep.add(compare("D3", d3, zeros(*d3.shape), 3))

    # D4: tau(xbar*ybar, z) + tau(ybar*zbar, x) + tau(zbar*xbar, y) = 0
    part = einsum("xyc,czij->xyzij", q, tau)
    d4 = part + einsum("yzxij->xyzij", part) + einsum("zxyij->xyzij", part)
    rep.add(compare("D4", d4, zeros(*d4.shape), 3))

    # D5 in operator form: [tau(u,v), tau(x,y)] = tau({u,v,x}, y) - tau(x, {v,ubar,y})
    lhs = einsum("uvab,xybc->uvxyac", tau, tau) - einsum("xyab,uvbc->uvxyac", tau, tau)
    rhs = einsum("uvxc,cyij->uvxyij", t, tau) - einsum("au,vayc,xcij->uvxyij", B, t, tau)
    rep.add(compare("D5", lhs, rhs, 4))
    return rep


# -- extraction from a Lie algebra with Dic3 action --------------------------

def _require_exact(name: str, arr: np.ndarray) -> None:
    for v in np.asarray(arr, dtype=object).reshape(-1):
        if not isinstance(v, (int, Fraction, Cyc)):
            raise ScalarFieldError(f"{name} has a non-exact entry {v!r}; scalars must lie in Q(w)")


def _is_automorphism(bracket: np.ndarray, m: np.ndarray) -> bool:
    lhs = einsum("ijk,rk->ijr", bracket, m)
    rhs = einsum("ai,bj,abr->ijr", m, m, bracket)
    return compare("automorphism", lhs, rhs, 2).ok


def check_dic3_relations(bracket: np.ndarray, theta: np.ndarray, phi: np.ndarray, parity=None) -> Report:
    """Automorphism property and the defining relations of Dic3."""
    n = bracket.shape[0]
    rep = Report("Dic3 action")
    I = identity(n)
    rep.add(predicate("theta automorphism", _is_automorphism(bracket, theta)))
    rep.add(predicate("phi automorphism", _is_automorphism(bracket, phi)))
    t2 = canonical(theta.dot(theta))
    rep.add(compare("theta^4 = 1", canonical(t2.dot(t2)), I, 1))
    rep.add(compare("phi^3 = 1", canonical(phi.dot(phi).dot(phi)), I, 1))
    rep.add(compare("phi theta phi = theta", canonical(phi.dot(theta).dot(phi)), theta, 1))
    if parity is not None:
        ok = all(
            theta[i, j] == 0 and phi[i, j] == 0
            for i in range(n) for j in range(n) if parity[i] != parity[j]
        )
        rep.add(predicate("even maps", ok))
    return rep


def _omega_eigenspace(phi: np.ndarray) -> list[np.ndarray]:
    n = phi.shape[0]
    return kernel(canonical(phi - OMEGA * identity(n)))


def from_lie_with_dic3(
    g: LieAlgebraGA,
    theta: np.ndarray,
    phi: np.ndarray,
    basis: Sequence[np.ndarray] | None = None,
    labels: Sequence[str] | None = None,
) -> DicyclicTernary:
    """The dicyclic ternary algebra on the w-eigenspace of ``phi``.

    ``xbar = theta^2 x``, ``x*y = theta^3 [x,y]``, ``{x,y,z} = [[x, theta y], z]``.
    ``basis`` fixes the basis of the eigenspace (default: reduced echelon).
    """
    br = g.bracket
    for name, arr in (("bracket", br), ("theta", theta), ("phi", phi)):
        _require_exact(name, arr)
    theta, phi = canonical(np.asarray(theta, dtype=object)), canonical(np.asarray(phi, dtype=object))
    n = br.shape[0]
    if theta.shape != (n, n) or phi.shape != (n, n):
        raise ValueError("theta and phi must be square matrices of the algebra's dimension")
    if not _is_automorphism(br, theta):
        raise NotAutomorphismError("theta is not an automorphism of the bracket")
    if not _is_automorphism(br, phi):
        raise NotAutomorphismError("phi is not an automorphism of the bracket")
    rel = check_dic3_relations(br, theta, phi)
    if not rel.passed:
        bad = ", ".join(c.name for c in rel.failures())
        raise GroupRelationError(f"Dic3 relations fail: {bad}")

    eig = _omega_eigenspace(phi)
    if basis is None:
        vecs = eig
    else:
        vecs = [as_vector(b) for b in basis]
        full = Subspace(n)
        for v in eig:
            full.add(v)
        if len(vecs) != full.dim or any(not full.contains(v) for v in vecs):
            raise PreconditionError("supplied basis does not span the w-eigenspace of phi")
    sub = Subspace.from_basis(vecs, n) if vecs else Subspace(n)
    m = sub.dim

    def coords(v: np.ndarray) -> np.ndarray:
        try:
            return sub.express(v)
        except NotInSpanError as exc:
            raise ConstructionError("operation left the w-eigenspace") from exc

    theta2 = canonical(theta.dot(theta))
    theta3 = canonical(theta2.dot(theta))
    bar = zeros(m, m)
    for i, v in enumerate(vecs):
        bar[:, i] = coords(theta2.dot(v))
    V = np.empty((n, m), dtype=object)
    for i, v in enumerate(vecs):
        V[:, i] = v
    brv = einsum("ai,bj,abr->ijr", V, V, br) if m else zeros(0, 0, n)  # [v_i, v_j]
    star = zeros(m, m, m)
    for i in range(m):
        for j in range(m):
            star[i, j] = coords(theta3.dot(brv[i, j]))
    thv = canonical(theta.dot(V)) if m else zeros(n, 0)
    inner = einsum("ai,bj,abr->ijr", V, thv, br) if m else zeros(0, 0, n)  # [v_i, theta v_j]
    triple = zeros(m, m, m, m)
    for i in range(m):
        for j in range(m):
            w = einsum("a,bk,abr->kr", inner[i, j], V, br)
            for k in range(m):
                triple[i, j, k] = coords(w[k])
    if labels is None:
        labels = [f"a{i + 1}" for i in range(m)]
    return DicyclicTernary(BasedSpace(tuple(labels)), canonical(bar), canonical(star), canonical(triple))


# -- J-ternary algebras ------------------------------------------------------

def from_jternary(s: JTernarySystem) -> DicyclicTernary:
    """``A = J (+) T`` with the products attached to a J-ternary algebra."""
    if s.sign != 1:
        raise PreconditionError("from_jternary needs an ordinary (sign +1) J-ternary algebra")
    if not check_jt_axioms(s).passed:
        raise PreconditionError("from_jternary requires a system passing JT1-JT6")
    m, n = s.m, s.n
    N = m + n
    p, act, ang, t = s.J.product, s.action, s.angle, s.triple
    J, T = slice(0, m), slice(m, N)

    bar = identity(N)
    for i in range(m, N):
        bar[i, i] = Fraction(-1)

    star = zeros(N, N, N)
    star[J, T, T] = -act  # a*x = -a.x
    star[T, J, T] = act.transpose(1, 0, 2)  # x*a = a.x
    star[T, T, J] = -2 * ang  # x*y = -2<x|y>

    tri = zeros(N, N, N, N)
    # {a,b,c} = -2((a.b).c + a.(b.c) - (a.c).b)
    abc = (
        einsum("abs,scr->abcr", p, p)
        + einsum("bcs,asr->abcr", p, p)
        - einsum("acs,sbr->abcr", p, p)
    )
    tri[J, J, J, J] = -2 * abc
    tri[J, J, T, T] = einsum("axy,byr->abxr", act, act)  # {a,b,x} = b.(a.x)
    tri[T, T, J, J] = -2 * einsum("axz,zyr->xyar", act, ang)  # {x,y,a} = -2<a.x|y>
    tri[T, T, T, T] = 2 * t
    labels = tuple(s.J.space.labels) + tuple(s.T.labels)
    return DicyclicTernary(BasedSpace(labels), bar, canonical(star), canonical(tri))


def _in_A0(a: DicyclicTernary, e) -> bool:
    e = as_vector(e)
    return all(x == y for x, y in zip(a.conj(e), e))


def unit_report(a: DicyclicTernary, e) -> Report:
    """The unit conditions, plus the consequences listed alongside them."""
    e = as_vector(e)
    if len(e) != a.dim:
        raise ValueError("dimension mismatch")
    if not _in_A0(a, e):
        raise PreconditionError("the unit candidate must be fixed by bar")
    rep = Report("unit element")

    def check_all(name, vecs, f, g):
        for i, v in enumerate(vecs):
            lhs, rhs = f(v), g(v)
            if any(x != y for x, y in zip(lhs, rhs)):
                return rep.add(Check(name, FAIL, witness=(i,), lhs=lhs, rhs=rhs))
        return rep.add(Check(name, PASS if vecs else VACUOUS))

    A0, A1 = a.A0, a.A1
    check_all("{e,e,a} = -2a", A0, lambda v: a.tri(e, e, v), lambda v: canonical(-2 * v))
    check_all("{e,e,x} = x", A1, lambda v: a.tri(e, e, v), lambda v: v)
    check_all("{x,e,e} = 0", A1, lambda v: a.tri(v, e, e), lambda v: zeros(a.dim))
    # reported separately; not part of the defining conditions
    rep.data["extended"] = ext = Report("unit consequences")
    for name, vecs, f, g in (
        ("{a,e,e} = -2a", A0, lambda v: a.tri(v, e, e), lambda v: canonical(-2 * v)),
        ("e*a = 0", A0, lambda v: a.mul(e, v), lambda v: zeros(a.dim)),
        ("e*x = -x", A1, lambda v: a.mul(e, v), lambda v: canonical(-v)),
    ):
        bad = next((i for i, v in enumerate(vecs) if any(x != y for x, y in zip(f(v), g(v)))), None)
        ext.add(Check(name, PASS if bad is None else FAIL, witness=None if bad is None else (bad,)))
    return rep


def check_unit(a: DicyclicTernary, e) -> bool:
    return unit_report(a, e).passed


def find_unit(a: DicyclicTernary, candidates: Sequence) -> np.ndarray | None:
    """First candidate (in input order) passing :func:`check_unit`."""
    for c in candidates:
        c = as_vector(c)
        if len(c) != a.dim or not _in_A0(a, c):
            continue
        if check_unit(a, c):
            return c
    return None


def to_jternary(a: DicyclicTernary, e) -> JTernarySystem:
    """The J-ternary algebra ``(A0, A1)`` determined by a unit element ``e``."""
    if not check_d_axioms(a).passed:
        raise PreconditionError("to_jternary requires a dicyclic algebra passing D1-D5")
    if not check_unit(a, e):
        raise PreconditionError("e does not satisfy the unit conditions")
    e = as_vector(e)
    A0, A1 = a.A0, a.A1
    sub0 = Subspace.from_basis(A0, a.dim) if A0 else Subspace(a.dim)
    sub1 = Subspace.from_basis(A1, a.dim) if A1 else Subspace(a.dim)
    m, n = len(A0), len(A1)

    def c0(v):
        try:
            return sub0.express(v)
        except NotInSpanError as exc:
            raise ConstructionError("value expected in A0") from exc

    def c1(v):
        try:
            return sub1.express(v)
        except NotInSpanError as exc:
            raise ConstructionError("value expected in A1") from exc

    prod = zeros(m, m, m)
    for i, x in enumerate(A0):
        for j, y in enumerate(A0):
            prod[i, j] = c0(canonical(-HALF * a.tri(x, e, y)))
    action = zeros(m, n, n)
    for i, x in enumerate(A0):
        for j, y in enumerate(A1):
            action[i, j] = c1(a.tri(x, e, y))
    ex = [a.mul(e, y) for y in A1]
    angle = zeros(n, n, m)
    for i in range(n):
        for j in range(n):
            angle[i, j] = c0(canonical(-HALF * a.mul(ex[i], ex[j])))
    triple = zeros(n, n, n, n)
    for i, x in enumerate(A1):
        for j in range(n):
            for k, z in enumerate(A1):
                triple[i, j, k] = c1(canonical(-HALF * a.tri(x, ex[j], z)))

    def lab(v):
        nz = [i for i, c in enumerate(v) if c != 0]
        return a.space.labels[nz[0]] if len(nz) == 1 and v[nz[0]] == 1 else None

    l0 = [lab(v) or f"a{i + 1}" for i, v in enumerate(A0)]
    l1 = [lab(v) or f"x{i + 1}" for i, v in enumerate(A1)]
    J = JordanAlgebra(BasedSpace(tuple(l0)), canonical(prod), c0(e))
    s = JTernarySystem(J, BasedSpace(tuple(l1)), canonical(action), canonical(angle), canonical(triple), 1)
    if not check_jt_axioms(s).passed:
        raise ConstructionError("unit element produced a system failing JT1-JT6")
    return s


def check_unit_lemmas(a: DicyclicTernary, e) -> Report:
    """Consequences of a unit element: A0*A0 = 0, {A0,A1,A} = 0 = {A1,A0,A},
    (x*e)*e = x on A1 and {e,{e,a,e},e} = 4a on A0."""
    if not check_unit(a, e):
        raise PreconditionError("e does not satisfy the unit conditions")
    e = as_vector(e)
    A0, A1 = a.A0, a.A1
    basis = [a.space.basis_vector(i) for i in range(a.dim)]
    rep = Report("unit lemmas")
    zero = zeros(a.dim)

    def sweep(name, tuples, f, g):
        for idx, args in tuples:
            lhs, rhs = f(*args), g(*args)
            if any(x != y for x, y in zip(lhs, rhs)):
                return rep.add(Check(name, FAIL, witness=idx, lhs=lhs, rhs=rhs))
        return rep.add(Check(name, PASS))

    pairs00 = [((i, j), (x, y)) for i, x in enumerate(A0) for j, y in enumerate(A0)]
    sweep("A0*A0 = 0", pairs00, a.mul, lambda x, y: zero)
    t01 = [((i, j, k), (x, y, w)) for i, x in enumerate(A0) for j, y in enumerate(A1) for k, w in enumerate(basis)]
    sweep("{A0,A1,A} = 0", t01, a.tri, lambda *_: zero)
    t10 = [((i, j, k), (x, y, w)) for i, x in enumerate(A1) for j, y in enumerate(A0) for k, w in enumerate(basis)]
    sweep("{A1,A0,A} = 0", t10, a.tri, lambda *_: zero)
    sweep("(x*e)*e = x", [((i,), (x,)) for i, x in enumerate(A1)], lambda x: a.mul(a.mul(x, e), e), lambda x: x)
    sweep(
        "{e,{e,a,e},e} = 4a",
        [((i,), (x,)) for i, x in enumerate(A0)],
        lambda x: a.tri(e, a.tri(e, x, e), e),
        lambda x: canonical(4 * x),
    )
    return rep


# -- (1,1) Freudenthal-Kantor triple systems ----------------------------------

def from_fkts_11(u: FKTS) -> DicyclicTernary:
    """``A = K(U,U) (+) U`` attached to a (1,1) system (not necessarily special)."""
    if u.epsilon != 1 or u.delta != 1:
        raise PreconditionError("from_fkts_11 requires epsilon = delta = 1")
    if not check_fk(u).passed:
        raise PreconditionError("from_fkts_11 requires a genuine FKTS")
    n = u.dim
    mats = k_basis_matrices(u)
    sub = Subspace.from_basis([b.reshape(-1) for b in mats], n * n) if mats else Subspace(n * n)
    p = len(mats)
    N = p + n
    K, t = u.K, u.triple

    def cK(mat) -> np.ndarray:
        try:
            return sub.express(canonical(mat).reshape(-1))
        except NotInSpanError as exc:
            raise ConstructionError("value expected in K(U,U)") from exc

    M, X = slice(0, p), slice(p, N)
    bar = identity(N)
    for i in range(p, N):
        bar[i, i] = Fraction(-1)
    star = zeros(N, N, N)
    for i, mat in enumerate(mats):
        star[i, X, X] = mat.T  # M*x = Mx
        star[X, i, X] = -mat.T  # x*M = -Mx
    for x in range(n):
        for y in range(n):
            star[p + x, p + y, M] = -cK(K[x, y])  # x1*x2 = -K(x1,x2)
    tri = zeros(N, N, N, N)
    for i, m1 in enumerate(mats):
        for j, m2 in enumerate(mats):
            for k, m3 in enumerate(mats):
                tri[i, j, k, M] = -cK(m1.dot(m2).dot(m3) + m3.dot(m2).dot(m1))
            tri[i, j, X, X] = canonical(m2.dot(m1)).T  # {M1,M2,x} = M2 M1 x
    for k, mat in enumerate(mats):
        for x in range(n):
            for y in range(n):
                # {x1,x2,M} = K(M x1, x2)
                tri[p + x, p + y, k, M] = cK(einsum("c,cab->ab", mat[:, x], K[:, y]))
    tri[X, X, X, X] = t
    labels = tuple(f"M{i + 1}" for i in range(p)) + tuple(u.space.labels)
    return DicyclicTernary(BasedSpace(labels), bar, canonical(star), canonical(tri))


def k_basis_matrices(u: FKTS) -> list[np.ndarray]:
    """The reduced echelon basis of span K(U,U) used by :func:`from_fkts_11`."""
    n = u.dim
    flat = [u.K[i, j].reshape(-1) for i in range(n) for j in range(n)]
    basis, _ = span_basis(flat, n * n) if flat else ([], None)
    return [b.reshape(n, n) for b in basis]
