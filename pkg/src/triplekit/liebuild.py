"""Lie (super)algebras built from triple systems, their sl2 decomposition
and the dicyclic symmetry they carry.

Three constructions are provided:

* :func:`build_g_JT` -- ``(sl(V) x J) + (V x T) + d`` from a J-ternary algebra;
* :func:`build_g_A` -- ``tau(A,A) + i1(A) + i2(A)`` from a dicyclic algebra;
* :func:`build_g_U` -- the 5-graded ``L + T`` from an (eps, delta) FKTS.

Each returns a :class:`LieAlgebraGA` whose Jacobi defect is checked by the
tests and by :meth:`LieAlgebraGA.verify`; nothing is assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .dicyclic import DicyclicTernary, check_d_axioms, check_dic3_relations, find_unit
from .errors import ConstructionError, PreconditionError, ScalarFieldError
from .fkts import FKTS, check_fk, is_special, k_span_with_unit
from .jternary import JTernarySystem, check_jt_axioms, check_theorem_jt, from_special_fkts
from .linalg import NotInSpanError, Subspace, as_vector, canonical, identity, kernel, rank, span_basis, zeros
from .report import Check, FAIL, PASS, Report, compare, predicate
from .scalars import OMEGA, OMEGA2, Cyc
from .tensors import BasedSpace, check_sl2_relations, commutator, einsum, jacobi_defect, sl2_bracket, sl2_frame

__all__ = [
    "BC1Decomposition",
    "Dic3Action",
    "LieAlgebraGA",
    "NotBC1GradedError",
    "attach_dic3_to_gJT",
    "attach_dic3_to_gU",
    "bc1_decompose",
    "build_g_A",
    "build_g_JT",
    "build_g_U",
    "embed_gU_in_gJT",
    "sl2_algebra",
    "sl2_dic3",
]

ONE = Fraction(1)


class NotBC1GradedError(ValueError):
    """ad H has eigenvalues outside {-2, ..., 2} (or is not diagonalizable)."""

    def __init__(self, message: str, vector: np.ndarray | None = None) -> None:
        super().__init__(message)
        self.vector = vector


@dataclass(frozen=True, eq=False)
class LieAlgebraGA:
    space: BasedSpace
    bracket: np.ndarray = field(repr=False)
    grades: tuple[str, ...] | None = None
    frame: tuple[np.ndarray, np.ndarray, np.ndarray] | None = field(default=None, repr=False)
    meta: dict[str, Any] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        n = self.space.dim
        if self.bracket.shape != (n, n, n):
            raise ValueError(f"bracket shape {self.bracket.shape} does not match dim {n}")
        if self.grades is not None and len(self.grades) != n:
            raise ValueError("one grade tag per basis vector is required")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def is_super(self) -> bool:
        return self.space.is_super

    def super_dim(self) -> tuple[int, int]:
        return self.space.super_dim()

    def br(self, x, y) -> np.ndarray:
        return einsum("i,j,ijk->k", as_vector(x), as_vector(y), self.bracket)

    def ad(self, x) -> np.ndarray:
        """Matrix of ``y -> [x, y]``."""
        return einsum("i,ijr->rj", as_vector(x), self.bracket)

    def jacobi_defect(self) -> list[tuple]:
        return jacobi_defect(self.bracket, self.space.parity, super=self.is_super)

    def graded_dims(self, order: Sequence[str]) -> tuple[int, ...]:
        if self.grades is None:
            raise ValueError("algebra carries no grade tags")
        return tuple(sum(1 for g in self.grades if g == o) for o in order)

    def verify(self) -> Report:
        rep = Report("Lie algebra")
        bad = self.jacobi_defect()
        label = "super-Jacobi" if self.is_super else "Jacobi"
        if bad:
            rep.add(Check(label, FAIL, witness=bad[0], detail=f"{len(bad)} failing tuples"))
        else:
            rep.add(Check(label, PASS))
        if self.frame is not None:
            rep.add(check_sl2_relations(self.bracket, *self.frame))
        return rep


@dataclass(frozen=True, eq=False)
class Dic3Action:
    theta: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)

    def verify(self, g: LieAlgebraGA, s3: bool = False) -> Report:
        rep = check_dic3_relations(g.bracket, self.theta, self.phi, g.space.parity)
        if s3:
            t2 = canonical(self.theta.dot(self.theta))
            rep.add(compare("theta^2 = 1", t2, identity(g.dim), 1))
        return rep

    def eigenspace_dims(self) -> tuple[int, int, int]:
        n = self.phi.shape[0]
        return tuple(
            len(kernel(canonical(self.phi - lam * identity(n)))) for lam in (ONE, OMEGA, OMEGA2)
        )


def _express(sub: Subspace, v, what: str) -> np.ndarray:
    try:
        return sub.express(v)
    except NotInSpanError as exc:
        raise ConstructionError(f"{what} left its expected span") from exc


# -- sl2 ------------------------------------------------------------------------

def sl2_algebra() -> LieAlgebraGA:
    e = identity(3)
    return LieAlgebraGA(BasedSpace(("H", "E", "F")), sl2_bracket(), frame=(e[0], e[1], e[2]))


def _sl2_conj(m: np.ndarray) -> np.ndarray:
    """Matrix of ``f -> m f m^-1`` on sl2 in the basis (H, E, F)."""
    fr = sl2_frame()
    inv = _inv2(m)
    out = zeros(3, 3)
    for j, f in enumerate(fr.basis):
        out[:, j] = fr.coords(canonical(m.dot(f).dot(inv)))
    return canonical(out)


def _inv2(m: np.ndarray) -> np.ndarray:
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    det = a * d - b * c
    out = zeros(2, 2)
    out[0, 0], out[0, 1], out[1, 0], out[1, 1] = d / det, -b / det, -c / det, a / det
    return canonical(out)


def theta_phi_matrices() -> tuple[np.ndarray, np.ndarray]:
    """The two generators of Dic3 inside SL(V) on the symplectic basis (u, v)."""
    theta = zeros(2, 2)
    theta[0, 1], theta[1, 0] = ONE, -ONE
    phi = zeros(2, 2)
    phi[0, 0], phi[1, 1] = OMEGA, OMEGA2
    return theta, phi


def sl2_dic3() -> Dic3Action:
    th, ph = theta_phi_matrices()
    return Dic3Action(_sl2_conj(th), _sl2_conj(ph))


# -- g(J, T) --------------------------------------------------------------------

def build_g_JT(s: JTernarySystem) -> LieAlgebraGA:
    """``(sl(V) x J) + (V x T) + d`` with ``d`` spanned by the D and d operators."""
    if not check_jt_axioms(s).passed:
        raise PreconditionError("build_g_JT requires a system passing its axioms")
    if not check_theorem_jt(s, invariance=False).passed:
        raise PreconditionError("build_g_JT requires the derivation suite to pass")
    m, n, N0 = s.m, s.n, s.N
    fr = sl2_frame()
    csl = sl2_bracket()
    tr = fr.trace_table()
    vbasis = (as_vector([1, 0]), as_vector([0, 1]))
    gam = np.empty((2, 2), dtype=object)
    form = zeros(2, 2)
    for w1 in range(2):
        for w2 in range(2):
            gam[w1, w2] = fr.coords(fr.gamma(vbasis[w1], vbasis[w2]))
            form[w1, w2] = fr.form(vbasis[w1], vbasis[w2])
    p, act, ang = s.J.product, s.action, s.angle

    gens = [s.D[a, b].reshape(-1) for a in range(m) for b in range(m)]
    gens += [s.d[x, y].reshape(-1) for x in range(n) for y in range(n)]
    dsub, chosen = Subspace.greedy(gens, N0 * N0)
    k = dsub.dim
    dmats = [v.reshape(N0, N0) for v in dsub.basis]
    Dc = np.empty((m, m), dtype=object)
    for a in range(m):
        for b in range(m):
            Dc[a, b] = _express(dsub, s.D[a, b].reshape(-1), "D operator")
    dc = np.empty((n, n), dtype=object)
    for x in range(n):
        for y in range(n):
            dc[x, y] = _express(dsub, s.d[x, y].reshape(-1), "d operator")

    N = 3 * m + 2 * n + k

    def isl(f, a):
        return f * m + a

    def iv(w, x):
        return 3 * m + w * n + x

    def idr(q):
        return 3 * m + 2 * n + q

    c = zeros(N, N, N)
    # [f x a, g x b] = [f,g] x a.b + 2 tr(fg) D_{a,b}
    for f in range(3):
        for g in range(3):
            for a in range(m):
                for b in range(m):
                    i, j = isl(f, a), isl(g, b)
                    for h in range(3):
                        if csl[f, g, h] != 0:
                            c[i, j, isl(h, 0):isl(h, 0) + m] += csl[f, g, h] * p[a, b]
                    if tr[f, g] != 0:
                        c[i, j, idr(0):] += 2 * tr[f, g] * Dc[a, b]
    # [f x a, w x x] = f(w) x a.x
    for f, fm in enumerate(fr.basis):
        for a in range(m):
            for w in range(2):
                fw = fm[:, w]
                for x in range(n):
                    i, j = isl(f, a), iv(w, x)
                    for w2 in range(2):
                        if fw[w2] != 0:
                            c[i, j, iv(w2, 0):iv(w2, 0) + n] += fw[w2] * act[a, x]
                    c[j, i] = -c[i, j]
    # [w1 x x, w2 x y] = gamma_{w1,w2} x <x|y> + (w1|w2) d_{x,y}
    for w1 in range(2):
        for w2 in range(2):
            for x in range(n):
                for y in range(n):
                    i, j = iv(w1, x), iv(w2, y)
                    for h in range(3):
                        if gam[w1, w2][h] != 0:
                            c[i, j, isl(h, 0):isl(h, 0) + m] += gam[w1, w2][h] * ang[x, y]
                    if form[w1, w2] != 0:
                        c[i, j, idr(0):] += form[w1, w2] * dc[x, y]
    # [phi, f x a] = f x phi(a), [phi, w x x] = w x phi(x), [phi, psi] = commutator
    dsq = Subspace.from_basis([d.reshape(-1) for d in dmats], N0 * N0) if k else None
    for q, dm in enumerate(dmats):
        i = idr(q)
        dJ, dT = dm[:m, :m], dm[m:, m:]
        for f in range(3):
            for a in range(m):
                j = isl(f, a)
                c[i, j, isl(f, 0):isl(f, 0) + m] = dJ[:, a]
                c[j, i] = -c[i, j]
        for w in range(2):
            for x in range(n):
                j = iv(w, x)
                c[i, j, iv(w, 0):iv(w, 0) + n] = dT[:, x]
                c[j, i] = -c[i, j]
        for r, dm2 in enumerate(dmats):
            c[i, idr(r), idr(0):] = _express(dsq, commutator(dm, dm2).reshape(-1), "derivation bracket")
    c = canonical(c)

    jl, tl = s.J.space.labels, s.T.labels
    labels = [f"{f}⊗{a}" for f in "HEF" for a in jl]
    labels += [f"{w}⊗{x}" for w in "uv" for x in tl]
    labels += [f"d[{q + 1}]" for q in range(k)]
    grades = ("slJ",) * (3 * m) + ("VT",) * (2 * n) + ("der",) * k
    parity = None
    if s.sign == -1:
        parity = (0,) * (3 * m) + (1,) * (2 * n) + (0,) * k
    unit = s.J.unit
    frame = []
    for f in range(3):
        v = zeros(N)
        v[isl(f, 0):isl(f, 0) + m] = unit
        frame.append(v)
    meta = {"kind": "gJT", "m": m, "n": n, "k": k, "sign": s.sign, "derivations": dmats,
            "derivation_generators": chosen}
    return LieAlgebraGA(BasedSpace(tuple(labels), parity), c, grades, tuple(frame), meta)


def attach_dic3_to_gJT(g: LieAlgebraGA) -> Dic3Action:
    """Conjugation on sl(V), the defining matrices on V and the identity on d."""
    if g.meta.get("kind") != "gJT":
        raise PreconditionError("attach_dic3_to_gJT expects an algebra from build_g_JT")
    m, n, k = g.meta["m"], g.meta["n"], g.meta["k"]
    th, ph = theta_phi_matrices()
    out = []
    for mat in (th, ph):
        conj = _sl2_conj(mat)
        A = zeros(g.dim, g.dim)
        A[: 3 * m, : 3 * m] = np.kron(conj, identity(m))
        A[3 * m: 3 * m + 2 * n, 3 * m: 3 * m + 2 * n] = np.kron(mat, identity(n))
        A[3 * m + 2 * n:, 3 * m + 2 * n:] = identity(k)
        out.append(canonical(A))
    return Dic3Action(*out)


def gjt_omega_basis(g: LieAlgebraGA) -> list[np.ndarray]:
    """``F x a_i`` then ``u x x_j``: the basis matching ``J (+) T``."""
    m, n = g.meta["m"], g.meta["n"]
    e = identity(g.dim)
    return [e[2 * m + a] for a in range(m)] + [e[3 * m + x] for x in range(n)]


# -- g(A) -----------------------------------------------------------------------

def build_g_A(a: DicyclicTernary, unit=None) -> tuple[LieAlgebraGA, Dic3Action]:
    """``tau(A,A) + i1(A) + i2(A)`` with its Dic3 action.

    The sl2 frame ``H = tau(e,e), E = -i2(e), F = i1(e)`` is attached when a
    unit element ``e`` is given or found among the ``A0`` basis vectors.
    """
    if not check_d_axioms(a).passed:
        raise PreconditionError("build_g_A requires a dicyclic algebra passing D1-D5")
    n = a.dim
    B, s, t, tau = a.bar, a.star, a.triple, a.tau
    gens = [(u, v) for u in range(n) for v in range(n)]
    tsub, chosen = Subspace.greedy([tau[u, v].reshape(-1) for u, v in gens], n * n)
    k = tsub.dim
    tmats = [tau[gens[i]] for i in chosen]
    tc = np.empty((n, n), dtype=object)
    for u, v in gens:
        tc[u, v] = _express(tsub, tau[u, v].reshape(-1), "tau operator")

    def tau_of(u_vec, v_vec) -> np.ndarray:
        return einsum("u,v,uvij->ij", u_vec, v_vec, tau)

    # the i2-action of tau(u,v) is x -> -{v, ubar, x}; install it on the chosen basis
    def rho2(u: int, v: int) -> np.ndarray:
        return canonical(-einsum("a,aij->ij", B[:, u], tau[v]))

    rho = [rho2(*gens[i]) for i in chosen]
    for u, v in gens:
        comb = zeros(n, n)
        for cf, r in zip(tc[u, v], rho):
            if cf != 0:
                comb = comb + cf * r
        if any(x != y for x, y in zip(canonical(comb).reshape(-1), rho2(u, v).reshape(-1))):
            raise ConstructionError("the i2 action of tau(A,A) is not well defined")

    N = k + 2 * n
    T0, I1, I2 = 0, k, k + n
    c = zeros(N, N, N)
    for i, mi in enumerate(tmats):
        for j, mj in enumerate(tmats):
            c[T0 + i, T0 + j, T0:I1] = _express(tsub, commutator(mi, mj).reshape(-1), "tau bracket")
        for x in range(n):
            c[T0 + i, I1 + x, I1:I2] = mi[:, x]
            c[I1 + x, T0 + i] = -c[T0 + i, I1 + x]
            c[T0 + i, I2 + x, I2:] = rho[i][:, x]
            c[I2 + x, T0 + i] = -c[T0 + i, I2 + x]
    sb = einsum("ijc,rc->ijr", s, B)  # overline(x*y)
    for x in range(n):
        for y in range(n):
            c[I1 + x, I1 + y, I2:] = s[x, y]
            c[I2 + x, I2 + y, I1:I2] = sb[x, y]
            c[I1 + x, I2 + y, T0:I1] = tc[x, y]
            c[I2 + y, I1 + x, T0:I1] = -tc[x, y]
    c = canonical(c)

    phi = identity(N)
    theta = zeros(N, N)
    for x in range(n):
        phi[I1 + x, I1 + x] = OMEGA
        phi[I2 + x, I2 + x] = OMEGA2
        theta[I2 + x, I1 + x] = ONE  # theta i1(x) = i2(x)
        theta[I1:I2, I2 + x] = B[:, x]  # theta i2(x) = i1(xbar)
    for col, gi in enumerate(chosen):
        u, v = gens[gi]
        # theta tau(u, v) = -tau(vbar, u)
        img = canonical(-einsum("a,aij->ij", B[:, v], tau[:, u]))
        theta[T0:I1, T0 + col] = _express(tsub, img.reshape(-1), "theta(tau)")

    labels = [f"tau[{i + 1}]" for i in range(k)]
    labels += [f"i1({x})" for x in a.space.labels] + [f"i2({x})" for x in a.space.labels]
    frame = None
    if unit is None and a.A0:
        unit = find_unit(a, a.A0)
    if unit is not None:
        e = as_vector(unit)
        H = zeros(N)
        H[T0:I1] = _express(tsub, tau_of(e, e).reshape(-1), "tau(e,e)")
        E = zeros(N)
        E[I2:] = -e
        F = zeros(N)
        F[I1:I2] = e
        frame = (canonical(H), canonical(E), canonical(F))
    meta = {"kind": "gA", "k": k, "n": n, "tau_generators": [gens[i] for i in chosen], "unit": unit}
    grades = ("tau",) * k + ("i1",) * n + ("i2",) * n
    g = LieAlgebraGA(BasedSpace(tuple(labels)), c, grades, frame, meta)
    return g, Dic3Action(canonical(theta), canonical(phi))


def check_tau_bracket_formula(a: DicyclicTernary) -> Check:
    """``[tau(u,v), tau(x,y)] = tau({u,v,x}, y) - tau(x, {v, ubar, y})`` as operators."""
    tau, t, B = a.tau, a.triple, a.bar
    lhs = einsum("uvab,xybc->uvxyac", tau, tau) - einsum("xyab,uvbc->uvxyac", tau, tau)
    rhs = einsum("uvxc,cyij->uvxyij", t, tau) - einsum("au,vayc,xcij->uvxyij", B, t, tau)
    return compare("tau bracket", lhs, rhs, 4)


def ga_omega_basis(g: LieAlgebraGA) -> list[np.ndarray]:
    k, n = g.meta["k"], g.meta["n"]
    e = identity(g.dim)
    return [e[k + x] for x in range(n)]


# -- g(U) -----------------------------------------------------------------------

GU_ORDER = ("(-2)", "(-1)", "(0)", "(1)", "(2)")


def _block(n: int, tl=None, tr=None, bl=None, br=None) -> np.ndarray:
    out = zeros(2 * n, 2 * n)
    for blk, (r, c) in ((tl, (0, 0)), (tr, (0, n)), (bl, (n, 0)), (br, (n, n))):
        if blk is not None:
            out[r:r + n, c:c + n] = blk
    return out


def lie_triple_matrix(u: FKTS, X1: np.ndarray, X2: np.ndarray) -> np.ndarray:
    """The operator ``[X1, X2]`` on ``T = U^2`` for column vectors ``X = (a; b)``."""
    n, eps, dlt = u.dim, u.epsilon, u.delta
    a1, b1, a2, b2 = X1[:n], X1[n:], X2[:n], X2[n:]
    L, K = u.L, u.K

    def op(fam, x, y):
        return einsum("i,j,ijab->ab", x, y, fam)

    return canonical(_block(
        n,
        op(L, a1, b2) - dlt * op(L, a2, b1),
        dlt * op(K, a1, a2),
        -eps * op(K, b1, b2),
        eps * op(L, b2, a1) - eps * dlt * op(L, b1, a2),
    ))


def build_g_U(u: FKTS) -> LieAlgebraGA:
    """The 5-graded algebra ``L + T`` attached to an (eps, delta) system."""
    if not check_fk(u).passed:
        raise PreconditionError("build_g_U requires a genuine FKTS")
    n, eps = u.dim, u.epsilon
    L = u.L
    # grade 0: diag(L(a,b), eps L(b,a)), kept with provenance
    pairs = [(i, j) for i in range(n) for j in range(n)]
    g0 = [_block(n, L[i, j], None, None, eps * L[j, i]).reshape(-1) for i, j in pairs]
    sub0, chosen0 = Subspace.greedy(g0, 4 * n * n)
    kflat = [u.K[i, j].reshape(-1) for i, j in pairs]
    kbasis = [b.reshape(n, n) for b in span_basis(kflat, n * n)[0]] if kflat else []
    p0, pk = sub0.dim, len(kbasis)
    lower = [_block(n, bl=M) for M in kbasis]
    upper = [_block(n, tr=M) for M in kbasis]
    mid = [v.reshape(2 * n, 2 * n) for v in sub0.basis]
    Lmats = lower + mid + upper
    Lsub = Subspace.from_basis([M.reshape(-1) for M in Lmats], 4 * n * n) if Lmats else Subspace(4 * n * n)
    nL = len(Lmats)
    # basis order: K-, T-, L0, T+, K+
    idx_Km = list(range(0, pk))
    idx_Tm = list(range(pk, pk + n))
    idx_L0 = list(range(pk + n, pk + n + p0))
    idx_Tp = list(range(pk + n + p0, pk + 2 * n + p0))
    idx_Kp = list(range(pk + 2 * n + p0, 2 * pk + 2 * n + p0))
    N = 2 * pk + 2 * n + p0
    Lpos = idx_Km + idx_L0 + idx_Kp  # positions of Lmats in the basis
    Tpos = idx_Tp + idx_Tm  # T vectors: (x_j; 0) then (0; x_j)
    e2n = identity(2 * n)
    Tvecs = [e2n[j] for j in range(2 * n)]

    c = zeros(N, N, N)

    def put_L(i, j, mat):
        coords = _express(Lsub, canonical(mat).reshape(-1), "L bracket")
        for q, cf in enumerate(coords):
            c[i, j, Lpos[q]] = cf

    def put_T(i, j, vec):
        for q in range(2 * n):
            c[i, j, Tpos[q]] = vec[q]

    for a, Ma in enumerate(Lmats):
        for b, Mb in enumerate(Lmats):
            put_L(Lpos[a], Lpos[b], commutator(Ma, Mb))
        for q, X in enumerate(Tvecs):
            MX = canonical(Ma.dot(X))
            put_T(Lpos[a], Tpos[q], MX)
            put_T(Tpos[q], Lpos[a], canonical(-MX))
    for q1, X1 in enumerate(Tvecs):
        for q2, X2 in enumerate(Tvecs):
            put_L(Tpos[q1], Tpos[q2], lie_triple_matrix(u, X1, X2))
    c = canonical(c)

    labels = [f"K-[{i + 1}]" for i in range(pk)] + [f"T-[{x}]" for x in u.space.labels]
    labels += [f"L0[{i + 1}]" for i in range(p0)] + [f"T+[{x}]" for x in u.space.labels]
    labels += [f"K+[{i + 1}]" for i in range(pk)]
    grades = ("(-2)",) * pk + ("(-1)",) * n + ("(0)",) * p0 + ("(1)",) * n + ("(2)",) * pk
    parity = None
    if u.delta == -1:
        parity = tuple(1 if gr in ("(-1)", "(1)") else 0 for gr in grades)
    meta = {
        "kind": "gU", "n": n, "pk": pk, "p0": p0, "epsilon": u.epsilon, "delta": u.delta,
        "L_matrices": Lmats, "L_positions": Lpos, "T_positions": Tpos,
        "L0_generators": [pairs[i] for i in chosen0], "K_basis": kbasis,
    }
    return LieAlgebraGA(BasedSpace(tuple(labels), parity), c, grades, None, meta)


def check_grade_compatibility(g: LieAlgebraGA) -> Check:
    """``[g(i), g(j)]`` lies in ``g(i+j)`` (zero when ``|i+j| > 2``)."""
    deg = [int(t.strip("()")) for t in g.grades]
    for i in range(g.dim):
        for j in range(g.dim):
            for r in range(g.dim):
                if g.bracket[i, j, r] != 0 and deg[r] != deg[i] + deg[j]:
                    return Check("grade compatibility", FAIL, witness=(i, j, r))
    return Check("grade compatibility", PASS)


def attach_dic3_to_gU(g: LieAlgebraGA, u: FKTS) -> Dic3Action:
    """``phi`` multiplies grade ``i`` by ``w**i``; ``theta(a; b) = (-eps b; delta a)``,
    acting on L by conjugation."""
    if g.meta.get("kind") != "gU":
        raise PreconditionError("attach_dic3_to_gU expects an algebra from build_g_U")
    n, eps, dlt = u.dim, u.epsilon, u.delta
    N = g.dim
    powers = {"(-2)": OMEGA, "(-1)": OMEGA2, "(0)": ONE, "(1)": OMEGA, "(2)": OMEGA2}
    phi = zeros(N, N)
    for i, gr in enumerate(g.grades):
        phi[i, i] = powers[gr]
    Th = _block(n, None, -eps * identity(n), dlt * identity(n), None)
    Th_inv = canonical(-eps * dlt * Th)
    Lmats, Lpos, Tpos = g.meta["L_matrices"], g.meta["L_positions"], g.meta["T_positions"]
    Lsub = Subspace.from_basis([M.reshape(-1) for M in Lmats], 4 * n * n) if Lmats else Subspace(4 * n * n)
    theta = zeros(N, N)
    for a, M in enumerate(Lmats):
        img = _express(Lsub, canonical(Th.dot(M).dot(Th_inv)).reshape(-1), "theta on L")
        for q, cf in enumerate(img):
            theta[Lpos[q], Lpos[a]] = cf
    for q in range(2 * n):
        col = Th[:, q]
        for r in range(2 * n):
            theta[Tpos[r], Tpos[q]] = col[r]
    return Dic3Action(canonical(theta), canonical(phi))


def gu_omega_basis(g: LieAlgebraGA) -> list[np.ndarray]:
    """Lower K-corners then ``(x_j; 0)``: the basis matching ``K(U,U) (+) U``."""
    e = identity(g.dim)
    pk, n = g.meta["pk"], g.meta["n"]
    Tp = [i for i, t in enumerate(g.grades) if t == "(1)"]
    return [e[i] for i in range(pk)] + [e[i] for i in Tp]


# -- g(U) -> g(J, U) --------------------------------------------------------------

@dataclass
class Embedding:
    matrix: np.ndarray
    source: LieAlgebraGA
    target: LieAlgebraGA
    report: Report

    @property
    def verified(self) -> bool:
        return self.report.passed

    @property
    def injective(self) -> bool:
        return rank(self.matrix) == self.source.dim

    @property
    def bijective(self) -> bool:
        return self.injective and self.source.dim == self.target.dim


def embed_gU_in_gJT(u: FKTS, scale: tuple = (ONE, Fraction(-1, 2))) -> Embedding:
    """The homomorphism ``g(U) -> g(J, U)`` for a special (eps, eps) system.

    The base map sends ``(a; b)`` to ``u x a + v x b``, the grade-0 generator
    ``diag(L(a,b), eps L(b,a))`` to ``-eps gamma_{u,v} x K(a,b) - S(a,b)`` and the
    K-corners to ``-gamma_{u,u} x K`` (upper) and ``gamma_{v,v} x K`` (lower).
    With both bracket tables taken literally that map is off by a factor -2 on
    ``[L, T]``; ``scale = (alpha, beta)`` rescales grade 1 by alpha, grade -1 by
    beta (hence grade 0 by alpha*beta, grade +-2 by alpha**2, beta**2), and any
    choice with ``alpha * beta = -1/2`` gives a homomorphism.  ``scale=(1, 1)``
    reproduces the unscaled map, which the report then shows failing.
    """
    if u.epsilon != u.delta or not is_special(u):
        raise PreconditionError("embed_gU_in_gJT requires a special system with eps = delta")
    n, eps = u.dim, u.epsilon
    gU = build_g_U(u)
    s = from_special_fkts(u)
    gJ = build_g_JT(s)
    m, k = gJ.meta["m"], gJ.meta["k"]
    N0 = m + n
    jsub, _ = k_span_with_unit(u)
    jmats = [b.reshape(n, n) for b in jsub.basis]
    dmats = gJ.meta["derivations"]
    dsub = Subspace.from_basis([d.reshape(-1) for d in dmats], N0 * N0) if k else Subspace(N0 * N0)

    def isl(f, a):
        return f * m + a

    def iv(w, x):
        return 3 * m + w * n + x

    def jcoords(M):
        return _express(jsub, canonical(M).reshape(-1), "element of J")

    def sl_tensor(f: int, M, scale) -> np.ndarray:
        v = zeros(gJ.dim)
        v[isl(f, 0):isl(f, 0) + m] = canonical(scale * jcoords(M))
        return v

    def minus_S(a: int, b: int) -> np.ndarray:
        """``-S(a,b)`` as an element of d (acting on J by commutators)."""
        S = u.S[a, b]
        op = zeros(N0, N0)
        for q, jm in enumerate(jmats):
            op[:m, q] = -jcoords(commutator(S, jm))
        op[m:, m:] = -S
        v = zeros(gJ.dim)
        if k:
            v[3 * m + 2 * n:] = _express(dsub, canonical(op).reshape(-1), "-S(a,b) in d")
        elif any(x != 0 for x in op.reshape(-1)):
            raise ConstructionError("-S(a,b) is nonzero but d = 0")
        return v

    def image_L0(a: int, b: int) -> np.ndarray:
        # -eps gamma_{u,v} x K(a,b) - S(a,b), with gamma_{u,v} = -H
        return canonical(sl_tensor(0, u.K[a, b], eps) + minus_S(a, b))

    pk = gU.meta["pk"]
    kbasis = gU.meta["K_basis"]
    Phi = zeros(gJ.dim, gU.dim)
    Tm = [i for i, t in enumerate(gU.grades) if t == "(-1)"]
    Tp = [i for i, t in enumerate(gU.grades) if t == "(1)"]
    L0 = [i for i, t in enumerate(gU.grades) if t == "(0)"]
    Km = [i for i, t in enumerate(gU.grades) if t == "(-2)"]
    Kp = [i for i, t in enumerate(gU.grades) if t == "(2)"]
    al, be = (Fraction(x) if not isinstance(x, Cyc) else x for x in scale)
    for x in range(n):
        Phi[iv(0, x), Tp[x]] = al
        Phi[iv(1, x), Tm[x]] = be
    for q, M in enumerate(kbasis):
        Phi[:, Kp[q]] = sl_tensor(1, M, -2 * al * al)  # -gamma_{u,u} x M
        Phi[:, Km[q]] = sl_tensor(2, M, -2 * be * be)  # gamma_{v,v} x M
    for col, (a, b) in zip(L0, gU.meta["L0_generators"]):
        Phi[:, col] = canonical(al * be * image_L0(a, b))
    Phi = canonical(Phi)

    rep = Report("g(U) -> g(J,U)")
    rep.add(predicate("injective", rank(Phi) == gU.dim, detail=f"rank {rank(Phi)} of {gU.dim}"))
    lhs = einsum("ijr,sr->ijs", gU.bracket, Phi)
    rhs = einsum("ai,bj,abs->ijs", Phi, Phi, gJ.bracket)
    rep.add(compare("homomorphism", lhs, rhs, 2))
    # the formula must be consistent on every generator, not only the chosen basis
    Lsub0 = Subspace.from_basis([gU.meta["L_matrices"][pk + i].reshape(-1) for i in range(len(L0))], 4 * n * n) \
        if L0 else None
    bad = None
    for a in range(n):
        for b in range(n):
            gen = _block(n, u.L[a, b], None, None, eps * u.L[b, a])
            if Lsub0 is None:
                coords = zeros(0)
                if any(x != 0 for x in gen.reshape(-1)):
                    raise ConstructionError("nonzero grade-0 generator outside the grade-0 span")
            else:
                coords = _express(Lsub0, gen.reshape(-1), "grade-0 generator")
            via_basis = zeros(gJ.dim)
            for cf, col in zip(coords, L0):
                if cf != 0:
                    via_basis = via_basis + cf * Phi[:, col]
            if any(x != y for x, y in zip(canonical(via_basis), canonical(al * be * image_L0(a, b)))):
                bad = (a, b)
                break
        if bad:
            break
    rep.add(Check("well defined on generators", FAIL if bad else PASS, witness=bad))
    rep.data["bijective"] = rank(Phi) == gU.dim == gJ.dim
    return Embedding(Phi, gU, gJ, rep)


# -- BC1 / sl2 isotypic decomposition ---------------------------------------------

@dataclass
class BC1Decomposition:
    m_adjoint: int
    m_natural: int
    m_trivial: int
    verified: bool
    eigen_dims: dict[int, int]
    report: Report

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.m_adjoint, self.m_natural, self.m_trivial)


def bc1_decompose(g: LieAlgebraGA) -> BC1Decomposition:
    """Isotypic multiplicities of g as an sl2-module via its frame (H, E, F)."""
    if g.frame is None:
        raise PreconditionError("bc1_decompose needs an sl2 frame (H, E, F)")
    for v in g.bracket.reshape(-1):
        if not isinstance(v, (int, Fraction, Cyc)):
            raise ScalarFieldError("bracket entries must be exact scalars in Q or Q(w)")
    H, E, F = g.frame
    adH, adE, adF = g.ad(H), g.ad(E), g.ad(F)
    N = g.dim
    spaces: dict[int, list[np.ndarray]] = {}
    total = Subspace(N)
    for lam in range(-2, 3):
        spaces[lam] = kernel(canonical(adH - lam * identity(N)))
        for v in spaces[lam]:
            total.add(v)
    if total.dim != N:
        e = identity(N)
        off = next(e[i] for i in range(N) if not total.contains(e[i]))
        raise NotBC1GradedError(
            f"ad H eigenspaces for -2..2 only span {total.dim} of {N} dimensions", off
        )
    dims = {lam: len(v) for lam, v in spaces.items()}
    stacked = np.concatenate([adH, adE, adF], axis=0)
    m_triv = len(kernel(stacked))
    m_adj, m_nat = dims[2], dims[1]

    rep = Report("BC1 decomposition")
    rep.add(check_sl2_relations(g.bracket, H, E, F))
    rep.add(predicate("dim V0 = adjoint + trivial", dims[0] == m_adj + m_triv,
                      detail=f"{dims[0]} vs {m_adj} + {m_triv}"))
    rep.add(predicate("dim V-2 = dim V2", dims[-2] == dims[2]))
    rep.add(predicate("dim V-1 = dim V1", dims[-1] == dims[1]))

    def rank_on(op, basis):
        if not basis:
            return 0
        cols = np.stack([canonical(op.dot(b)) for b in basis], axis=1)
        return rank(cols)

    # ladders: E raises weight by 2, F lowers it
    rep.add(predicate("E: V-1 -> V1 bijective", rank_on(adE, spaces[-1]) == dims[1] == dims[-1]))
    rep.add(predicate("F: V1 -> V-1 bijective", rank_on(adF, spaces[1]) == dims[-1] == dims[1]))
    rep.add(predicate("E: V-2 -> V0 injective", rank_on(adE, spaces[-2]) == dims[-2]))
    rep.add(predicate("F: V2 -> V0 injective", rank_on(adF, spaces[2]) == dims[2]))
    rep.add(predicate("E: V0 -> V2 onto", rank_on(adE, spaces[0]) == dims[2]))
    rep.add(predicate("F: V0 -> V-2 onto", rank_on(adF, spaces[0]) == dims[-2]))
    rep.add(predicate("E kills V2 and V1", rank_on(adE, spaces[2] + spaces[1]) == 0))
    rep.add(predicate("F kills V-2 and V-1", rank_on(adF, spaces[-2] + spaces[-1]) == 0))
    rep.data["eigen_dims"] = dims
    return BC1Decomposition(m_adj, m_nat, m_triv, rep.passed, dims, rep)
