"""J-ternary algebras and their (-1) variants.

A :class:`JTernarySystem` bundles a unital Jordan algebra ``J``, a special
unital module ``T`` (action ``a.x``), the ``J``-valued form ``<x|y>`` and
the triple product ``<x,y,z>``.  ``sign = +1`` is the ordinary case (skew
form), ``sign = -1`` the super variant (symmetric form).

Operators on ``J (+) T`` use the combined basis: ``J`` first, then ``T``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Callable

import numpy as np

from .errors import ConstructionError, PreconditionError
from .fkts import FKTS, check_fk, is_special, k_span_with_unit
from .linalg import NotInSpanError, Subspace, as_vector, canonical, identity, zeros
from .report import Check, FAIL, PASS, Report, compare, predicate
from .tensors import BasedSpace, einsum

__all__ = [
    "JTernarySystem",
    "JordanAlgebra",
    "check_jt_axioms",
    "check_theorem_jt",
    "d_ops",
    "from_special_fkts",
    "jt_isomorphic_via_action",
    "to_fkts",
    "triple_from_graded",
]

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True, eq=False)
class JordanAlgebra:
    space: BasedSpace
    product: np.ndarray = field(repr=False)
    unit: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = self.space.dim
        if self.product.shape != (m, m, m):
            raise ValueError(f"Jordan product shape {self.product.shape} does not match dim {m}")
        object.__setattr__(self, "unit", as_vector(self.unit))
        if len(self.unit) != m:
            raise ValueError("unit has the wrong length")

    @property
    def dim(self) -> int:
        return self.space.dim

    def mul(self, a, b) -> np.ndarray:
        return einsum("i,j,ijk->k", as_vector(a), as_vector(b), self.product)

    def check(self) -> Report:
        p, m = self.product, self.dim
        rep = Report("Jordan algebra")
        rep.add(compare("commutative", p, p.transpose(1, 0, 2), 2))
        lhs = einsum("i,ijk->jk", self.unit, p)
        rep.add(compare("unit", lhs, identity(m).T, 1))
        # full linearization of (a.a).(b.a) = ((a.a).b).a in a
        x = einsum("ijs,bkt,str->ijkbr", p, p, p) - einsum("ijs,sbt,tkr->ijkbr", p, p, p)
        tot = zeros(*x.shape)
        for perm in permutations(range(3)):
            tot = tot + x.transpose(*perm, 3, 4)
        rep.add(compare("Jordan identity", canonical(tot), zeros(*x.shape), 4))
        return rep


@dataclass(frozen=True, eq=False)
class JTernarySystem:
    J: JordanAlgebra
    T: BasedSpace
    action: np.ndarray = field(repr=False)  # (m, n, n): a.x
    angle: np.ndarray = field(repr=False)  # (n, n, m): <x|y>
    triple: np.ndarray = field(repr=False)  # (n, n, n, n): <x,y,z>
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        m, n = self.J.dim, self.T.dim
        for name, arr, shape in (
            ("action", self.action, (m, n, n)),
            ("angle", self.angle, (n, n, m)),
            ("triple", self.triple, (n, n, n, n)),
        ):
            if arr.shape != shape:
                raise ValueError(f"{name} tensor has shape {arr.shape}, expected {shape}")

    @property
    def m(self) -> int:
        return self.J.dim

    @property
    def n(self) -> int:
        return self.T.dim

    @property
    def N(self) -> int:
        return self.m + self.n

    @cached_property
    def combined(self) -> BasedSpace:
        labels = tuple(f"J:{a}" for a in self.J.space.labels) + tuple(f"T:{x}" for x in self.T.labels)
        return BasedSpace(labels)

    @cached_property
    def diamond(self) -> np.ndarray:
        """``(a+x)<>(b+y) = (a.b + <x|y>) + (a.y + b.x)`` on ``J (+) T``."""
        m, N = self.m, self.N
        P = zeros(N, N, N)
        P[:m, :m, :m] = self.J.product
        P[m:, m:, :m] = self.angle
        P[:m, m:, m:] = self.action
        P[m:, :m, m:] = self.action.transpose(1, 0, 2)
        return P

    @cached_property
    def D(self) -> np.ndarray:
        """``D[a, b]`` is the matrix of ``D_{a,b}`` on ``J (+) T``."""
        m, N = self.m, self.N
        p, act = self.J.product, self.action
        out = zeros(m, m, N, N)
        jj = einsum("bcs,asr->abrc", p, p)
        out[:, :, :m, :m] = jj - jj.transpose(1, 0, 2, 3)
        tt = einsum("bxy,ayr->abrx", act, act)
        out[:, :, m:, m:] = canonical((tt - tt.transpose(1, 0, 2, 3)) * QUARTER)
        return out

    @cached_property
    def d(self) -> np.ndarray:
        """``d[x, y]`` is the matrix of ``d_{x,y}`` on ``J (+) T``."""
        m, n, N = self.m, self.n, self.N
        act, ang = self.action, self.angle
        out = zeros(n, n, N, N)
        out[:, :, :m, :m] = einsum("axz,zyr->xyra", act, ang) - einsum("ayz,xzr->xyra", act, ang)
        out[:, :, m:, m:] = einsum("xyc,czr->xyrz", ang, act) - 2 * einsum("xyzr->xyrz", self.triple)
        return out

    @cached_property
    def action_matrices(self) -> np.ndarray:
        """``lam[a]`` is the matrix of ``x -> a.x`` on ``T``."""
        return einsum("axy->ayx", self.action)


def d_ops(s: JTernarySystem, a, b, x, y) -> tuple[np.ndarray, np.ndarray]:
    a, b, x, y = (as_vector(v) for v in (a, b, x, y))
    if len(a) != s.m or len(b) != s.m or len(x) != s.n or len(y) != s.n:
        raise ValueError("dimension mismatch")
    D = einsum("a,b,abij->ij", a, b, s.D)
    d = einsum("x,y,xyij->ij", x, y, s.d)
    return D, d


def check_structure(s: JTernarySystem) -> Report:
    """Jordan algebra, special unital module and form symmetry."""
    rep = Report("J-ternary structure")
    rep.extend(s.J.check())
    act = s.action
    unit_act = einsum("a,axy->xy", s.J.unit, act)
    rep.add(compare("unit action", unit_act, identity(s.n), 1))
    # (a.b).x = (a.(b.x) + b.(a.x)) / 2
    lhs = einsum("abc,cxy->abxy", s.J.product, act)
    tmp = einsum("bxz,azy->abxy", act, act)
    rhs = canonical((tmp + tmp.transpose(1, 0, 2, 3)) * HALF)
    rep.add(compare("special module", lhs, rhs, 3))
    flip = -s.sign * s.angle.transpose(1, 0, 2)
    rep.add(compare("form skew" if s.sign == 1 else "form symmetric", s.angle, flip, 2))
    return rep


def check_jt_axioms(s: JTernarySystem) -> Report:
    """JT1-JT6 (sign +1) or -JT1..-JT6 (sign -1), exhaustively on basis tuples."""
    sg = s.sign
    pre = "JT" if sg == 1 else "-JT"
    act, ang, t, p = s.action, s.angle, s.triple, s.J.product
    rep = Report(f"{pre} axioms")
    rep.extend(check_structure(s))

    # 1: 2 a.<x|y> = <a.x|y> + <x|a.y>
    lhs = 2 * einsum("xyc,acr->axyr", ang, p)
    rhs = einsum("axz,zyr->axyr", act, ang) + einsum("ayz,xzr->axyr", act, ang)
    rep.add(compare(f"{pre}1", lhs, rhs, 3))

    # 2: a.<x,y,z> = <a.x,y,z> - <x,a.y,z> + <x,y,a.z>
    lhs = einsum("xyzl,alr->axyzr", t, act)
    rhs = (
        einsum("axw,wyzr->axyzr", act, t)
        - einsum("ayw,xwzr->axyzr", act, t)
        + einsum("azw,xywr->axyzr", act, t)
    )
    rep.add(compare(f"{pre}2", lhs, rhs, 4))

    # 3: <x,y,z> - sg <z,y,x> = -sg <x|z>.y
    lhs = t - sg * einsum("zyxr->xyzr", t)
    rhs = -sg * einsum("xzc,cyr->xyzr", ang, act)
    rep.add(compare(f"{pre}3", lhs, rhs, 3))

    # 4: <x,y,z> - sg <y,x,z> = <x|y>.z
    lhs = t - sg * einsum("yxzr->xyzr", t)
    rhs = einsum("xyc,czr->xyzr", ang, act)
    rep.add(compare(f"{pre}4", lhs, rhs, 3))

    # 5: <<x,y,z>|w> + <z|<x,y,w>> = <x | <z|w>.y>
    lhs = einsum("xyzl,lwr->xyzwr", t, ang) + einsum("xywl,zlr->xyzwr", t, ang)
    rhs = einsum("zwc,cyl,xlr->xyzwr", ang, act, ang)
    rep.add(compare(f"{pre}5", lhs, rhs, 4))

    # 6: <x,y,<z,w,v>> = <<x,y,z>,w,v> + sg <z,<y,x,w>,v> + <z,w,<x,y,v>>
    lhs = einsum("zwvl,xylr->xyzwvr", t, t)
    rhs = (
        einsum("xyzl,lwvr->xyzwvr", t, t)
        + sg * einsum("yxwl,zlvr->xyzwvr", t, t)
        + einsum("xyvl,zwlr->xyzwvr", t, t)
    )
    rep.add(compare(f"{pre}6", lhs, rhs, 5))
    return rep


def _family_derivation(name: str, fam: np.ndarray, P: np.ndarray) -> Check:
    """Every ``fam[p, q]`` is a derivation of the algebra ``P``."""
    lhs = einsum("pqrk,ijk->pqijr", fam, P)
    rhs = einsum("pqai,ajr->pqijr", fam, P) + einsum("pqbj,ibr->pqijr", fam, P)
    return compare(name, lhs, rhs, 4)


def _family_invariance(name: str, gens: list[np.ndarray], fam: np.ndarray, block: slice) -> Check:
    """``[g, F(u,v)] = F(g u, v) + F(u, g v)`` for each generator ``g``.

    ``block`` selects the subspace the family's arguments live in.
    """
    for gi, g in enumerate(gens):
        gb = g[block, block]
        lhs = einsum("ab,uvbc->uvac", g, fam) - einsum("uvab,bc->uvac", fam, g)
        rhs = einsum("mu,mvac->uvac", gb, fam) + einsum("mv,umac->uvac", gb, fam)
        chk = compare(name, lhs, rhs, 2)
        if not chk.ok:
            chk.witness = (gi,) + chk.witness
            return chk
    return Check(name, PASS)


def check_theorem_jt(s: JTernarySystem, invariance: bool = True, strict: bool = True) -> Report:
    """The derivation and compatibility identities satisfied by D and d.

    With ``strict=False`` the axiom precondition is skipped, which is useful
    for seeing which identity a corrupted system breaks.
    """
    if strict and not check_jt_axioms(s).passed:
        raise PreconditionError("check_theorem_jt requires a system passing its axioms")
    m, n, sg = s.m, s.n, s.sign
    D, d, P = s.D, s.d, s.diamond
    act, ang, p = s.action, s.angle, s.J.product
    tag = "" if sg == 1 else "super "
    rep = Report(f"{tag}derivation suite")
    rep.add(_family_derivation("D derivations", D, P))
    rep.add(_family_derivation("d derivations", d, P))

    # D_{a.b,c} + D_{b.c,a} + D_{c.a,b} = 0
    Dab_c = einsum("abs,scij->abcij", p, D)
    cyc = Dab_c + einsum("bcaij->abcij", Dab_c) + einsum("cabij->abcij", Dab_c)
    rep.add(compare(f"{tag}Ds", cyc, zeros(*cyc.shape), 3))

    # 4 D_{a,b}(x) = a.(b.x) - b.(a.x)
    lhs = 4 * einsum("abrx->abxr", D[:, :, m:, m:])
    rhs = einsum("bxy,ayr->abxr", act, act) - einsum("axy,byr->abxr", act, act)
    rep.add(compare(f"{tag}Dabx", lhs, rhs, 3))

    # 4 D_{a,<x|y>} = -d_{a.x,y} + d_{x,a.y}
    lhs = 4 * einsum("xyc,acij->axyij", ang, D)
    rhs = -einsum("axz,zyij->axyij", act, d) + einsum("ayz,xzij->axyij", act, d)
    rep.add(compare(f"{tag}Daxy", lhs, rhs, 3))

    # 2 a.<x|y> = <a.x|y> + <x|a.y>
    lhs = 2 * einsum("xyc,acr->axyr", ang, p)
    rhs = einsum("axz,zyr->axyr", act, ang) + einsum("ayz,xzr->axyr", act, ang)
    rep.add(compare(f"{tag}axy", lhs, rhs, 3))

    # d_{x,y}(a) = <a.x|y> - <x|a.y>
    lhs = einsum("xyra->xyar", d[:, :, :m, :m])
    rhs = einsum("axz,zyr->xyar", act, ang) - einsum("ayz,xzr->xyar", act, ang)
    rep.add(compare(f"{tag}dxya", lhs, rhs, 3))

    dT = einsum("xyrz->xyzr", d[:, :, m:, m:])  # dT[x,y,z] = d_{x,y}(z)
    angz = einsum("xyc,czr->xyzr", ang, act)  # <x|y>.z
    if sg == 1:
        # d_{x,y}(z) - d_{z,y}(x) = <x|y>.z - <z|y>.x + 2 <x|z>.y
        lhs = dT - einsum("zyxr->xyzr", dT)
        rhs = angz - einsum("zyxr->xyzr", angz) + 2 * einsum("xzyr->xyzr", angz)
        rep.add(compare("dxyzdzyx", lhs, rhs, 3))
        rep.add(compare("d symmetric", d, d.transpose(1, 0, 2, 3), 2))
    else:
        # d_{x,y}(z) - d_{y,z}(x) = <x|y>.z + <y|z>.x - 2 <z|x>.y
        lhs = dT - einsum("yzxr->xyzr", dT)
        rhs = angz + einsum("yzxr->xyzr", angz) - 2 * einsum("zxyr->xyzr", angz)
        rep.add(compare("superdxyzdzyx", lhs, rhs, 3))
        rep.add(compare("d skew", d, -d.transpose(1, 0, 2, 3), 2))
    rep.add(compare("D skew", D, -D.transpose(1, 0, 2, 3), 2))

    if invariance:
        gens = [D[a, b] for a in range(m) for b in range(m)] + [d[x, y] for x in range(n) for y in range(n)]
        rep.add(_family_invariance("D invariant", gens, D, slice(0, m)))
        rep.add(_family_invariance("d invariant", gens, d, slice(m, m + n)))
    return rep


def to_fkts(s: JTernarySystem) -> FKTS:
    """``T`` with ``xyz = <x,y,z>`` as a special ``(sign, sign)`` system."""
    if not check_jt_axioms(s).passed:
        raise PreconditionError("to_fkts requires a system passing its axioms")
    u = FKTS(s.T, s.sign, s.sign, s.triple.copy())
    if not check_fk(u).passed or not is_special(u):
        raise ConstructionError("J-ternary system did not yield a special FKTS")
    return u


def from_special_fkts(u: FKTS) -> JTernarySystem:
    """``J = F id + K(U,U)`` acting on ``T = U``."""
    if u.epsilon != u.delta:
        raise PreconditionError("from_special_fkts requires epsilon = delta")
    if not is_special(u):
        raise PreconditionError("from_special_fkts requires a special system")
    n = u.dim
    if n == 0:
        raise PreconditionError("from_special_fkts needs U != 0 (J would have no unit)")
    sub, origin = k_span_with_unit(u)
    mats = [b.reshape(n, n) for b in sub.basis]
    m = len(mats)
    prod = zeros(m, m, m)
    for i in range(m):
        for j in range(m):
            f = (mats[i].dot(mats[j]) + mats[j].dot(mats[i])) * HALF
            try:
                prod[i, j] = sub.express(f.reshape(-1))
            except NotInSpanError as exc:
                raise ConstructionError("F id + K(U,U) is not closed under the Jordan product") from exc
    labels = ["1"] + [f"K{i + 1}{j + 1}" for (i, j) in origin[1:]]
    unit = zeros(m)
    unit[0] = Fraction(1)
    J = JordanAlgebra(BasedSpace(tuple(labels)), canonical(prod), unit)
    action = zeros(m, n, n)
    for k, mat in enumerate(mats):
        action[k] = mat.T
    sgn = -1 if u.epsilon == 1 else 1
    angle = zeros(n, n, m)
    for x in range(n):
        for y in range(n):
            angle[x, y] = sgn * sub.express(u.K[x, y].reshape(-1))
    return JTernarySystem(J, u.space, canonical(action), canonical(angle), u.triple.copy(), u.epsilon)


def triple_from_graded(
    dxy: np.ndarray | Callable[[int, int], np.ndarray],
    angle: np.ndarray,
    action: np.ndarray,
) -> np.ndarray:
    """``<x,y,z> = (-d_{x,y}(z) + <x|y>.z) / 2``.

    ``dxy`` is either an array ``(n, n, n, n)`` with ``dxy[x, y]`` the matrix of
    ``d_{x,y}`` on ``T``, or a callable returning that matrix.
    """
    n = angle.shape[0]
    if angle.shape[:2] != (n, n) or action.shape[1:] != (n, n) or action.shape[0] != angle.shape[2]:
        raise ValueError("angle and action do not live on a common T")
    if callable(dxy):
        arr = zeros(n, n, n, n)
        for x in range(n):
            for y in range(n):
                arr[x, y] = dxy(x, y)
        dxy = arr
    if dxy.shape != (n, n, n, n):
        raise ValueError(f"d data has shape {dxy.shape}, expected {(n, n, n, n)}")
    dz = einsum("xyrz->xyzr", dxy)
    return canonical((-dz + einsum("xyc,czr->xyzr", angle, action)) * HALF)


def jt_isomorphic_via_action(s1: JTernarySystem, s2: JTernarySystem) -> Report:
    """Compare two systems on the same ``T`` through their action maps.

    ``a -> lambda_a`` identifies ``J1`` with ``J2`` when both act faithfully
    and the images coincide.  Every structure tensor is then compared exactly.
    """
    rep = Report("J-ternary comparison")
    if s1.n != s2.n:
        rep.add(Check("same T", FAIL, detail=f"dim T: {s1.n} vs {s2.n}"))
        return rep
    n = s1.n
    rep.add(predicate("same sign", s1.sign == s2.sign))
    rep.add(compare("triple", s1.triple, s2.triple, 3))
    img2 = Subspace(n * n)
    for mat in s2.action_matrices:
        if not img2.add(mat.reshape(-1)):
            rep.add(Check("faithful action", FAIL, detail="second system's action is not faithful"))
            return rep
    phi = zeros(s1.m, s2.m)
    for a, mat in enumerate(s1.action_matrices):
        try:
            phi[a] = img2.express(mat.reshape(-1))
        except NotInSpanError:
            rep.add(Check("action images agree", FAIL, witness=(a,)))
            return rep
    rep.add(predicate("J dims agree", s1.m == s2.m, detail=f"{s1.m} vs {s2.m}"))
    if s1.m != s2.m:
        return rep
    # phi[a] are coordinates of phi(e_a) in J2: a row-vector map
    rep.add(compare("unit", einsum("a,ab->b", s1.J.unit, phi)[None], s2.J.unit[None], 1))
    lhs = einsum("abc,cd->abd", s1.J.product, phi)
    rhs = einsum("ac,bd,cdr->abr", phi, phi, s2.J.product)
    rep.add(compare("Jordan product", lhs, rhs, 2))
    rep.add(compare("angle", einsum("xyc,cd->xyd", s1.angle, phi), s2.angle, 2))
    rep.add(compare("action", s1.action, einsum("ac,cxy->axy", phi, s2.action), 2))
    return rep
