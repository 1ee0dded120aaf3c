"""Naive reference implementations used to cross-check the package.

Everything here works on nested Python lists of Fractions with explicit loops
over basis tuples, straight from the defining identities.  Nothing is shared
with the library's einsum-based checkers.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


def tolist(arr):
    return arr.tolist() if hasattr(arr, "tolist") else arr


def vec_add(*vs):
    return [sum(c) for c in zip(*vs)]


def vec_scale(c, v):
    return [c * x for x in v]


def unit(n, i):
    return [Fraction(int(k == i)) for k in range(n)]


# -- trilinear helpers -----------------------------------------------------------

def tri(t, x, y, z):
    """Evaluate a trilinear tensor t[i][j][k][r] on coordinate vectors."""
    n = len(x)
    out = [Fraction(0)] * len(t[0][0][0]) if n else []
    for i in range(n):
        if x[i] == 0:
            continue
        for j in range(len(y)):
            if y[j] == 0:
                continue
            for k in range(len(z)):
                if z[k] == 0:
                    continue
                c = x[i] * y[j] * z[k]
                row = t[i][j][k]
                out = [o + c * r for o, r in zip(out, row)]
    return out


def bil(c, x, y):
    out = [Fraction(0)] * len(c[0][0]) if len(x) else []
    for i in range(len(x)):
        for j in range(len(y)):
            if x[i] != 0 and y[j] != 0:
                out = [o + x[i] * y[j] * r for o, r in zip(out, c[i][j])]
    return out


# -- FKTS ----------------------------------------------------------------------

def fk_identities_hold(t, eps, delta) -> bool:
    """FK1 and FK2 evaluated on every basis 5-tuple (u, v, x, y, z)."""
    t = tolist(t)
    n = len(t)
    e = [unit(n, i) for i in range(n)]

    def L(a, b, z):
        return tri(t, a, b, z)

    def K(a, b, z):
        return vec_add(tri(t, a, z, b), vec_scale(-delta, tri(t, b, z, a)))

    for u, v, x, y, z in product(range(n), repeat=5):
        U, V, X, Y, Z = e[u], e[v], e[x], e[y], e[z]
        # [L(u,v), L(x,y)] z = L(L(u,v)x, y) z + eps L(x, L(v,u)y) z
        lhs = vec_add(L(U, V, L(X, Y, Z)), vec_scale(-1, L(X, Y, L(U, V, Z))))
        rhs = vec_add(L(L(U, V, X), Y, Z), vec_scale(eps, L(X, L(V, U, Y), Z)))
        if lhs != rhs:
            return False
        # K(K(u,v)x, y) z = L(y,x) K(u,v) z - eps K(u,v) L(x,y) z
        lhs = K(K(U, V, X), Y, Z)
        rhs = vec_add(L(Y, X, K(U, V, Z)), vec_scale(-eps, K(U, V, L(X, Y, Z))))
        if lhs != rhs:
            return False
    return True


def is_special_naive(t, eps, delta) -> bool:
    t = tolist(t)
    n = len(t)
    e = [unit(n, i) for i in range(n)]
    for x, y, z in product(range(n), repeat=3):
        X, Y, Z = e[x], e[y], e[z]
        k = vec_add(tri(t, X, Z, Y), vec_scale(-delta, tri(t, Y, Z, X)))
        rhs = vec_add(vec_scale(eps * delta, tri(t, Y, X, Z)), vec_scale(-eps, tri(t, X, Y, Z)))
        if k != rhs:
            return False
    return True


# -- J-ternary ------------------------------------------------------------------

def jt_axioms_naive(s) -> dict[str, bool]:
    """JT1..JT6 (sign +1) or -JT1..-JT6 (sign -1) on basis tuples."""
    p, act, ang, t = (tolist(x) for x in (s.J.product, s.action, s.angle, s.triple))
    m, n, sg = s.m, s.n, s.sign
    ej = [unit(m, i) for i in range(m)]
    et = [unit(n, i) for i in range(n)]

    def dot(a, b):
        return bil(p, a, b)

    def bullet(a, x):
        return bil(act, a, x)

    def angle(x, y):
        return bil(ang, x, y)

    def trip(x, y, z):
        return tri(t, x, y, z)

    out = {k: True for k in ("JT1", "JT2", "JT3", "JT4", "JT5", "JT6")}
    half = Fraction(1, 2)
    for a in ej:
        for x, y in product(et, repeat=2):
            lhs = dot(a, angle(x, y))
            rhs = vec_scale(half, vec_add(angle(bullet(a, x), y), angle(x, bullet(a, y))))
            out["JT1"] &= lhs == rhs
            for z in et:
                lhs = bullet(a, trip(x, y, z))
                rhs = vec_add(trip(bullet(a, x), y, z), vec_scale(-1, trip(x, bullet(a, y), z)), trip(x, y, bullet(a, z)))
                out["JT2"] &= lhs == rhs
    for x, y, z in product(et, repeat=3):
        # sign +1: <xyz> = <zyx> - <x|z>.y ; sign -1: <xyz> + <zyx> = <x|z>.y
        lhs = vec_add(trip(x, y, z), vec_scale(-sg, trip(z, y, x)))
        out["JT3"] &= lhs == vec_scale(-sg, bullet(angle(x, z), y))
        lhs = vec_add(trip(x, y, z), vec_scale(-sg, trip(y, x, z)))
        out["JT4"] &= lhs == bullet(angle(x, y), z)
        for w in et:
            lhs = vec_add(angle(trip(x, y, z), w), angle(z, trip(x, y, w)))
            out["JT5"] &= lhs == angle(x, bullet(angle(z, w), y))
            for v in et:
                lhs = trip(x, y, trip(z, w, v))
                rhs = vec_add(trip(trip(x, y, z), w, v), vec_scale(sg, trip(z, trip(y, x, w), v)), trip(z, w, trip(x, y, v)))
                out["JT6"] &= lhs == rhs
    return out


# -- dicyclic ---------------------------------------------------------------------

def d_axioms_naive(a) -> dict[str, bool]:
    """D1..D5 in their element form on all basis tuples."""
    B, s, t = (tolist(x) for x in (a.bar, a.star, a.triple))
    n = a.dim
    e = [unit(n, i) for i in range(n)]

    def bar(x):
        return [sum(B[r][c] * x[c] for c in range(n)) for r in range(n)]

    def st(x, y):
        return bil(s, x, y)

    def tr(x, y, z):
        return tri(t, x, y, z)

    zero = [Fraction(0)] * n
    out = {k: True for k in ("D1", "D2", "D3", "D4", "D5")}
    for x, y, z in product(e, repeat=3):
        out["D1"] &= vec_add(tr(x, z, y), vec_scale(-1, tr(y, z, x))) == st(st(bar(x), bar(y)), bar(z))
        for w in e:
            d3 = vec_add(tr(x, st(y, z), w), tr(y, st(z, x), w), tr(z, st(x, y), w))
            out["D3"] &= d3 == zero
            d4 = vec_add(tr(st(bar(x), bar(y)), z, w), tr(st(bar(y), bar(z)), x, w), tr(st(bar(z), bar(x)), y, w))
            out["D4"] &= d4 == zero
    for u, v, x, y in product(e, repeat=4):
        d2 = vec_add(tr(u, bar(v), st(x, y)), st(tr(v, u, x), y), st(x, tr(v, u, y)))
        out["D2"] &= d2 == zero
        for z in e:
            lhs = tr(u, v, tr(x, y, z))
            rhs = vec_add(tr(tr(u, v, x), y, z), vec_scale(-1, tr(x, tr(v, bar(u), y), z)), tr(x, y, tr(u, v, z)))
            out["D5"] &= lhs == rhs
    return out


# -- Lie -------------------------------------------------------------------------

def jacobi_naive(bracket, parity=None) -> bool:
    """(Super-)antisymmetry and (super-)Jacobi on all basis triples."""
    c = tolist(bracket)
    n = len(c)
    par = list(parity) if parity is not None else [0] * n
    e = [unit(n, i) for i in range(n)]

    def br(x, y):
        return bil(c, x, y)

    for i, j in product(range(n), repeat=2):
        sgn = -1 if par[i] * par[j] == 0 else 1
        if c[i][j] != [sgn * v for v in c[j][i]]:
            return False
    for i, j, k in product(range(n), repeat=3):
        sij = (-1) ** (par[i] * par[j])
        lhs = br(e[i], br(e[j], e[k]))
        rhs = vec_add(br(br(e[i], e[j]), e[k]), vec_scale(sij, br(e[j], br(e[i], e[k]))))
        if lhs != rhs:
            return False
    return True
