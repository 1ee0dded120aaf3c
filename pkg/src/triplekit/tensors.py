"""Based spaces, dense structure tensors and the Lie / super-Lie kernels.

Conventions used throughout the package:

* a bilinear tensor ``c`` has shape ``(n1, n2, m)`` with
  ``e_i o e_j = sum_k c[i, j, k] f_k``;
* a trilinear tensor has shape ``(n1, n2, n3, m)``;
* a linear map is an ``(m, n)`` object matrix whose column ``j`` is the image
  of ``e_j``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .linalg import as_matrix, as_vector, canonical, zeros
from .report import Check, FAIL, PASS, compare

__all__ = [
    "BasedSpace",
    "Sl2Frame",
    "apply_bilinear",
    "apply_trilinear",
    "commutator",
    "derivation_defect",
    "einsum",
    "is_derivation",
    "jacobi_defect",
    "sl2_bracket",
    "sl2_frame",
]


_INT_LIMIT = 2**62


def _as_scaled_ints(arr):
    """``(ints, denom)`` with ``arr == ints / denom`` for rational arrays, else None."""
    flat = arr.reshape(-1)
    if not all(type(v) in (Fraction, int) for v in flat):
        return None
    denom = math.lcm(1, *(v.denominator for v in flat if type(v) is Fraction))
    ints = [int(v * denom) for v in flat]
    bound = max((abs(v) for v in ints), default=0)
    return np.array(ints, dtype=np.int64).reshape(arr.shape) if bound < _INT_LIMIT else None, denom, bound


def _int_einsum(spec: str, ops) -> np.ndarray | None:
    """Exact fast path: contract rational operands as int64 when no overflow is possible."""
    scaled = []
    for op in ops:
        if not isinstance(op, np.ndarray) or op.dtype != object or op.size == 0:
            return None
        r = _as_scaled_ints(op)
        if r is None or r[0] is None:
            return None
        scaled.append(r)
    # every output entry is a sum of at most prod(sizes) products of entries
    bound = math.prod(b for _, _, b in scaled) * math.prod(op.size for op in ops)
    if bound >= _INT_LIMIT:
        return None
    out = np.einsum(spec, *(a for a, _, _ in scaled), optimize=len(ops) > 2)
    denom = math.prod(d for _, d, _ in scaled)
    res = np.empty(out.shape, dtype=object)
    flat_in, flat_out = out.reshape(-1), res.reshape(-1)
    cache: dict[int, Fraction] = {}
    for i, v in enumerate(flat_in.tolist()):
        f = cache.get(v)
        if f is None:
            f = cache[v] = Fraction(v, denom)
        flat_out[i] = f
    return res


def einsum(spec: str, *ops) -> np.ndarray:
    fast = _int_einsum(spec, ops)
    if fast is not None:
        return fast
    out = np.einsum(spec, *ops, optimize=len(ops) > 2)
    if isinstance(out, np.ndarray) and out.dtype == object:
        return canonical(out)
    return out


@dataclass(frozen=True)
class BasedSpace:
    """A vector space with a named basis and optional Z2-grading (0 even, 1 odd)."""

    labels: tuple[str, ...]
    parity: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be unique")
        if self.parity is not None:
            par = tuple(int(p) for p in self.parity)
            if len(par) != len(self.labels) or any(p not in (0, 1) for p in par):
                raise ValueError("parity must list 0/1 for every basis vector")
            object.__setattr__(self, "parity", par)

    @classmethod
    def standard(cls, dim: int, prefix: str = "e", parity=None) -> BasedSpace:
        return cls(tuple(f"{prefix}{i + 1}" for i in range(dim)), parity)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @property
    def is_super(self) -> bool:
        return self.parity is not None

    def super_dim(self) -> tuple[int, int]:
        if self.parity is None:
            return (self.dim, 0)
        odd = sum(self.parity)
        return (self.dim - odd, odd)

    def basis_vector(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v


def apply_bilinear(t: np.ndarray, x, y) -> np.ndarray:
    x, y = as_vector(x), as_vector(y)
    if t.shape[0] != len(x) or t.shape[1] != len(y):
        raise ValueError(f"dimension mismatch: tensor {t.shape[:2]} vs ({len(x)}, {len(y)})")
    return einsum("i,j,ijk->k", x, y, t)


def apply_trilinear(t: np.ndarray, x, y, z) -> np.ndarray:
    x, y, z = as_vector(x), as_vector(y), as_vector(z)
    if t.shape[:3] != (len(x), len(y), len(z)):
        raise ValueError(f"dimension mismatch: tensor {t.shape[:3]} vs ({len(x)}, {len(y)}, {len(z)})")
    return einsum("i,j,k,ijkl->l", x, y, z, t)


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return canonical(a.dot(b) - b.dot(a))


def _parity_signs(parity: Sequence[int] | None, n: int) -> np.ndarray:
    """``s[i, j] = (-1)**(|e_i| |e_j|)`` as an object matrix."""
    s = zeros(n, n)
    for i in range(n):
        for j in range(n):
            odd = parity is not None and parity[i] == 1 and parity[j] == 1
            s[i, j] = Fraction(-1) if odd else Fraction(1)
    return s


def check_parity_respecting(bracket: np.ndarray, parity: Sequence[int]) -> None:
    n = bracket.shape[0]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if bracket[i, j, k] != 0 and parity[k] != (parity[i] + parity[j]) % 2:
                    raise ValueError(f"bracket does not respect parity at ({i}, {j}) -> {k}")


def jacobi_defect(bracket: np.ndarray, parity: Sequence[int] | None = None, super: bool = False) -> list[tuple]:
    """Basis tuples where (super-)anticommutativity or (super-)Jacobi fails.

    Anticommutativity failures are reported as index pairs ``(i, j)`` with
    ``i <= j``, Jacobi failures as triples ``(i, j, k)``.  The result is
    sorted; it is empty exactly when the bracket defines a Lie (super)algebra.
    """
    n = bracket.shape[0]
    if bracket.shape != (n, n, n):
        raise ValueError(f"bracket must be endomorphic, got shape {bracket.shape}")
    if super:
        if parity is None:
            raise ValueError("super Jacobi check requires a parity vector")
        check_parity_respecting(bracket, parity)
    else:
        parity = None
    s = _parity_signs(parity, n)
    out: list[tuple] = []
    for i in range(n):
        for j in range(i, n):
            lhs = bracket[i, j]
            rhs = -s[i, j] * bracket[j, i]
            if any(a != b for a, b in zip(lhs, rhs)):
                out.append((i, j))
    # [x,[y,z]] = [[x,y],z] + s(x,y) [y,[x,z]]
    inner = einsum("jkm,imr->ijkr", bracket, bracket)
    outer = einsum("ijm,mkr->ijkr", bracket, bracket)
    swapped = inner.transpose(1, 0, 2, 3)
    for i, j, k in np.ndindex(n, n, n):
        sij = s[i, j]
        a, b, c = inner[i, j, k], outer[i, j, k], swapped[i, j, k]
        if any(x != y + sij * z for x, y, z in zip(a, b, c)):
            out.append((i, j, k))
    return sorted(out)


def derivation_defect(m: np.ndarray, product: np.ndarray) -> Check:
    """Check ``m(x o y) = m(x) o y + x o m(y)`` on all basis pairs."""
    n = product.shape[0]
    if product.shape != (n, n, n) or m.shape != (n, n):
        raise ValueError(f"dimension mismatch: map {m.shape}, product {product.shape}")
    lhs = einsum("rk,ijk->ijr", m, product)
    rhs = einsum("ai,ajr->ijr", m, product) + einsum("bj,ibr->ijr", m, product)
    return compare("derivation", lhs, rhs, 2)


def is_derivation(m: np.ndarray, product: np.ndarray) -> bool:
    return derivation_defect(m, product).ok


def triple_derivation_defect(m: np.ndarray, triple: np.ndarray, signs=(1, 1, 1), name: str = "triple derivation") -> Check:
    """Check ``m(xyz) = s1 m(x)yz + s2 x m(y) z + s3 xy m(z)`` on basis triples."""
    s1, s2, s3 = (Fraction(s) for s in signs)
    lhs = einsum("rl,ijkl->ijkr", m, triple)
    rhs = (
        s1 * einsum("ai,ajkr->ijkr", m, triple)
        + s2 * einsum("bj,ibkr->ijkr", m, triple)
        + s3 * einsum("ck,ijcr->ijkr", m, triple)
    )
    return compare(name, lhs, rhs, 3)


@dataclass(frozen=True)
class Sl2Frame:
    """The standard basis {H, E, F} of sl(V) on a symplectic basis {u, v}."""

    H: np.ndarray
    E: np.ndarray
    F: np.ndarray
    sympl: np.ndarray

    @property
    def basis(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.H, self.E, self.F)

    def form(self, w1, w2):
        return as_vector(w1).dot(self.sympl).dot(as_vector(w2))

    def gamma(self, w1, w2) -> np.ndarray:
        """``gamma_{w1,w2} = (w1|.) w2 + (w2|.) w1`` as a 2x2 matrix."""
        w1, w2 = as_vector(w1), as_vector(w2)
        out = zeros(2, 2)
        for k in range(2):
            ek = zeros(2)
            ek[k] = Fraction(1)
            out[:, k] = self.form(w1, ek) * w2 + self.form(w2, ek) * w1
        return canonical(out)

    def trace_table(self) -> np.ndarray:
        out = zeros(3, 3)
        for i, f in enumerate(self.basis):
            for j, g in enumerate(self.basis):
                out[i, j] = f.dot(g).trace()
        return canonical(out)

    @staticmethod
    def coords(m: np.ndarray) -> np.ndarray:
        """Coordinates of a traceless 2x2 matrix in the basis (H, E, F)."""
        if m[0, 0] + m[1, 1] != 0:
            raise ValueError("matrix is not traceless")
        return as_vector([m[0, 0], m[0, 1], m[1, 0]])


def sl2_frame() -> Sl2Frame:
    H = as_matrix([[1, 0], [0, -1]])
    E = as_matrix([[0, 1], [0, 0]])
    F = as_matrix([[0, 0], [1, 0]])
    sympl = as_matrix([[0, 1], [-1, 0]])
    return Sl2Frame(H, E, F, sympl)


def sl2_bracket() -> np.ndarray:
    """Structure constants of sl2 in the basis (H, E, F)."""
    fr = sl2_frame()
    c = zeros(3, 3, 3)
    for i, f in enumerate(fr.basis):
        for j, g in enumerate(fr.basis):
            c[i, j] = fr.coords(commutator(f, g))
    return c


def check_sl2_relations(bracket: np.ndarray, H, E, F) -> Check:
    """``[H,E] = 2E``, ``[H,F] = -2F``, ``[E,F] = H`` for elements of an algebra."""
    H, E, F = as_vector(H), as_vector(E), as_vector(F)
    he = apply_bilinear(bracket, H, E)
    hf = apply_bilinear(bracket, H, F)
    ef = apply_bilinear(bracket, E, F)
    lhs = np.empty(3, dtype=object)
    rhs = np.empty(3, dtype=object)
    lhs[:] = [he, hf, ef]
    rhs[:] = [canonical(2 * E), canonical(-2 * F), H]
    for k in range(3):
        if any(a != b for a, b in zip(lhs[k], rhs[k])):
            return Check("sl2 relations", FAIL, witness=(k,), lhs=lhs[k], rhs=rhs[k])
    if all(x == 0 for x in H):
        return Check("sl2 relations", FAIL, detail="frame is zero")
    return Check("sl2 relations", PASS)
