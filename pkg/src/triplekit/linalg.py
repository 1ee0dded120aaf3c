"""Exact linear algebra over Q and Q(w) on numpy object arrays.

Vectors are 1-d object arrays, matrices 2-d object arrays; entries are
``Fraction`` or :class:`~triplekit.scalars.Cyc`.  Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .scalars import simplify

__all__ = [
    "NotInSpanError",
    "Subspace",
    "as_matrix",
    "as_vector",
    "identity",
    "is_zero",
    "kernel",
    "rank",
    "rref",
    "solve",
    "span_basis",
    "zeros",
]

ZERO = Fraction(0)
ONE = Fraction(1)


class NotInSpanError(ValueError):
    """A vector was expected to lie in a subspace and does not."""


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def _canon(x):
    if isinstance(x, int):
        return Fraction(x)
    return simplify(x)


def as_vector(values: Iterable) -> np.ndarray:
    vals = [_canon(v) for v in values]
    out = np.empty(len(vals), dtype=object)
    for i, v in enumerate(vals):
        out[i] = v
    return out


def as_matrix(rows: Iterable[Iterable]) -> np.ndarray:
    rows = [list(r) for r in rows]
    if not rows:
        return zeros(0, 0)
    out = zeros(len(rows), len(rows[0]))
    for i, r in enumerate(rows):
        if len(r) != out.shape[1]:
            raise ValueError("ragged matrix")
        for j, v in enumerate(r):
            out[i, j] = _canon(v)
    return out


def canonical(arr: np.ndarray) -> np.ndarray:
    """Copy of ``arr`` with every entry demoted to its simplest exact type."""
    out = np.empty(arr.shape, dtype=object)
    flat_in, flat_out = arr.reshape(-1), out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = _canon(v)
    return out


def is_zero(arr) -> bool:
    if isinstance(arr, np.ndarray):
        return all(v == 0 for v in arr.reshape(-1))
    return arr == 0


def _first_nonzero(v: np.ndarray) -> int:
    for i, x in enumerate(v):
        if x != 0:
            return i
    return -1


class Subspace:
    """Span of an ordered list of independent vectors, with a coordinate solver.

    The chosen basis is kept as given.  Internally a fully reduced echelon
    form ``R`` is maintained together with ``T`` such that ``R = T @ basis``,
    so expressing a vector costs one pass over the pivots.
    """

    def __init__(self, ambient_dim: int) -> None:
        self.ambient_dim = ambient_dim
        self.basis: list[np.ndarray] = []
        self._rows: list[np.ndarray] = []
        self._trans: list[np.ndarray] = []
        self._pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def from_basis(cls, vectors: Sequence[np.ndarray], ambient_dim: int | None = None) -> Subspace:
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient dimension required for an empty basis")
            ambient_dim = len(vectors[0])
        sub = cls(ambient_dim)
        for v in vectors:
            if not sub.add(v):
                raise ValueError("basis vectors are linearly dependent")
        return sub

    @classmethod
    def greedy(cls, vectors: Sequence[np.ndarray], ambient_dim: int | None = None) -> tuple[Subspace, list[int]]:
        """Keep each vector that is independent of the ones kept before it."""
        if ambient_dim is None:
            if not vectors:
                raise ValueError("ambient dimension required for an empty list")
            ambient_dim = len(vectors[0])
        sub = cls(ambient_dim)
        chosen = [i for i, v in enumerate(vectors) if sub.add(v)]
        return sub, chosen

    def _reduce(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return (residual, coefficients in R) after eliminating pivots."""
        r = np.array(v, dtype=object, copy=True)
        coeffs = zeros(len(self._rows))
        for k, (row, p) in enumerate(zip(self._rows, self._pivots)):
            c = r[p]
            if c != 0:
                coeffs[k] = c
                r = r - c * row
        return r, coeffs

    def add(self, v) -> bool:
        """Append ``v`` to the basis if independent; report whether it was."""
        v = as_vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector length {len(v)} != ambient dimension {self.ambient_dim}")
        residual, coeffs = self._reduce(v)
        p = _first_nonzero(residual)
        if p < 0:
            return False
        k = len(self.basis)
        # residual = v - sum coeffs[j] R_j = v - sum_j coeffs[j] sum_i T[j,i] b_i
        trans = zeros(k + 1)
        trans[k] = ONE
        for j, c in enumerate(coeffs):
            if c != 0:
                trans[:k] = trans[:k] - c * self._trans[j]
        inv = 1 / residual[p]
        row = residual * inv
        trans = trans * inv
        for j in range(len(self._rows)):
            self._trans[j] = np.append(self._trans[j], ZERO)
            c = self._rows[j][p]
            if c != 0:
                self._rows[j] = self._rows[j] - c * row
                self._trans[j] = self._trans[j] - c * trans
        self.basis.append(v)
        self._rows.append(row)
        self._trans.append(trans)
        self._pivots.append(p)
        return True

    def contains(self, v) -> bool:
        residual, _ = self._reduce(as_vector(v))
        return is_zero(residual)

    def express(self, v) -> np.ndarray:
        """Coordinates of ``v`` in the chosen basis; raises if ``v`` is outside."""
        v = as_vector(v)
        if len(v) != self.ambient_dim:
            raise ValueError(f"vector length {len(v)} != ambient dimension {self.ambient_dim}")
        residual, coeffs = self._reduce(v)
        if not is_zero(residual):
            raise NotInSpanError("vector is not in the span")
        out = zeros(self.dim)
        for c, t in zip(coeffs, self._trans):
            if c != 0:
                out = out + c * t
        return canonical(out)

    def combine(self, coeffs) -> np.ndarray:
        out = zeros(self.ambient_dim)
        for c, b in zip(coeffs, self.basis):
            if c != 0:
                out = out + c * b
        return out

    def echelon(self) -> list[np.ndarray]:
        """Reduced row echelon basis, ordered by pivot column."""
        order = sorted(range(len(self._rows)), key=lambda k: self._pivots[k])
        return [canonical(self._rows[k]) for k in order]


def span_basis(vectors: Sequence, ambient_dim: int | None = None) -> tuple[list[np.ndarray], Subspace]:
    """Reduced-echelon basis of the span, plus a solver expressing members in it."""
    vecs = [as_vector(v) for v in vectors]
    sub, _ = Subspace.greedy(vecs, ambient_dim)
    basis = sub.echelon()
    dim = ambient_dim if ambient_dim is not None else (len(vecs[0]) if vecs else 0)
    return basis, Subspace.from_basis(basis, dim)


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = np.array(m, dtype=object, copy=True)
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = next((i for i in range(r, rows) if m[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * (1 / m[r, c])
        for i in range(rows):
            if i != r and m[i, c] != 0:
                m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
    return canonical(m), pivots


def rank(m: np.ndarray) -> int:
    """Rank by fraction-free (Bareiss) elimination."""
    a = np.array(m, dtype=object, copy=True)
    rows, cols = a.shape
    prev = ONE
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        for i in range(r + 1, rows):
            a[i, c + 1:] = (a[r, c] * a[i, c + 1:] - a[i, c] * a[r, c + 1:]) / prev
            a[i, c] = ZERO
        prev = a[r, c]
        r += 1
    return r


def kernel(m: np.ndarray) -> list[np.ndarray]:
    """Basis of the null space, one vector per free column (free entry = 1)."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    if rows == 0:
        return [as_vector([ONE if j == i else ZERO for j in range(cols)]) for i in range(cols)]
    r, pivots = rref(m)
    free = [c for c in range(cols) if c not in pivots]
    out = []
    for f in free:
        v = zeros(cols)
        v[f] = ONE
        for k, p in enumerate(pivots):
            v[p] = -r[k, f]
        out.append(canonical(v))
    return out


def solve(m: np.ndarray, rhs) -> np.ndarray | None:
    """One solution of ``m @ x == rhs`` (free variables zero), or ``None``."""
    m = np.asarray(m, dtype=object)
    rows, cols = m.shape
    aug = zeros(rows, cols + 1)
    aug[:, :cols] = m
    aug[:, cols] = as_vector(rhs)
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = zeros(cols)
    for k, p in enumerate(pivots):
        x[p] = r[k, cols]
    return canonical(x)
