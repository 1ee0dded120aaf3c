"""In-code constructors for the fixture corpus.

The JSON files under ``fixtures/`` are emitted from these functions by
``tools/make_fixtures.py``; tests read the files back through :mod:`triplekit.io`
and compare against the constructors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .dicyclic import DicyclicTernary, from_jternary
from .fkts import FKTS
from .jternary import JordanAlgebra, JTernarySystem, from_special_fkts
from .linalg import as_vector, zeros
from .tensors import BasedSpace

SYMPL = ((0, 1), (-1, 0))


def zero(n: int, epsilon: int = 1, delta: int = 1) -> FKTS:
    return FKTS(BasedSpace.standard(n), epsilon, delta, zeros(n, n, n, n))


def fkts_b(epsilon: int = 1, delta: int = 1) -> FKTS:
    """U = F^2, xyz = s(x,y)z - s(x,z)y for the symplectic form s(x1,x2) = 1."""
    t = zeros(2, 2, 2, 2)
    for x in range(2):
        for y in range(2):
            for z in range(2):
                t[x, y, z, z] += SYMPL[x][y]
                t[x, y, z, y] -= SYMPL[x][z]
    return FKTS(BasedSpace(("x1", "x2")), epsilon, delta, t)


def _scalar_product(epsilon: int, delta: int) -> FKTS:
    t = zeros(1, 1, 1, 1)
    t[0, 0, 0, 0] = Fraction(1)
    return FKTS(BasedSpace(("1",)), epsilon, delta, t)


def osp() -> FKTS:
    """Dim 1, xyz = field product, (eps, delta) = (-1, -1)."""
    return _scalar_product(-1, -1)


def jts() -> FKTS:
    """Dim 1, xyz = field product, (eps, delta) = (-1, 1)."""
    return _scalar_product(-1, 1)


def sp2() -> JTernarySystem:
    """J = F1, T = F^2 with <x|y> = s(x,y)1 and <x,y,z> = s(x,y)z - s(x,z)y."""
    J = JordanAlgebra(BasedSpace(("1",)), zeros(1, 1, 1) + Fraction(1), as_vector([1]))
    act = zeros(1, 2, 2)
    act[0, 0, 0] = act[0, 1, 1] = Fraction(1)
    ang = zeros(2, 2, 1)
    for x in range(2):
        for y in range(2):
            ang[x, y, 0] = Fraction(SYMPL[x][y])
    return JTernarySystem(J, BasedSpace(("x1", "x2")), act, ang, fkts_b().triple.copy(), 1)


def osp_jt() -> JTernarySystem:
    return from_special_fkts(osp())


def dic_sp2() -> DicyclicTernary:
    return from_jternary(sp2())


REGISTRY: dict[str, Callable[[], object]] = {
    "FIX-ZERO-1": lambda: zero(1),
    "FIX-ZERO-2": lambda: zero(2),
    "FIX-ZERO-3": lambda: zero(3),
    "FIX-FKTS-B": fkts_b,
    "FIX-OSP": osp,
    "FIX-JTS": jts,
    "FIX-SP2": sp2,
    "FIX-OSP-JT": osp_jt,
    "FIX-DIC-SP2": dic_sp2,
}


def build(name: str):
    try:
        return REGISTRY[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(REGISTRY)}") from None
