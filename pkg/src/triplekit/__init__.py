"""Exact verification and constructions for Freudenthal-Kantor triple systems,
J-ternary algebras, dicyclic ternary algebras and the Lie (super)algebras
built from them."""

from __future__ import annotations

from .dicyclic import (
    DicyclicTernary,
    check_d_axioms,
    check_unit,
    check_unit_lemmas,
    find_unit,
    from_fkts_11,
    from_jternary,
    from_lie_with_dic3,
    to_jternary,
)
from .errors import ConstructionError, PreconditionError, ScalarFieldError
from .fkts import (
    FKTS,
    check_fk,
    check_k_identities,
    check_prop_ss,
    check_st_identities,
    is_balanced,
    is_special,
    is_unitary,
)
from .jternary import JordanAlgebra, JTernarySystem, check_jt_axioms, check_theorem_jt, from_special_fkts, to_fkts
from .liebuild import (
    Dic3Action,
    LieAlgebraGA,
    attach_dic3_to_gJT,
    attach_dic3_to_gU,
    bc1_decompose,
    build_g_A,
    build_g_JT,
    build_g_U,
    embed_gU_in_gJT,
    sl2_algebra,
)
from .scalars import OMEGA, Cyc

__version__ = "0.1.0"
