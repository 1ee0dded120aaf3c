"""``triplekit`` command line.

Exit codes: 0 every check passed, 1 a mathematical check failed (including
preconditions of a construction), 2 the input or the command line is invalid.
Reports go to stdout as JSON.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

import numpy as np

from . import dicyclic as dic
from . import fixtures, io
from . import fkts as fk
from . import jternary as jt
from . import liebuild as lb
from .errors import ConstructionError, PreconditionError, ScalarFieldError
from .linalg import as_vector, identity, zeros
from .report import Check, FAIL, PASS, VACUOUS, Report, compare
from .scalars import ScalarParseError, parse_scalar
from .tensors import check_sl2_relations

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

TARGETS = {
    "g-jt": "jternary",
    "g-a": "dicyclic",
    "g-u": "fkts",
    "fkts-from-jt": "jternary",
    "jt-from-fkts": "fkts",
    "dic-from-jt": "jternary",
    "jt-from-dic": "dicyclic",
    "dic-from-fkts": "fkts",
}
CYCLES = {
    "jt-fkts": ("jternary", "fkts"),
    "jt-dic": ("jternary",),
    "fkts-dic-lie": ("fkts",),
    "jt-dic-lie": ("jternary",),
}


class UsageError(Exception):
    pass


def _kind_of(obj) -> str:
    return io.to_dict(obj)["kind"]


# -- verification suites --------------------------------------------------------

def verify_object(obj) -> Report:
    """The full axiom suite for the object's kind."""
    if isinstance(obj, fk.FKTS):
        rep = Report("fkts")
        rep.extend(fk.check_fk(obj))
        special = fk.is_special(obj)
        rep.data["special"] = special
        rep.extend(fk.check_k_identities(obj))
        if special:
            rep.extend(fk.check_prop_ss(obj))
        else:
            rep.add(Check("prop ss", VACUOUS, detail="system is not special"))
        return rep
    if isinstance(obj, jt.JTernarySystem):
        rep = Report("jternary")
        rep.extend(jt.check_jt_axioms(obj))
        if rep.passed:
            rep.extend(jt.check_theorem_jt(obj))
        return rep
    if isinstance(obj, dic.DicyclicTernary):
        rep = Report("dicyclic")
        rep.extend(dic.check_d_axioms(obj))
        return rep
    if isinstance(obj, lb.LieAlgebraGA):
        rep = obj.verify()
        rep.data["dim"] = obj.dim
        if obj.is_super:
            rep.data["super_dim"] = list(obj.super_dim())
        return rep
    raise TypeError(type(obj).__name__)


# -- commands -------------------------------------------------------------------

def _emit(payload: dict, pretty: bool) -> None:
    text = json.dumps(payload, indent=2 if pretty else None, ensure_ascii=False, sort_keys=False)
    sys.stdout.write(text + "\n")


def _exit_for(rep: Report) -> int:
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_verify(args) -> int:
    obj = io.read(args.file, args.kind)
    rep = verify_object(obj)
    _emit({"command": "verify", "kind": _kind_of(obj), **rep.to_dict()}, args.pretty)
    return _exit_for(rep)


def _parse_coords(text: str, n: int, what: str) -> np.ndarray:
    parts = [p for p in text.split(",")]
    if len(parts) != n:
        raise UsageError(f"{what}: expected {n} coordinates, got {len(parts)}")
    try:
        return as_vector([parse_scalar(p.strip()) for p in parts])
    except ScalarParseError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _unit_for(a: dic.DicyclicTernary, args, required: bool):
    if args.unit is not None:
        return _parse_coords(args.unit, a.dim, "--unit")
    if args.find_unit_from_basis:
        cands = list(identity(a.dim)) + list(a.A0)
        e = dic.find_unit(a, cands)
        if e is None:
            raise PreconditionError("no candidate passes the unit conditions")
        return e
    if required:
        raise UsageError("jt-from-dic needs --unit or --find-unit-from-basis")
    return None


def construct(obj, target: str, args) -> object:
    need = TARGETS[target]
    if _kind_of(obj) != need:
        raise UsageError(f"target {target} needs a {need} file, got {_kind_of(obj)}")
    if target == "g-jt":
        return lb.build_g_JT(obj)
    if target == "g-a":
        return lb.build_g_A(obj, _unit_for(obj, args, required=False))[0]
    if target == "g-u":
        return lb.build_g_U(obj)
    if target == "fkts-from-jt":
        return jt.to_fkts(obj)
    if target == "jt-from-fkts":
        return jt.from_special_fkts(obj)
    if target == "dic-from-jt":
        return dic.from_jternary(obj)
    if target == "jt-from-dic":
        e = _unit_for(obj, args, required=True)
        if not dic.check_unit(obj, e):
            raise PreconditionError("the given element fails the unit conditions")
        return dic.to_jternary(obj, e)
    return dic.from_fkts_11(obj)


def cmd_construct(args) -> int:
    obj = io.read(args.file)
    result = construct(obj, args.target, args)
    rep = verify_object(result)
    payload = {"command": "construct", "target": args.target, "kind": _kind_of(result), **rep.to_dict()}
    if rep.passed:
        if args.out:
            io.write(result, args.out)
            payload["out"] = args.out
        else:
            payload["result"] = io.to_dict(result)
    _emit(payload, args.pretty)
    return _exit_for(rep)


def _tensor_checks(rep: Report, pairs) -> None:
    for name, lhs, rhs in pairs:
        if lhs.shape != rhs.shape:
            rep.add(Check(name, FAIL, detail=f"shape {lhs.shape} vs {rhs.shape}"))
        else:
            rep.add(compare(name, lhs, rhs, lhs.ndim))


def roundtrip(obj, cycle: str) -> Report:
    kinds = CYCLES[cycle]
    if _kind_of(obj) not in kinds:
        raise UsageError(f"cycle {cycle} needs a {' or '.join(kinds)} file, got {_kind_of(obj)}")
    rep = Report(f"roundtrip {cycle}")
    if cycle == "jt-fkts" and isinstance(obj, jt.JTernarySystem):
        back = jt.from_special_fkts(jt.to_fkts(obj))
        rep.extend(jt.jt_isomorphic_via_action(obj, back))
    elif cycle == "jt-fkts":
        back = jt.to_fkts(jt.from_special_fkts(obj))
        rep.add(Check("signs", PASS if (back.epsilon, back.delta) == (obj.epsilon, obj.delta) else FAIL))
        _tensor_checks(rep, [("triple", back.triple, obj.triple)])
    elif cycle == "jt-dic":
        a = dic.from_jternary(obj)
        e = np.concatenate([obj.J.unit, zeros(obj.n)])
        back = dic.to_jternary(a, e)
        _tensor_checks(rep, [
            ("Jordan product", back.J.product, obj.J.product),
            ("unit", back.J.unit, obj.J.unit),
            ("action", back.action, obj.action),
            ("angle", back.angle, obj.angle),
            ("triple", back.triple, obj.triple),
        ])
    elif cycle == "fkts-dic-lie":
        direct = dic.from_fkts_11(obj)
        g = lb.build_g_U(obj)
        act = lb.attach_dic3_to_gU(g, obj)
        via = dic.from_lie_with_dic3(g, act.theta, act.phi, lb.gu_omega_basis(g))
        _tensor_checks(rep, [(k, getattr(via, k), getattr(direct, k)) for k in ("bar", "star", "triple")])
    else:
        direct = dic.from_jternary(obj)
        g = lb.build_g_JT(obj)
        act = lb.attach_dic3_to_gJT(g)
        via = dic.from_lie_with_dic3(g, act.theta, act.phi, lb.gjt_omega_basis(g))
        _tensor_checks(rep, [(k, getattr(via, k), getattr(direct, k)) for k in ("bar", "star", "triple")])
    return rep


def cmd_roundtrip(args) -> int:
    obj = io.read(args.file)
    rep = roundtrip(obj, args.cycle)
    _emit({"command": "roundtrip", "cycle": args.cycle, **rep.to_dict()}, args.pretty)
    return _exit_for(rep)


def _parse_frame(text: str, n: int):
    parts = text.split(";")
    if len(parts) != 3:
        raise UsageError("--frame expects three ';'-separated coordinate lists H;E;F")
    return tuple(_parse_coords(p, n, f"--frame {k}") for p, k in zip(parts, "HEF"))


def cmd_decompose(args) -> int:
    g = io.read(args.file, "lie")
    frame = _parse_frame(args.frame, g.dim) if args.frame else g.frame
    if frame is None:
        raise UsageError("no frame: pass --frame H;E;F or include one in the file")
    sl2 = check_sl2_relations(g.bracket, *frame)
    if not sl2.ok:
        raise UsageError(f"frame does not satisfy the sl2 relations ({sl2.detail or 'relation fails'})")
    g = lb.LieAlgebraGA(g.space, g.bracket, g.grades, frame)
    try:
        dec = lb.bc1_decompose(g)
    except lb.NotBC1GradedError as exc:
        rep = Report("BC1 decomposition")
        rep.add(Check("eigenspaces exhaust g", FAIL, detail=str(exc), lhs=exc.vector, rhs=None))
        _emit({"command": "decompose", **rep.to_dict()}, args.pretty)
        return EXIT_FAIL
    rep = dec.report
    rep.data["multiplicities"] = {"adjoint": dec.m_adjoint, "natural": dec.m_natural, "trivial": dec.m_trivial}
    rep.data["eigen_dims"] = {str(k): v for k, v in sorted(dec.eigen_dims.items())}
    _emit({"command": "decompose", "verified": dec.verified, **rep.to_dict()}, args.pretty)
    return _exit_for(rep)


def cmd_fixtures(args) -> int:
    if args.action == "list":
        _emit({"fixtures": [{"name": k, "kind": _kind_of(f())} for k, f in fixtures.REGISTRY.items()]}, args.pretty)
        return EXIT_OK
    if not args.name:
        raise UsageError("fixtures emit needs a fixture name")
    try:
        obj = fixtures.build(args.name)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    if args.out:
        io.write(obj, args.out)
    else:
        sys.stdout.write(io.dumps(obj))
    return EXIT_OK


# -- entry point ----------------------------------------------------------------

def _check_threads() -> None:
    # accepted for interface compatibility; sweeps run sequentially
    raw = os.environ.get("TRIPLEKIT_THREADS")
    if raw is None:
        return
    try:
        ok = int(raw) >= 1
    except ValueError:
        ok = False
    if not ok:
        raise UsageError(f"TRIPLEKIT_THREADS must be a positive integer, got {raw!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="triplekit", description="Exact checks and constructions for triple systems.")
    p.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the axiom suite of a file")
    v.add_argument("file")
    v.add_argument("--kind", choices=io.KINDS)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("construct", help="build a derived object")
    c.add_argument("file")
    c.add_argument("--target", required=True, choices=sorted(TARGETS))
    c.add_argument("--unit", help="comma-separated coordinates of the unit element")
    c.add_argument("--find-unit-from-basis", action="store_true", help="search the basis and A0 for a unit")
    c.add_argument("--out", help="write the constructed object here")
    c.set_defaults(func=cmd_construct)

    r = sub.add_parser("roundtrip", help="run a composite and compare with the start")
    r.add_argument("file")
    r.add_argument("--cycle", required=True, choices=sorted(CYCLES))
    r.set_defaults(func=cmd_roundtrip)

    d = sub.add_parser("decompose", help="sl2 isotypic decomposition of a Lie algebra file")
    d.add_argument("file")
    d.add_argument("--frame", help="H;E;F as ';'-separated lists of comma-separated coordinates")
    d.set_defaults(func=cmd_decompose)

    f = sub.add_parser("fixtures", help="list or emit the bundled fixtures")
    f.add_argument("action", choices=("list", "emit"))
    f.add_argument("name", nargs="?")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fixtures)
    for sp in (v, c, r, d, f):
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indent JSON output")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on usage errors
    try:
        _check_threads()
        return args.func(args)
    except (io.InputError, UsageError, ScalarFieldError) as exc:
        sys.stderr.write(f"triplekit: error: {exc}\n")
        return EXIT_INPUT
    except (PreconditionError, ConstructionError) as exc:
        _emit({"command": args.command, "status": FAIL, "error": str(exc)}, args.pretty)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
