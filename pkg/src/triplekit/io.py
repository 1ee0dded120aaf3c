"""Reading and writing algebra-definition files.

Files are JSON.  Every tensor is a sparse list of ``[i, j, ..., scalar]``
entries with 0-based indices; omitted entries are zero.  Scalars are strings
``"p/q"`` (or integers) for Q and ``{"a": "p/q", "b": "r/s"}`` for ``a + b w``.

::

    {"kind": "fkts", "scalars": "Q", "dims": {"U": 2},
     "labels": {"U": ["x1", "x2"]}, "epsilon": 1, "delta": 1,
     "tensors": {"triple": [[0, 1, 0, 0, "1"], ...]}}
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .dicyclic import DicyclicTernary
from .fkts import FKTS
from .jternary import JordanAlgebra, JTernarySystem
from .liebuild import LieAlgebraGA
from .linalg import zeros
from .scalars import Cyc, ScalarParseError, format_scalar, parse_scalar
from .tensors import BasedSpace

KINDS = ("fkts", "jternary", "dicyclic", "lie")


class InputError(ValueError):
    """A file could not be parsed; ``field`` locates the problem."""

    def __init__(self, message: str, field: str | None = None, line: int | None = None) -> None:
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{'; '.join(where)}: {message}" if where else message)
        self.field = field
        self.line = line


# -- tensors ----------------------------------------------------------------------

def dense_to_sparse(arr: np.ndarray) -> list[list]:
    out = []
    for idx in np.ndindex(*arr.shape):
        v = arr[idx]
        if v != 0:
            out.append([int(i) for i in idx] + [format_scalar(v)])
    return out


def sparse_to_dense(entries: Any, shape: tuple[int, ...], field: str) -> np.ndarray:
    if not isinstance(entries, list):
        raise InputError("expected a list of entries", field)
    arr = zeros(*shape)
    for n, entry in enumerate(entries):
        where = f"{field}[{n}]"
        if not isinstance(entry, list) or len(entry) != len(shape) + 1:
            raise InputError(f"expected {len(shape)} indices and a scalar", where)
        idx = entry[:-1]
        for k, (i, size) in enumerate(zip(idx, shape)):
            if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < size:
                raise InputError(f"index {i!r} out of range 0..{size - 1} (axis {k})", where)
        try:
            value = parse_scalar(entry[-1])
        except ScalarParseError as exc:
            raise InputError(str(exc), where) from None
        arr[tuple(idx)] += value
    return arr


def _scalars_of(*arrays: np.ndarray) -> str:
    for arr in arrays:
        for v in np.asarray(arr, dtype=object).reshape(-1):
            if isinstance(v, Cyc) and v.b != 0:
                return "Q(w)"
    return "Q"


# -- objects -> dicts -----------------------------------------------------------

def to_dict(obj) -> dict:
    if isinstance(obj, FKTS):
        return {
            "kind": "fkts",
            "scalars": _scalars_of(obj.triple),
            "dims": {"U": obj.dim},
            "labels": {"U": list(obj.space.labels)},
            "epsilon": obj.epsilon,
            "delta": obj.delta,
            "tensors": {"triple": dense_to_sparse(obj.triple)},
        }
    if isinstance(obj, JTernarySystem):
        J = obj.J
        return {
            "kind": "jternary",
            "scalars": _scalars_of(J.product, obj.action, obj.angle, obj.triple),
            "dims": {"J": obj.m, "T": obj.n},
            "labels": {"J": list(J.space.labels), "T": list(obj.T.labels)},
            "sign": obj.sign,
            "tensors": {
                "product": dense_to_sparse(J.product),
                "unit": dense_to_sparse(J.unit),
                "action": dense_to_sparse(obj.action),
                "angle": dense_to_sparse(obj.angle),
                "triple": dense_to_sparse(obj.triple),
            },
        }
    if isinstance(obj, DicyclicTernary):
        return {
            "kind": "dicyclic",
            "scalars": _scalars_of(obj.bar, obj.star, obj.triple),
            "dims": {"A": obj.dim},
            "labels": {"A": list(obj.space.labels)},
            "tensors": {
                "bar": dense_to_sparse(obj.bar),
                "star": dense_to_sparse(obj.star),
                "triple": dense_to_sparse(obj.triple),
            },
        }
    if isinstance(obj, LieAlgebraGA):
        out: dict[str, Any] = {
            "kind": "lie",
            "scalars": _scalars_of(obj.bracket),
            "dims": {"g": obj.dim},
            "labels": {"g": list(obj.space.labels)},
        }
        if obj.space.parity is not None:
            out["parity"] = list(obj.space.parity)
        if obj.grades is not None:
            out["grades"] = list(obj.grades)
        if obj.frame is not None:
            out["frame"] = {k: dense_to_sparse(v) for k, v in zip("HEF", obj.frame)}
        out["tensors"] = {"bracket": dense_to_sparse(obj.bracket)}
        return out
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic text: one tensor entry per line."""
    d = to_dict(obj)
    lines = ["{"]
    items = list(d.items())
    for n, (key, value) in enumerate(items):
        comma = "," if n < len(items) - 1 else ""
        if key in ("tensors", "frame"):
            lines.append(f"  {json.dumps(key)}: {{")
            sub = list(value.items())
            for m, (name, entries) in enumerate(sub):
                sub_comma = "," if m < len(sub) - 1 else ""
                if not entries:
                    lines.append(f"    {json.dumps(name)}: []{sub_comma}")
                    continue
                lines.append(f"    {json.dumps(name)}: [")
                for k, entry in enumerate(entries):
                    end = "," if k < len(entries) - 1 else ""
                    lines.append(f"      {json.dumps(entry, ensure_ascii=False)}{end}")
                lines.append(f"    ]{sub_comma}")
            lines.append(f"  }}{comma}")
        else:
            lines.append(f"  {json.dumps(key)}: {json.dumps(value, ensure_ascii=False)}{comma}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write(obj, path: str | Path) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")


# -- dicts -> objects -----------------------------------------------------------

def _get(d: dict, key: str, field: str | None = None):
    if key not in d:
        raise InputError("missing", field or key)
    return d[key]


def _dim(d: dict, name: str) -> int:
    dims = _get(d, "dims")
    if not isinstance(dims, dict):
        raise InputError("expected an object", "dims")
    v = _get(dims, name, f"dims.{name}")
    if isinstance(v, bool) or not isinstance(v, int) or v < 0:
        raise InputError(f"expected a non-negative integer, got {v!r}", f"dims.{name}")
    return v


def _labels(d: dict, name: str, n: int, prefix: str) -> tuple[str, ...]:
    labels = d.get("labels", {}).get(name)
    if labels is None:
        return tuple(f"{prefix}{i + 1}" for i in range(n))
    if not isinstance(labels, list) or len(labels) != n or not all(isinstance(x, str) for x in labels):
        raise InputError(f"expected {n} strings", f"labels.{name}")
    return tuple(labels)


def _sign(d: dict, key: str) -> int:
    v = _get(d, key)
    if v not in (1, -1) or isinstance(v, bool):
        raise InputError(f"expected 1 or -1, got {v!r}", key)
    return v


def _tensor(d: dict, name: str, shape: tuple[int, ...]) -> np.ndarray:
    tensors = _get(d, "tensors")
    if not isinstance(tensors, dict):
        raise InputError("expected an object", "tensors")
    return sparse_to_dense(tensors.get(name, []), shape, f"tensors.{name}")


def from_dict(d: Any, kind: str | None = None):
    if not isinstance(d, dict):
        raise InputError("top level must be a JSON object")
    kind = kind or _get(d, "kind")
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "kind")
    scalars = d.get("scalars", "Q")
    if scalars not in ("Q", "Q(w)"):
        raise InputError(f"unknown scalar field {scalars!r}", "scalars")
    try:
        if kind == "fkts":
            n = _dim(d, "U")
            space = BasedSpace(_labels(d, "U", n, "x"))
            return FKTS(space, _sign(d, "epsilon"), _sign(d, "delta"), _tensor(d, "triple", (n,) * 4))
        if kind == "jternary":
            m, n = _dim(d, "J"), _dim(d, "T")
            J = JordanAlgebra(
                BasedSpace(_labels(d, "J", m, "a")),
                _tensor(d, "product", (m, m, m)),
                _tensor(d, "unit", (m,)),
            )
            return JTernarySystem(
                J,
                BasedSpace(_labels(d, "T", n, "x")),
                _tensor(d, "action", (m, n, n)),
                _tensor(d, "angle", (n, n, m)),
                _tensor(d, "triple", (n,) * 4),
                _sign(d, "sign"),
            )
        if kind == "dicyclic":
            n = _dim(d, "A")
            return DicyclicTernary(
                BasedSpace(_labels(d, "A", n, "a")),
                _tensor(d, "bar", (n, n)),
                _tensor(d, "star", (n, n, n)),
                _tensor(d, "triple", (n,) * 4),
            )
        n = _dim(d, "g")
        parity = d.get("parity")
        if parity is not None and (
            not isinstance(parity, list) or len(parity) != n or any(p not in (0, 1) for p in parity)
        ):
            raise InputError(f"expected {n} entries from {{0, 1}}", "parity")
        grades = d.get("grades")
        if grades is not None and (not isinstance(grades, list) or len(grades) != n):
            raise InputError(f"expected {n} grade tags", "grades")
        frame = None
        if d.get("frame") is not None:
            fr = d["frame"]
            if not isinstance(fr, dict):
                raise InputError("expected an object with H, E, F", "frame")
            frame = tuple(sparse_to_dense(_get(fr, k, f"frame.{k}"), (n,), f"frame.{k}") for k in "HEF")
        space = BasedSpace(_labels(d, "g", n, "e"), tuple(parity) if parity is not None else None)
        return LieAlgebraGA(
            space,
            _tensor(d, "bracket", (n, n, n)),
            tuple(grades) if grades is not None else None,
            frame,
        )
    except InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise InputError(str(exc)) from None


def loads(text: str, kind: str | None = None):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(exc.msg, line=exc.lineno) from None
    return from_dict(d, kind)


def read(path: str | Path, kind: str | None = None):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, kind)


def same_tensors(a, b) -> bool:
    """Exact equality of the serialized content (labels included)."""
    return to_dict(a) == to_dict(b)
