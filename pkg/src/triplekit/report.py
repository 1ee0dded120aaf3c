"""Check results and reports shared by every verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

import numpy as np

from .scalars import format_scalar

PASS, FAIL, VACUOUS, ERROR = "pass", "fail", "vacuous", "error"


def to_jsonable(value: Any) -> Any:
    """Render scalars, arrays and containers with the textual scalar format."""
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    return format_scalar(value)


@dataclass
class Check:
    name: str
    status: str
    witness: tuple | None = None
    lhs: Any = None
    rhs: Any = None
    detail: str | None = None

    @property
    def ok(self) -> bool:
        return self.status in (PASS, VACUOUS)

    def to_dict(self) -> dict:
        out: dict[str, Any] = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = [int(i) for i in self.witness]
        if self.lhs is not None or self.rhs is not None:
            out["lhs"] = to_jsonable(self.lhs)
            out["rhs"] = to_jsonable(self.rhs)
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    subject: str
    checks: list[Check] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def extend(self, other: Report) -> None:
        self.checks.extend(other.checks)
        self.data.update(other.data)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        return {
            "subject": self.subject,
            "status": PASS if self.passed else FAIL,
            "checks": [c.to_dict() for c in self.checks],
            "data": to_jsonable(self.data),
        }


def _exact(v):
    """Integer numpy values as Fractions, so witnesses print like the object path."""
    if isinstance(v, np.ndarray):
        out = np.empty(v.shape, dtype=object)
        for i, x in enumerate(v.reshape(-1).tolist()):
            out.reshape(-1)[i] = Fraction(x)
        return out
    return Fraction(int(v))


def compare(name: str, lhs: np.ndarray, rhs: np.ndarray, nidx: int) -> Check:
    """Exact comparison of two stacks of values indexed by basis tuples.

    The first ``nidx`` axes index the basis tuple; the first mismatching tuple
    in lexicographic order is reported with both evaluated sides.
    """
    lhs = np.asarray(lhs, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    if lhs.shape != rhs.shape:
        raise ValueError(f"{name}: shape mismatch {lhs.shape} vs {rhs.shape}")
    if lhs.size == 0:
        return Check(name, VACUOUS)
    idx_shape = lhs.shape[:nidx]
    if lhs.dtype != object and rhs.dtype != object:
        diff = (lhs != rhs).reshape(idx_shape + (-1,)).any(axis=-1)
        hits = np.argwhere(diff)
        if not len(hits):
            return Check(name, PASS)
        idx = tuple(int(i) for i in hits[0])
        return Check(name, FAIL, witness=idx, lhs=_exact(lhs[idx]), rhs=_exact(rhs[idx]))
    for idx in np.ndindex(*idx_shape):
        a, b = lhs[idx], rhs[idx]
        if isinstance(a, np.ndarray):
            differs = any(x != y for x, y in zip(a.reshape(-1), b.reshape(-1)))
        else:
            differs = a != b
        if differs:
            return Check(name, FAIL, witness=idx, lhs=a, rhs=b)
    return Check(name, PASS)


def predicate(name: str, ok: bool, detail: str | None = None, witness: Sequence[int] | None = None) -> Check:
    return Check(name, PASS if ok else FAIL, witness=tuple(witness) if witness is not None else None, detail=detail)
