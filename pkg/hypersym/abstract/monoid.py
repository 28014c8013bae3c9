"""Finite and windowed commutative monoids.

Every monoid is a `SolvableMonoid`: it can add (possibly failing with
`WindowOverflow` when a window is left) and it can solve `z + b = a` for
`z`. The divisibility preorder `x <= y iff exists z, x + z = y` and the
other predicates are built on these two primitives.

Finite monoids keep their Cayley table as a read-only numpy array and get
vectorized implementations of the predicates; windows fall back to a scan.
"""

import json
import os
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from hypersym.error import (
    MalformedTable,
    NoIdentity,
    NotAssociative,
    NotCommutative,
    WindowOverflow,
)
from hypersym.logging import MONOID_LOG
from hypersym.macro import dispatch


@dataclass(frozen=True)
class Verdict:
    """Outcome of a predicate; `witness` is present iff the predicate fails."""

    witness: Optional[Tuple[int, ...]] = None

    def __bool__(self) -> bool:
        return self.witness is None

    @property
    def holds(self) -> bool:
        return self.witness is None


@dataclass(frozen=True)
class PreorderReport:
    counterexample: Optional[Tuple[int, int]] = None

    @property
    def total(self) -> bool:
        return self.counterexample is None

    def __bool__(self) -> bool:
        return self.total


class SolvableMonoid(ABC):
    name: Optional[str] = None

    @property
    @abstractmethod
    def zero(self) -> int:
        pass

    @abstractmethod
    def add(self, a: int, b: int) -> int:
        pass

    @abstractmethod
    def div(self, a: int, b: int) -> List[int]:
        """All z with z + b = a, ascending."""
        pass

    @abstractmethod
    def elements(self, bound: Optional[int] = None) -> List[int]:
        pass

    def contains(self, a: int) -> bool:
        return a in self.elements()

    def try_add(self, a: int, b: int) -> Optional[int]:
        try:
            return self.add(a, b)
        except WindowOverflow:
            return None

    def sum(self, parts: Sequence[int]) -> int:
        total = self.zero
        for p in parts:
            total = self.add(total, p)
        return total

    def leq(self, x: int, y: int) -> bool:
        return len(self.div(y, x)) > 0

    def inverse(self, a: int) -> Optional[int]:
        for b in self.elements():
            if self.try_add(a, b) == self.zero:
                return b
        return None

    def __str__(self) -> str:
        return self.name or type(self).__name__


class FiniteCommutativeMonoid(SolvableMonoid):
    def __init__(self, table, name: Optional[str] = None):
        try:
            raw = np.array(table)
        except (TypeError, ValueError) as e:
            raise MalformedTable(f"Expect an n x n table of integers: {e}") from e
        if raw.size and raw.dtype.kind not in "iu":
            raise MalformedTable(
                f"Table entries must be integers, got {raw.dtype} entries"
            )
        table = raw.astype(np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise MalformedTable(f"Expect a non-empty n x n table, got shape {table.shape}")
        n = table.shape[0]
        if table.min() < 0 or table.max() >= n:
            raise MalformedTable(f"Table entries must lie in [0, {n})")

        bad = np.argwhere(table != table.T)
        if len(bad):
            x, y = bad[0]
            raise NotCommutative(int(x), int(y))

        # lhs[x, y, z] = (x + y) + z; rhs[x, y, z] = x + (y + z)
        lhs = table[table]
        rhs = table[np.arange(n)[:, None, None], table[None, :, :]]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y, z = bad[0]
            raise NotAssociative(int(x), int(y), int(z))

        candidates = np.flatnonzero((table == np.arange(n)).all(axis=1))
        if len(candidates) == 0:
            raise NoIdentity()

        table.setflags(write=False)
        self.table = table
        self.identity = int(candidates[0])
        self.name = name
        MONOID_LOG.debug(f"Validated {self} of order {n} with identity {self.identity}")

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def zero(self) -> int:
        return self.identity

    def add(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def div(self, a: int, b: int) -> List[int]:
        return np.flatnonzero(self.table[:, b] == a).tolist()

    def elements(self, bound: Optional[int] = None) -> List[int]:
        n = self.order if bound is None else min(bound + 1, self.order)
        return list(range(n))

    def contains(self, a: int) -> bool:
        return 0 <= a < self.order

    def inverse(self, a: int) -> Optional[int]:
        hits = np.flatnonzero(self.table[a] == self.identity)
        return int(hits[0]) if len(hits) else None

    def le_matrix(self) -> np.ndarray:
        """le[x, y] iff x <= y in the divisibility preorder."""
        n = self.order
        le = np.zeros((n, n), dtype=bool)
        le[np.arange(n)[:, None], self.table] = True
        return le

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteCommutativeMonoid)
            and self.table.shape == other.table.shape
            and bool((self.table == other.table).all())
        )

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteCommutativeMonoid({self.table.tolist()}, name={self.name!r})"

    def to_dict(self) -> dict:
        ret = {"order": self.order, "table": self.table.tolist()}
        if self.name is not None:
            ret = {"name": self.name, **ret}
        return ret

    @staticmethod
    def from_dict(data: dict) -> "FiniteCommutativeMonoid":
        if not isinstance(data, dict) or "table" not in data:
            raise MalformedTable("Monoid JSON must be an object with a `table` field")
        table = data["table"]
        if not isinstance(table, list):
            raise MalformedTable("`table` must be a list of rows")
        if "order" in data and data["order"] != len(table):
            raise MalformedTable(
                f"`order` is {data['order']} but the table has {len(table)} rows"
            )
        if any(not isinstance(row, list) or len(row) != len(table) for row in table):
            raise MalformedTable("Every table row must hold `order` entries")
        for row in table:
            for v in row:
                # bool is an int subclass
                if not isinstance(v, int) or isinstance(v, bool):
                    raise MalformedTable(f"Table entries must be integers, got {v!r}")
        return FiniteCommutativeMonoid(table, name=data.get("name"))

    def dump(self, path: os.PathLike):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)

    @staticmethod
    def load(path: os.PathLike) -> "FiniteCommutativeMonoid":
        with open(path, "r") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise MalformedTable(f"{path} is not valid JSON: {e}") from e
        return FiniteCommutativeMonoid.from_dict(data)


class NaturalsWindow(SolvableMonoid):
    """(N, +) restricted to {0..bound}; sums leaving the window raise."""

    def __init__(self, bound: int):
        if bound < 1:
            raise ValueError(f"Window bound must be >= 1, got {bound}")
        self.bound = bound
        self.name = f"nat:{bound}"

    @property
    def zero(self) -> int:
        return 0

    @property
    def order(self) -> int:
        return self.bound + 1

    def contains(self, a: int) -> bool:
        return 0 <= a <= self.bound

    def add(self, a: int, b: int) -> int:
        s = a + b
        if not (self.contains(a) and self.contains(b)) or s > self.bound:
            raise WindowOverflow(a, b, self.bound)
        return s

    def div(self, a: int, b: int) -> List[int]:
        return [a - b] if a >= b else []

    def elements(self, bound: Optional[int] = None) -> List[int]:
        top = self.bound if bound is None else min(bound, self.bound)
        return list(range(top + 1))

    def inverse(self, a: int) -> Optional[int]:
        return 0 if a == 0 else None


def validate(table, name: Optional[str] = None) -> FiniteCommutativeMonoid:
    return FiniteCommutativeMonoid(table, name=name)


def div(M: SolvableMonoid, a: int, b: int) -> List[int]:
    return M.div(a, b)


def leq(M: SolvableMonoid, x: int, y: int) -> bool:
    return M.leq(x, y)


def inverse(M: SolvableMonoid, a: int) -> Optional[int]:
    return M.inverse(a)


@dispatch(FiniteCommutativeMonoid)
def is_total(M):
    le = M.le_matrix()
    bad = np.argwhere(~(le | le.T))
    if len(bad):
        x, y = bad[0]
        return PreorderReport((int(x), int(y)))
    return PreorderReport()


@dispatch(SolvableMonoid)
def is_total(M):
    elems = M.elements()
    for i, x in enumerate(elems):
        for y in elems[i + 1 :]:
            if not (M.leq(x, y) or M.leq(y, x)):
                return PreorderReport((x, y))
    return PreorderReport()


@dispatch(FiniteCommutativeMonoid)
def is_cancellative(M):
    """Witness (x, y, a) with x < y and x + a = y + a."""
    t = M.table
    n = M.order
    # same[x, y, a] = (x + a == y + a)
    same = t[:, None, :] == t[None, :, :]
    same &= np.triu(np.ones((n, n), dtype=bool), k=1)[:, :, None]
    bad = np.argwhere(same)
    if len(bad):
        return Verdict(tuple(int(v) for v in bad[0]))
    return Verdict()


@dispatch(SolvableMonoid)
def is_cancellative(M):
    elems = M.elements()
    for i, x in enumerate(elems):
        for y in elems[i + 1 :]:
            for a in elems:
                xa = M.try_add(x, a)
                if xa is not None and xa == M.try_add(y, a):
                    return Verdict((x, y, a))
    return Verdict()


@dispatch(FiniteCommutativeMonoid)
def is_idempotent(M):
    bad = np.flatnonzero(np.diagonal(M.table) != np.arange(M.order))
    if len(bad):
        return Verdict((int(bad[0]),))
    return Verdict()


@dispatch(SolvableMonoid)
def is_idempotent(M):
    for x in M.elements():
        if M.try_add(x, x) != x:
            return Verdict((x,))
    return Verdict()
