"""Canonical example monoids, the builtin spec parser, and closed-form oracles.

Builtin specs:
    chain:<n>           {0..n-1} with x + y = max(x, y)
    nat:<W>             (N, +) restricted to the window {0..W}
    z:<n>               the cyclic group Z/n
    prod:<spec>,<spec>  componentwise product of two finite monoids
"""

import os
from typing import List, Optional

import numpy as np

from hypersym.abstract.hypergroup import FiniteHypergroup, SignedElement
from hypersym.abstract.monoid import (
    FiniteCommutativeMonoid,
    NaturalsWindow,
    SolvableMonoid,
)
from hypersym.error import InputCheck, InputError, NotAGroup, WindowOverflow
from hypersym.logging import CORE_LOG


def chain_max(n: int) -> FiniteCommutativeMonoid:
    if n < 1:
        raise ValueError(f"Chain length must be >= 1, got {n}")
    idx = np.arange(n)
    return FiniteCommutativeMonoid(np.maximum.outer(idx, idx), name=f"chain:{n}")


def naturals_window(bound: int) -> NaturalsWindow:
    return NaturalsWindow(bound)


def product(
    lhs: FiniteCommutativeMonoid, rhs: FiniteCommutativeMonoid
) -> FiniteCommutativeMonoid:
    """Element (i, j) is stored at index i * |rhs| + j."""
    n1, n2 = lhs.order, rhs.order
    a = lhs.table[:, None, :, None] * n2 + rhs.table[None, :, None, :]
    name = f"prod:{lhs},{rhs}"
    return FiniteCommutativeMonoid(a.reshape(n1 * n2, n1 * n2), name=name)


def group_as_monoid(table, name: Optional[str] = None) -> FiniteCommutativeMonoid:
    M = FiniteCommutativeMonoid(table, name=name)
    for x in M.elements():
        if M.inverse(x) is None:
            raise NotAGroup(x)
    return M


def cyclic_group(n: int) -> FiniteCommutativeMonoid:
    if n < 1:
        raise ValueError(f"Group order must be >= 1, got {n}")
    idx = np.arange(n)
    return group_as_monoid(np.add.outer(idx, idx) % n, name=f"z:{n}")


def max_chain_hypergroup(n: int) -> FiniteHypergroup:
    """Closed form of the symmetrized max-chain on {0, +1..+(n-1), -1..-(n-1)}.

    x + y is x when |x| > |y| or x = y, y when |x| < |y|, and the whole
    interval {t : |t| <= |x|} when y = -x.
    """
    if n < 1:
        raise ValueError(f"Chain length must be >= 1, got {n}")
    signed = [SignedElement(0)]
    signed += [SignedElement(k, 1) for k in range(1, n)]
    signed += [SignedElement(k, -1) for k in range(1, n)]
    index = {s: i for i, s in enumerate(signed)}

    def interval(bound: int) -> List[int]:
        return [i for i, s in enumerate(signed) if s.magnitude <= bound]

    table = []
    for x in signed:
        row = []
        for y in signed:
            if x.magnitude > y.magnitude or x == y:
                row.append([index[x]])
            elif x.magnitude < y.magnitude:
                row.append([index[y]])
            else:
                row.append(interval(x.magnitude))
        table.append(row)
    return FiniteHypergroup([s.label() for s in signed], 0, table)


class IntegerWindow:
    """Z restricted to [-bound, bound] with (partial) singleton addition."""

    def __init__(self, bound: int):
        if bound < 1:
            raise ValueError(f"Window bound must be >= 1, got {bound}")
        self.bound = bound

    def contains(self, k: int) -> bool:
        return -self.bound <= k <= self.bound

    def elements(self) -> List[int]:
        return list(range(-self.bound, self.bound + 1))

    def add(self, x: int, y: int) -> List[int]:
        s = x + y
        if not (self.contains(x) and self.contains(y) and self.contains(s)):
            raise WindowOverflow(x, y, self.bound)
        return [s]

    @staticmethod
    def to_signed(k: int) -> SignedElement:
        return SignedElement(abs(k), -1 if k < 0 else 1)

    @staticmethod
    def from_signed(e: SignedElement) -> int:
        return e.sign * e.magnitude


def integer_window_hypergroup(bound: int) -> IntegerWindow:
    return IntegerWindow(bound)


def _split_top_level(text: str) -> List[str]:
    """Split `a,b` where either side may itself be a `prod:` spec."""
    candidates = []
    for i, ch in enumerate(text):
        if ch != ",":
            continue
        lhs, rhs = text[:i], text[i + 1 :]
        try:
            parse_builtin(lhs), parse_builtin(rhs)
        except InputError:
            continue
        candidates.append([lhs, rhs])
    InputCheck.true(len(candidates) > 0, f"Cannot split product operands in `{text}`")
    return candidates[0]


def _positive_int(text: str, spec: str) -> int:
    InputCheck.true(text.isdigit(), f"Expect a positive integer in `{spec}`")
    value = int(text)
    InputCheck.true(value >= 1, f"Expect a positive integer in `{spec}`")
    return value


def parse_builtin(spec: str) -> SolvableMonoid:
    spec = spec.strip()
    kind, sep, arg = spec.partition(":")
    InputCheck.true(sep == ":", f"Invalid builtin `{spec}`; expect <kind>:<arg>")
    if kind == "chain":
        return chain_max(_positive_int(arg, spec))
    if kind == "nat":
        return naturals_window(_positive_int(arg, spec))
    if kind == "z":
        return cyclic_group(_positive_int(arg, spec))
    if kind == "prod":
        lhs, rhs = (parse_builtin(s) for s in _split_top_level(arg))
        InputCheck.true(
            isinstance(lhs, FiniteCommutativeMonoid)
            and isinstance(rhs, FiniteCommutativeMonoid),
            f"Products need finite operands: `{spec}`",
        )
        return product(lhs, rhs)
    raise InputError(f"Unknown builtin kind `{kind}` in `{spec}`")


def load_input(text: str) -> SolvableMonoid:
    """A monoid JSON file when `text` names one, a builtin spec otherwise."""
    if os.path.isfile(text):
        CORE_LOG.info(f"Loading monoid from {text}")
        return FiniteCommutativeMonoid.load(text)
    return parse_builtin(text)
