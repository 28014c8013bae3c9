"""Finite canonical hypergroups as multivalued addition tables.

A table cell `table[x][y]` is the sorted tuple of element indices in
`x + y`. Axioms checked by `check_axioms`:

    (1) x + y = y + x
    (2) (x + y) + z = x + (y + z)          (set equality)
    (3) 0 + x = {x}
    (4) exactly one y with 0 in x + y       (y = -x)
    (5) x in y + z  implies  z in x - y     (reversibility)
"""

import itertools
import json
import os
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from hypersym.abstract.monoid import Verdict
from hypersym.error import MalformedTable, NotAHypergroup, SizeMismatch
from hypersym.logging import HGRP_LOG
from hypersym.macro import ISOMORPHISM_MAX_SIZE, NEG_SIGN, POS_SIGN, ZERO_LABEL

Cell = Tuple[int, ...]

AXIOM_NAMES = {
    1: "commutativity",
    2: "associativity",
    3: "neutral element",
    4: "unique negatives",
    5: "reversibility",
}


@dataclass(frozen=True, order=True)
class SignedElement:
    """Representative (magnitude, sign) of a class of B x {-1, +1}."""

    magnitude: int
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"Sign must be +1 or -1, got {self.sign}")

    def negate(self) -> "SignedElement":
        return SignedElement(self.magnitude, -self.sign)

    def label(self, zero: int = 0) -> str:
        if self.magnitude == zero:
            return ZERO_LABEL
        return f"{POS_SIGN if self.sign > 0 else NEG_SIGN}{self.magnitude}"


class FiniteHypergroup:
    def __init__(
        self,
        elements: Sequence[str],
        neutral: int,
        table: Sequence[Sequence[Iterable[int]]],
    ):
        n = len(elements)
        if n == 0:
            raise MalformedTable("A hypergroup needs at least one element")
        if len(set(elements)) != n:
            raise MalformedTable(f"Duplicate element labels in {list(elements)}")
        if not 0 <= neutral < n:
            raise MalformedTable(f"Neutral index {neutral} outside [0, {n})")
        if len(table) != n or any(len(row) != n for row in table):
            raise MalformedTable(f"Expect a {n} x {n} table of cells")

        cells: List[List[Cell]] = []
        for x, row in enumerate(table):
            cell_row = []
            for y, cell in enumerate(row):
                cell = tuple(sorted(set(int(v) for v in cell)))
                if not cell:
                    raise MalformedTable(f"Empty cell at ({elements[x]}, {elements[y]})")
                if cell[0] < 0 or cell[-1] >= n:
                    raise MalformedTable(f"Cell {cell} refers outside [0, {n})")
                cell_row.append(cell)
            cells.append(cell_row)

        self.elements = list(elements)
        self.neutral = neutral
        self.table = cells
        self._index = {label: i for i, label in enumerate(self.elements)}

    @property
    def size(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return self.size

    def index(self, label: str) -> int:
        return self._index[label]

    def cell(self, x: int, y: int) -> Cell:
        return self.table[x][y]

    def membership(self) -> np.ndarray:
        """m[x, y, w] iff w in x + y."""
        n = self.size
        m = np.zeros((n, n, n), dtype=bool)
        for x in range(n):
            for y in range(n):
                m[x, y, list(self.table[x][y])] = True
        return m

    def validate(self) -> "FiniteHypergroup":
        """Raise unless the table is commutative with an exact neutral element."""
        report = check_axioms(self, axioms=(1, 3))
        for axiom in (1, 3):
            if not report[axiom]:
                raise NotAHypergroup(
                    f"Axiom ({axiom}) {AXIOM_NAMES[axiom]} fails at {report[axiom].witness}",
                    report[axiom].witness,
                )
        return self

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteHypergroup)
            and self.elements == other.elements
            and self.neutral == other.neutral
            and self.table == other.table
        )

    def pretty(self) -> str:
        lines = []
        for x in range(self.size):
            for y in range(x, self.size):
                members = ", ".join(self.elements[w] for w in self.table[x][y])
                lines.append(f"{self.elements[x]} + {self.elements[y]} = {{{members}}}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "elements": self.elements,
            "neutral": self.neutral,
            "table": [[list(cell) for cell in row] for row in self.table],
        }

    @staticmethod
    def from_dict(data: dict) -> "FiniteHypergroup":
        try:
            return FiniteHypergroup(data["elements"], data["neutral"], data["table"])
        except (KeyError, TypeError) as e:
            raise MalformedTable(f"Invalid hypergroup JSON: {e}") from e

    def dump(self, path: os.PathLike, **extra):
        with open(path, "w") as f:
            json.dump({**self.to_dict(), **extra}, f, indent=2)

    @staticmethod
    def load(path: os.PathLike) -> "FiniteHypergroup":
        with open(path, "r") as f:
            try:
                data = json.load(f)
            except json.JSONDecodeError as e:
                raise MalformedTable(f"{path} is not valid JSON: {e}") from e
        return FiniteHypergroup.from_dict(data).validate()


def group_hypergroup(elements: Sequence[str], neutral: int, table) -> FiniteHypergroup:
    """Lift a single-valued table to singleton cells."""
    return FiniteHypergroup(
        elements, neutral, [[(int(v),) for v in row] for row in np.asarray(table)]
    )


@dataclass(frozen=True)
class AxiomVerdict(Verdict):
    detail: str = ""


@dataclass
class AxiomReport:
    verdicts: Dict[int, AxiomVerdict] = field(default_factory=dict)

    def __getitem__(self, axiom: int) -> AxiomVerdict:
        return self.verdicts[axiom]

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def failed(self) -> List[int]:
        return [a for a, verdict in sorted(self.verdicts.items()) if not verdict]

    def pretty(self, H: Optional[FiniteHypergroup] = None) -> str:
        lines = []
        for axiom, verdict in sorted(self.verdicts.items()):
            status = "ok" if verdict else "FAIL"
            line = f"axiom ({axiom}) {AXIOM_NAMES[axiom]}: {status}"
            if not verdict:
                witness = verdict.witness
                if H is not None:
                    witness = tuple(H.elements[i] for i in witness)
                line += f" at {witness}"
                if verdict.detail:
                    line += f" ({verdict.detail})"
            lines.append(line)
        return "\n".join(lines) + "\n"


def hypersum(H: FiniteHypergroup, X: Iterable[int], Y: Iterable[int]) -> Cell:
    X, Y = list(X), list(Y)
    if not X or not Y:
        raise ValueError("hypersum of an empty set")
    members = set()
    for x in X:
        for y in Y:
            members.update(H.table[x][y])
    return tuple(sorted(members))


def partners(H: FiniteHypergroup, x: int) -> List[int]:
    """All y with the neutral element in x + y."""
    return [y for y in range(H.size) if H.neutral in H.table[x][y]]


def negation(H: FiniteHypergroup) -> Tuple[int, ...]:
    neg = []
    for x in range(H.size):
        ys = partners(H, x)
        if len(ys) != 1:
            raise NotAHypergroup(
                f"{H.elements[x]} has {len(ys)} candidates for its negative", (x,)
            )
        neg.append(ys[0])
    return tuple(neg)


def _check_commutative(H, m) -> AxiomVerdict:
    bad = np.argwhere((m != m.transpose(1, 0, 2)).any(axis=2))
    if len(bad):
        return AxiomVerdict(tuple(int(v) for v in bad[0]))
    return AxiomVerdict()


def _check_associative(H, m) -> AxiomVerdict:
    mi = m.astype(np.int64)
    # lhs[x, y, z, v]: v in (x + y) + z; rhs: v in x + (y + z)
    lhs = np.einsum("xyw,wzv->xyzv", mi, mi) > 0
    rhs = np.einsum("yzw,xwv->xyzv", mi, mi) > 0
    bad = np.argwhere((lhs != rhs).any(axis=3))
    if len(bad):
        return AxiomVerdict(tuple(int(v) for v in bad[0]))
    return AxiomVerdict()


def _check_neutral(H, m) -> AxiomVerdict:
    e = H.neutral
    for x in range(H.size):
        if H.table[e][x] != (x,) or H.table[x][e] != (x,):
            return AxiomVerdict((x,), f"0 + x = {H.table[e][x]}")
    return AxiomVerdict()


def _check_negatives(H, m) -> AxiomVerdict:
    for x in range(H.size):
        ys = partners(H, x)
        if len(ys) != 1:
            return AxiomVerdict((x,), f"{len(ys)} elements y with 0 in x + y")
    return AxiomVerdict()


def _check_reversible(H, m) -> AxiomVerdict:
    # x - y is read as x + (-y) over every candidate negative of y; an element
    # without candidates makes x - y empty.
    minus = [partners(H, y) for y in range(H.size)]
    for y in range(H.size):
        for z in range(H.size):
            for x in H.table[y][z]:
                if not any(z in H.table[x][ny] for ny in minus[y]):
                    return AxiomVerdict((x, y, z), "x in y + z but z not in x - y")
    return AxiomVerdict()


_AXIOM_CHECKERS = {
    1: _check_commutative,
    2: _check_associative,
    3: _check_neutral,
    4: _check_negatives,
    5: _check_reversible,
}


def check_axioms(
    H: FiniteHypergroup, axioms: Iterable[int] = (1, 2, 3, 4, 5)
) -> AxiomReport:
    m = H.membership()
    report = AxiomReport({axiom: _AXIOM_CHECKERS[axiom](H, m) for axiom in axioms})
    HGRP_LOG.debug(f"Axioms of {H.size}-element table: failed {report.failed()}")
    return report


def violates(H: FiniteHypergroup, axiom: int, witness: Tuple[int, ...]) -> bool:
    """Independently confirm that `witness` breaks `axiom`."""
    if axiom == 1:
        x, y = witness
        return H.cell(x, y) != H.cell(y, x)
    if axiom == 2:
        x, y, z = witness
        return hypersum(H, H.cell(x, y), [z]) != hypersum(H, [x], H.cell(y, z))
    if axiom == 3:
        (x,) = witness
        return H.cell(H.neutral, x) != (x,) or H.cell(x, H.neutral) != (x,)
    if axiom == 4:
        (x,) = witness
        return len(partners(H, x)) != 1
    if axiom == 5:
        x, y, z = witness
        neg = partners(H, y)
        return x in H.cell(y, z) and (not neg or z not in hypersum(H, [x], neg))
    raise ValueError(f"Unknown axiom {axiom}")


def is_group(H: FiniteHypergroup) -> bool:
    return all(len(cell) == 1 for row in H.table for cell in row)


@dataclass(frozen=True)
class HypergroupMorphism:
    source: FiniteHypergroup
    target: FiniteHypergroup
    mapping: Tuple[int, ...]

    def __post_init__(self):
        if len(self.mapping) != self.source.size:
            raise ValueError(
                f"Mapping covers {len(self.mapping)} of {self.source.size} source elements"
            )
        if any(not 0 <= v < self.target.size for v in self.mapping):
            raise ValueError(f"Mapping {self.mapping} leaves the target carrier")

    def __call__(self, x: int) -> int:
        return self.mapping[x]


def check_morphism(h: HypergroupMorphism) -> Verdict:
    """h(0) = 0 and h(w) in h(x) + h(y) for every w in x + y.

    The witness is `(neutral,)` for a moved neutral element, otherwise
    `(x, y, w)` with the offending member `w` of `x + y`.
    """
    H, K = h.source, h.target
    if h(H.neutral) != K.neutral:
        return Verdict((H.neutral,))
    for x in range(H.size):
        for y in range(H.size):
            image = K.cell(h(x), h(y))
            for w in H.cell(x, y):
                if h(w) not in image:
                    return Verdict((x, y, w))
    return Verdict()


def is_isomorphism(
    H: FiniteHypergroup, K: FiniteHypergroup, mapping: Sequence[int]
) -> bool:
    if H.size != K.size or sorted(mapping) != list(range(K.size)):
        return False
    if mapping[H.neutral] != K.neutral:
        return False
    p = np.asarray(mapping)
    return bool((K.membership()[np.ix_(p, p, p)] == H.membership()).all())


def _cell_profile(H: FiniteHypergroup) -> List[int]:
    return sorted(len(cell) for row in H.table for cell in row)


def isomorphic(H: FiniteHypergroup, K: FiniteHypergroup) -> Optional[Tuple[int, ...]]:
    """A neutral-preserving bijection H -> K with equal cells, by exhaustive search."""
    if H.size != K.size:
        raise SizeMismatch(H.size, K.size)
    if _cell_profile(H) != _cell_profile(K):
        return None
    if H.size > ISOMORPHISM_MAX_SIZE:
        HGRP_LOG.warning(f"Searching {H.size - 1}! bijections; this may take a while")

    mh, mk = H.membership(), K.membership()
    rest_h = [x for x in range(H.size) if x != H.neutral]
    rest_k = [x for x in range(K.size) if x != K.neutral]
    p = np.empty(H.size, dtype=np.int64)
    p[H.neutral] = K.neutral
    for image in itertools.permutations(rest_k):
        p[rest_h] = image
        if (mk[np.ix_(p, p, p)] == mh).all():
            return tuple(int(v) for v in p)
    return None
