"""Exhaustive generation of small commutative monoids up to isomorphism.

Tables are searched with the identity fixed at 0, so only the cells (i, j)
with 1 <= i <= j < n are free. Two search engines are provided:

- `backtrack`: fills free cells in row-major order and prunes on every
  associativity triple whose entries are already known;
- `smt`: asks z3 for models of an uninterpreted commutative, associative
  operation with identity over a finite enumeration sort, blocking each
  table once found.

Both feed the same canonical form (lexicographically minimal table over
all relabellings fixing 0), so the resulting class lists are identical.
"""

import csv
import itertools
import json
import multiprocessing as mp
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import z3
from appdirs import user_cache_dir

from hypersym import __version__
from hypersym.abstract.hypergroup import check_axioms, is_group
from hypersym.abstract.monoid import (
    FiniteCommutativeMonoid,
    is_cancellative,
    is_idempotent,
    is_total,
)
from hypersym.error import OrderTooLarge
from hypersym.logging import ENUM_LOG, SMT_LOG
from hypersym.macro import ENUM_LARGE_ORDER, ENUM_MAX_ORDER, HYPERSYM_ENUM_WORKERS
from hypersym.symmetrize import check_share, symmetrize

HYPERSYM_CACHE_DIR = user_cache_dir(f"hypersym-{__version__}")

Table = Tuple[Tuple[int, ...], ...]


def _free_cells(order: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(1, order) for j in range(i, order)]


def _initial_table(order: int) -> List[List[Optional[int]]]:
    table: List[List[Optional[int]]] = [[None] * order for _ in range(order)]
    for x in range(order):
        table[0][x] = table[x][0] = x
    return table


def _consistent(table: List[List[Optional[int]]], order: int) -> bool:
    """No fully-known associativity triple is violated."""
    for x in range(1, order):
        for y in range(1, order):
            xy = table[x][y]
            if xy is None:
                continue
            for z in range(1, order):
                yz = table[y][z]
                if yz is None:
                    continue
                lhs, rhs = table[xy][z], table[x][yz]
                if lhs is not None and rhs is not None and lhs != rhs:
                    return False
    return True


def _backtrack(order: int, prefix: Tuple[int, ...] = ()) -> List[Table]:
    cells = _free_cells(order)
    table = _initial_table(order)
    for (i, j), v in zip(cells, prefix):
        table[i][j] = table[j][i] = v
    if not _consistent(table, order):
        return []

    found: List[Table] = []

    def fill(k: int):
        if k == len(cells):
            found.append(tuple(tuple(row) for row in table))
            return
        i, j = cells[k]
        for v in range(order):
            table[i][j] = table[j][i] = v
            if _consistent(table, order):
                fill(k + 1)
        table[i][j] = table[j][i] = None

    fill(len(prefix))
    return found


def _smt_tables(order: int) -> List[Table]:
    ctx = z3.Context()
    sort, elems = z3.EnumSort(f"Elem{order}", [f"e{i}" for i in range(order)], ctx=ctx)
    op = z3.Function("op", sort, sort, sort)
    index = {str(e): i for i, e in enumerate(elems)}

    solver = z3.Solver(ctx=ctx)
    for x in elems:
        solver.add(op(elems[0], x) == x)
    for x, y in itertools.product(elems, repeat=2):
        solver.add(op(x, y) == op(y, x))
    for x, y, z in itertools.product(elems, repeat=3):
        solver.add(op(op(x, y), z) == op(x, op(y, z)))

    cells = _free_cells(order)
    found: List[Table] = []
    while solver.check() == z3.sat:
        model = solver.model()
        table = [
            [index[str(model.eval(op(x, y), model_completion=True))] for y in elems]
            for x in elems
        ]
        found.append(tuple(tuple(row) for row in table))
        if not cells:
            break
        block = [op(elems[i], elems[j]) != elems[table[i][j]] for i, j in cells]
        solver.add(z3.Or(block))
    SMT_LOG.debug(f"z3 found {len(found)} labelled tables of order {order}")
    return found


def canonical_form(table: Table) -> Table:
    """Lexicographically minimal relabelling that keeps 0 fixed."""
    order = len(table)
    best = None
    for perm in itertools.permutations(range(1, order)):
        sigma = (0,) + perm
        inv = [0] * order
        for old, new in enumerate(sigma):
            inv[new] = old
        relabelled = tuple(
            tuple(sigma[table[inv[x]][inv[y]]] for y in range(order))
            for x in range(order)
        )
        if best is None or relabelled < best:
            best = relabelled
    return best


def _cache_path(order: int) -> str:
    return os.path.join(HYPERSYM_CACHE_DIR, f"monoids-{order}.json")


def enumerate_monoids(
    order: int,
    allow_order5: bool = False,
    method: str = "backtrack",
    workers: int = HYPERSYM_ENUM_WORKERS,
    cache: bool = False,
) -> List[FiniteCommutativeMonoid]:
    limit = ENUM_LARGE_ORDER if allow_order5 else ENUM_MAX_ORDER
    if order < 1 or order > limit:
        raise OrderTooLarge(order, limit)

    if cache and os.path.exists(_cache_path(order)):
        ENUM_LOG.info(f"Reading order-{order} classes from {_cache_path(order)}")
        with open(_cache_path(order), "r") as f:
            tables = [tuple(tuple(row) for row in t) for t in json.load(f)]
    else:
        if method == "backtrack":
            if workers > 1 and order > 1:
                with mp.Pool(workers) as pool:
                    branches = pool.starmap(
                        _backtrack, [(order, (v,)) for v in range(order)]
                    )
                raw = [t for branch in branches for t in branch]
            else:
                raw = _backtrack(order)
        elif method == "smt":
            raw = _smt_tables(order)
        else:
            raise ValueError(
                f"Unknown enumeration method `{method}`; use backtrack or smt"
            )
        ENUM_LOG.info(f"{len(raw)} labelled tables of order {order} ({method})")
        tables = sorted({canonical_form(t) for t in raw})
        if cache:
            os.makedirs(HYPERSYM_CACHE_DIR, exist_ok=True)
            with open(_cache_path(order), "w") as f:
                json.dump(tables, f)

    ENUM_LOG.info(f"{len(tables)} commutative monoids of order {order} up to isomorphism")
    return [
        FiniteCommutativeMonoid(t, name=f"M{order}.{k}") for k, t in enumerate(tables)
    ]


FLAGS = ("total", "share", "cancellative", "idempotent", "s_is_group")


@dataclass
class ClassificationRecord:
    monoid: FiniteCommutativeMonoid
    total: bool
    share: bool
    cancellative: bool
    idempotent: bool
    # None when s(B) is not a hypergroup.
    s_is_group: Optional[bool]
    # Axioms failed by the forced symmetrization; None unless the order is total.
    forced_failures: Optional[List[int]] = None
    certificates: Dict[str, str] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return str(self.monoid)

    def flags(self) -> Tuple:
        return tuple(getattr(self, f) for f in FLAGS)

    def row(self) -> Dict[str, str]:
        ret = {"monoid": self.name, "table": json.dumps(self.monoid.table.tolist())}
        for f in FLAGS:
            ret[f] = "" if getattr(self, f) is None else str(getattr(self, f)).lower()
        failures = self.forced_failures
        ret["forced_failures"] = "" if failures is None else " ".join(map(str, failures))
        ret["certificates"] = "; ".join(
            f"{k}: {v}" for k, v in sorted(self.certificates.items())
        )
        return ret


def classify(M: FiniteCommutativeMonoid) -> ClassificationRecord:
    total = is_total(M)
    share = check_share(M)
    cancel = is_cancellative(M)
    idem = is_idempotent(M)

    certificates = {}
    if not total:
        certificates["total"] = f"incomparable {total.counterexample}"
    if share is not None:
        certificates["share"] = f"no splitting element for {share}"
    if not cancel:
        x, y, a = cancel.witness
        certificates["cancellative"] = f"{x} + {a} = {y} + {a}"
    if not idem:
        (x,) = idem.witness
        certificates["idempotent"] = f"{x} + {x} != {x}"

    forced_failures = None
    if total:
        forced_failures = check_axioms(symmetrize(M, force=True).hypergroup).failed()
        if forced_failures:
            certificates["hypergroup"] = f"forced s(B) fails axioms {forced_failures}"

    s_is_group = None
    if share is None:
        s_is_group = is_group(symmetrize(M).hypergroup)

    return ClassificationRecord(
        monoid=M,
        total=total.total,
        share=share is None,
        cancellative=cancel.holds,
        idempotent=idem.holds,
        s_is_group=s_is_group,
        forced_failures=forced_failures,
        certificates=certificates,
    )


@dataclass
class Survey:
    order: int
    records: List[ClassificationRecord]

    def counts(self) -> Counter:
        return Counter(r.flags() for r in self.records)

    def total_without_share(self) -> List[ClassificationRecord]:
        return [r for r in self.records if r.total and not r.share]

    def pretty(self) -> str:
        lines = [f"order {self.order}: {len(self.records)} classes"]
        header = " ".join(f"{f:>12}" for f in FLAGS)
        lines.append(f"{header} {'count':>6}")
        for flags, count in sorted(self.counts().items(), key=lambda kv: str(kv[0])):
            cols = " ".join(f"{str(v).lower():>12}" for v in flags)
            lines.append(f"{cols} {count:>6}")
        lines.append(f"total but not splitting: {len(self.total_without_share())}")
        return "\n".join(lines) + "\n"

    def write_csv(self, path: os.PathLike):
        rows = [r.row() for r in self.records]
        with open(path, "w", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=list(rows[0].keys()))
            writer.writeheader()
            writer.writerows(rows)


def survey(order: int, **kwargs) -> Survey:
    monoids = enumerate_monoids(order, **kwargs)
    return Survey(order, [classify(M) for M in monoids])


def theorem_violations(records: Iterable[ClassificationRecord]) -> List[str]:
    """Instances contradicting the characterization of when s(B) is a hypergroup."""
    ret = []
    for r in records:
        forced_ok = r.total and not r.forced_failures
        if r.share != forced_ok:
            ret.append(f"{r.name}: share={r.share} but forced hypergroup={forced_ok}")
        if r.share and not r.total:
            ret.append(f"{r.name}: splitting but not total")
        if r.share and r.s_is_group != r.cancellative:
            ret.append(f"{r.name}: group={r.s_is_group} but cancellative={r.cancellative}")
    if ret:
        ENUM_LOG.error(f"{len(ret)} instances contradict the classification")
    return ret
