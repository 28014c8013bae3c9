"""Symmetrization s(B) of a commutative monoid B.

s(B) is B x {-1, +1} modulo (a, +1) ~ (b, -1) whenever a + b = 0, with

    (a, +1) + (b, +1) = {(a + b, +1)}
    (a, -1) + (b, -1) = {(a + b, -1)}
    (a, +1) + (b, -1) = {(z, +1) | z + b = a}  u  {(z, -1) | z + a = b}

It is a canonical hypergroup exactly when B has the splitting property
checked by `check_share`: x + y = u + v implies some z with either
x + z = u and z + v = y, or x = u + z and v = z + y.
"""

import itertools
import json
import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Sequence, Set, Tuple

import numpy as np

from hypersym.abstract.hypergroup import (
    FiniteHypergroup,
    HypergroupMorphism,
    SignedElement,
    check_morphism,
    group_hypergroup,
    is_group,
    is_isomorphism,
    negation,
)
from hypersym.abstract.monoid import (
    FiniteCommutativeMonoid,
    SolvableMonoid,
    is_cancellative,
    is_total,
)
from hypersym.error import (
    NotAdditive,
    NotBalanced,
    NotTotal,
    SanityCheck,
    ShareFailed,
)
from hypersym.logging import SYM_LOG
from hypersym.macro import dispatch


class ShareCase(Enum):
    # x + z = u and z + v = y
    CASE1 = 1
    # x = u + z and v = z + y
    CASE2 = 2


@dataclass(frozen=True)
class ShareWitness:
    case: ShareCase
    z: int

    def holds(self, M: SolvableMonoid, x: int, y: int, u: int, v: int) -> bool:
        if self.case is ShareCase.CASE1:
            return M.try_add(x, self.z) == u and M.try_add(self.z, v) == y
        return M.try_add(u, self.z) == x and M.try_add(self.z, y) == v


@dataclass(frozen=True)
class ShareCounterexample:
    x: int
    y: int
    u: int
    v: int

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.x, self.y, self.u, self.v)

    def recheck(self, M: SolvableMonoid) -> bool:
        """True iff this is still a counterexample under an independent z scan."""
        if M.try_add(self.x, self.y) != M.try_add(self.u, self.v):
            return False
        return all(
            not ShareWitness(case, z).holds(M, *self.as_tuple())
            for z in M.elements()
            for case in ShareCase
        )

    def __str__(self) -> str:
        return f"{self.x} + {self.y} = {self.u} + {self.v}"


def share_witness(
    M: SolvableMonoid, x: int, y: int, u: int, v: int
) -> Optional[ShareWitness]:
    """First witness scanning z ascending, Case1 before Case2 for each z."""
    lhs, rhs = M.add(x, y), M.add(u, v)
    if lhs != rhs:
        raise NotBalanced(x, y, u, v)
    for z in M.elements():
        for case in ShareCase:
            witness = ShareWitness(case, z)
            if witness.holds(M, x, y, u, v):
                return witness
    return None


@dispatch(FiniteCommutativeMonoid)
def check_share(M):
    """None when the splitting property holds, else the lexicographically first failure."""
    t = M.table
    n = M.order
    # onehot[p, q, r]: p + q = r
    onehot = (t[:, :, None] == np.arange(n)).astype(np.int64)
    # case1[x, y, u, v]: exists z, x + z = u and z + v = y
    case1 = np.einsum("xzu,zvy->xyuv", onehot, onehot) > 0
    # case2[x, y, u, v]: exists z, u + z = x and z + y = v
    case2 = np.einsum("uzx,zyv->xyuv", onehot, onehot) > 0
    balanced = t[:, :, None, None] == t[None, None, :, :]
    bad = np.argwhere(balanced & ~(case1 | case2))
    if len(bad):
        return ShareCounterexample(*(int(v) for v in bad[0]))
    return None


@dispatch(SolvableMonoid)
def check_share(M):
    elems = M.elements()
    sums: Dict[int, List[Tuple[int, int]]] = {}
    for x, y in itertools.product(elems, repeat=2):
        s = M.try_add(x, y)
        if s is not None:
            sums.setdefault(s, []).append((x, y))
    for x, y, u, v in sorted(
        (x, y, u, v)
        for pairs in sums.values()
        for (x, y), (u, v) in itertools.product(pairs, repeat=2)
    ):
        if share_witness(M, x, y, u, v) is None:
            return ShareCounterexample(x, y, u, v)
    return None


def canonical(M: SolvableMonoid, a: int, sign: int) -> SignedElement:
    """Negatives of invertible elements are rewritten as positives of their inverse."""
    if sign < 0:
        inv = M.inverse(a)
        if inv is not None:
            return SignedElement(inv, 1)
    return SignedElement(a, sign)


def raw_sum(
    M: SolvableMonoid, p: SignedElement, q: SignedElement
) -> Set[SignedElement]:
    """Hypersum of two representatives, before passing to classes."""
    if p.sign == q.sign:
        return {SignedElement(M.add(p.magnitude, q.magnitude), p.sign)}
    if p.sign < 0:
        p, q = q, p
    a, b = p.magnitude, q.magnitude
    ret = {SignedElement(z, 1) for z in M.div(a, b)}
    ret |= {SignedElement(z, -1) for z in M.div(b, a)}
    return ret


@dataclass
class SymmetrizationResult:
    monoid: FiniteCommutativeMonoid
    hypergroup: FiniteHypergroup
    # i : B -> s(B), b |-> class of (b, +1)
    injection: Tuple[int, ...]
    class_map: Dict[SignedElement, int] = field(repr=False)
    representatives: List[SignedElement] = field(repr=False)

    def index(self, a: int, sign: int = 1) -> int:
        return self.class_map[SignedElement(a, sign)]

    def to_dict(self) -> dict:
        return {**self.hypergroup.to_dict(), "injection": list(self.injection)}

    def dump(self, path):
        self.hypergroup.dump(path, injection=list(self.injection))


@dispatch(FiniteCommutativeMonoid)
def symmetrize(M, force=False):
    if force:
        report = is_total(M)
        if not report:
            raise NotTotal(*report.counterexample)
    else:
        cex = check_share(M)
        if cex is not None:
            raise ShareFailed(cex)

    reps: List[SignedElement] = []
    for sign in (1, -1):
        for a in M.elements():
            rep = canonical(M, a, sign)
            if rep not in reps:
                reps.append(rep)
    index = {rep: i for i, rep in enumerate(reps)}
    class_map = {
        SignedElement(a, sign): index[canonical(M, a, sign)]
        for sign in (1, -1)
        for a in M.elements()
    }

    table = []
    for p in reps:
        row = []
        for q in reps:
            cell = {class_map[s] for s in raw_sum(M, p, q)}
            SanityCheck.true(len(cell) > 0, f"Empty hypersum {p} + {q} in {M}")
            row.append(sorted(cell))
        table.append(row)

    labels = [r.label(M.zero) for r in reps]
    H = FiniteHypergroup(labels, index[SignedElement(M.zero)], table)
    injection = tuple(class_map[SignedElement(a, 1)] for a in M.elements())
    SanityCheck.eq(len(set(injection)), M.order, f"Canonical map of {M} is not injective")
    SYM_LOG.debug(f"s({M}) has {H.size} elements")
    return SymmetrizationResult(M, H, injection, class_map, reps)


class WindowedSymmetrization:
    """Evaluation-only view of s(B) for a windowed monoid."""

    def __init__(self, monoid: SolvableMonoid):
        self.monoid = monoid

    def canonical(self, e: SignedElement) -> SignedElement:
        return canonical(self.monoid, e.magnitude, e.sign)

    def elements(self, bound: Optional[int] = None) -> List[SignedElement]:
        ret = []
        for sign in (1, -1):
            for a in self.monoid.elements(bound):
                rep = self.canonical(SignedElement(a, sign))
                if rep not in ret:
                    ret.append(rep)
        return ret

    def hypersum(self, x: SignedElement, y: SignedElement) -> List[SignedElement]:
        """Raises `WindowOverflow` when the sum leaves the window."""
        members = {self.canonical(s) for s in raw_sum(self.monoid, x, y)}
        if not members:
            raise NotTotal(x.magnitude, y.magnitude)
        return sorted(members)

    def label(self, e: SignedElement) -> str:
        return e.label(self.monoid.zero)


@dispatch(SolvableMonoid)
def symmetrize(M, force=False):
    return WindowedSymmetrization(M)


# ---------------------------------------------------------------------------
#                        Grothendieck group
# ---------------------------------------------------------------------------


@dataclass
class GrothendieckGroup:
    # classes[i]: all pairs (a, b) standing for a - b in class i; class 0 is zero
    classes: List[Tuple[Tuple[int, int], ...]]
    # table[i][j] is the class of the sum, -1 when it leaves the window
    table: np.ndarray
    # embedding[a] = class of (a, 0)
    embedding: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.classes)

    @property
    def is_trivial(self) -> bool:
        return self.size == 1

    def labels(self) -> List[str]:
        return ["0"] + [f"[{a}-{b}]" for (a, b), *_ in self.classes[1:]]

    def class_of(self, a: int, b: int) -> int:
        for i, members in enumerate(self.classes):
            if (a, b) in members:
                return i
        raise KeyError((a, b))

    def to_hypergroup(self) -> FiniteHypergroup:
        SanityCheck.true(
            bool((self.table >= 0).all()), "A windowed group has no closed table"
        )
        return group_hypergroup(self.labels(), 0, self.table)

    def to_dict(self) -> dict:
        return {
            "elements": self.labels(),
            "neutral": 0,
            "table": self.table.tolist(),
            "embedding": list(self.embedding),
        }

    def dump(self, path: os.PathLike):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)


def _order_classes(labels: Sequence[int], pairs: Sequence[Tuple[int, int]], zero_pair):
    """Group `pairs` by `labels`, with the class of `zero_pair` first."""
    grouped: Dict[int, List[Tuple[int, int]]] = {}
    for label, pair in zip(labels, pairs):
        grouped.setdefault(label, []).append(pair)
    zero_label = labels[pairs.index(zero_pair)]
    order = [zero_label] + sorted(k for k in grouped if k != zero_label)
    return [tuple(grouped[k]) for k in order]


@dispatch(FiniteCommutativeMonoid)
def grothendieck(M, bound=None):
    t = M.table
    n = M.order
    e = M.zero
    # stable[p, q]: p + k = q + k for some k
    stable = (t[:, None, :] == t[None, :, :]).any(axis=2)
    # rel[a, b, c, d]: (a, b) ~ (c, d), i.e. a + d and c + b are stably equal
    rel = stable[t[:, None, None, :], t[None, :, :, None]].reshape(n * n, n * n)
    labels = rel.argmax(axis=1)
    SanityCheck.true(
        bool((rel == (labels[:, None] == labels[None, :])).all()),
        f"Stable equality on pairs of {M} is not an equivalence",
    )
    pairs = [(a, b) for a in range(n) for b in range(n)]
    classes = _order_classes(labels.tolist(), pairs, (e, e))
    class_of = {pair: i for i, members in enumerate(classes) for pair in members}

    table = np.empty((len(classes), len(classes)), dtype=np.int64)
    for i, ((a, b), *_) in enumerate(classes):
        for j, ((c, d), *_) in enumerate(classes):
            table[i, j] = class_of[(M.add(a, c), M.add(b, d))]
    embedding = tuple(class_of[(a, e)] for a in range(n))
    SYM_LOG.debug(f"Grothendieck group of {M} has {len(classes)} elements")
    return GrothendieckGroup(classes, table, embedding)


@dispatch(SolvableMonoid)
def grothendieck(M, bound=None):
    """Pairs (a, b) with a, b <= `bound` (default: the whole window) and a + b
    inside the window.

    For two such pairs with a + d = c + b, both sides are at most
    ((a + b) + (c + d)) / 2, so equal differences are never split by the
    window. nat:W gives the 2W + 1 integers in [-W, W].
    """
    elems = M.elements(bound)
    e = M.zero

    def related(p, q) -> bool:
        lhs, rhs = M.try_add(p[0], q[1]), M.try_add(q[0], p[1])
        if lhs is None or rhs is None:
            return False
        return any(
            M.try_add(lhs, k) is not None and M.try_add(lhs, k) == M.try_add(rhs, k)
            for k in M.elements()
        )

    pairs = [(a, b) for a in elems for b in elems if M.try_add(a, b) is not None]
    reps: List[Tuple[int, int]] = []
    labels = []
    for p in pairs:
        for i, r in enumerate(reps):
            if related(p, r):
                labels.append(i)
                break
        else:
            labels.append(len(reps))
            reps.append(p)
    classes = _order_classes(labels, pairs, (e, e))
    class_of = {pair: i for i, members in enumerate(classes) for pair in members}

    def lightest(members):
        return min(members, key=lambda ab: (M.sum(ab), ab))

    heads = [lightest(members) for members in classes]

    def class_index(p) -> int:
        if None in p:
            return -1
        if p in class_of:
            return class_of[p]
        for i, head in enumerate(heads):
            if related(p, head):
                return i
        return -1

    table = np.full((len(classes), len(classes)), -1, dtype=np.int64)
    for i, (a, b) in enumerate(heads):
        for j, (c, d) in enumerate(heads):
            table[i, j] = class_index((M.try_add(a, c), M.try_add(b, d)))
    embedding = tuple(class_of[(a, e)] for a in elems)
    return GrothendieckGroup(classes, table, embedding)


@dataclass
class GrothendieckComparison:
    cancellative: bool
    s_is_group: bool
    # canonical isomorphism s(B) -> G when s(B) is a group
    isomorphism: Optional[Tuple[int, ...]] = None
    cancellation_witness: Optional[Tuple[int, ...]] = None

    @property
    def agrees(self) -> bool:
        return self.cancellative == self.s_is_group and (
            self.isomorphism is not None
        ) == self.s_is_group


def canonical_group_map(
    sym: SymmetrizationResult, G: GrothendieckGroup
) -> Tuple[int, ...]:
    """(a, +1) |-> [a - 0] and (a, -1) |-> [0 - a]."""
    e = sym.monoid.zero
    mapping = []
    for rep in sym.representatives:
        pair = (rep.magnitude, e) if rep.sign > 0 else (e, rep.magnitude)
        mapping.append(G.class_of(*pair))
    return tuple(mapping)


def compare_grothendieck(M: FiniteCommutativeMonoid) -> GrothendieckComparison:
    sym = symmetrize(M)
    cancel = is_cancellative(M)
    ret = GrothendieckComparison(
        cancellative=cancel.holds,
        s_is_group=is_group(sym.hypergroup),
        cancellation_witness=cancel.witness,
    )
    if ret.s_is_group:
        G = grothendieck(M)
        mapping = canonical_group_map(sym, G)
        if is_isomorphism(sym.hypergroup, G.to_hypergroup(), mapping):
            ret.isomorphism = mapping
    SanityCheck.true(ret.agrees, f"Group comparison is inconsistent on {M}: {ret}")
    return ret


# ---------------------------------------------------------------------------
#                        Universal property
# ---------------------------------------------------------------------------


def additivity_witness(
    M: FiniteCommutativeMonoid, K: FiniteHypergroup, g: Sequence[int]
) -> Optional[NotAdditive]:
    if g[M.zero] != K.neutral:
        return NotAdditive((M.zero,), "g(0) is not the neutral element")
    for a in M.elements():
        for b in M.elements():
            if g[M.add(a, b)] not in K.cell(g[a], g[b]):
                return NotAdditive((a, b), "g(a + b) not in g(a) + g(b)")
    return None


def extend_additive_map(
    M: FiniteCommutativeMonoid,
    K: FiniteHypergroup,
    g: Sequence[int],
    sym: Optional[SymmetrizationResult] = None,
) -> HypergroupMorphism:
    """The extension h(a, +1) = g(a), h(a, -1) = -g(a)."""
    err = additivity_witness(M, K, g)
    if err is not None:
        raise err
    if sym is None:
        sym = symmetrize(M)
    neg = negation(K)
    mapping = [
        g[r.magnitude] if r.sign > 0 else neg[g[r.magnitude]]
        for r in sym.representatives
    ]
    for a in M.elements():
        a_inv = M.inverse(a)
        if a_inv is not None:
            SanityCheck.eq(neg[g[a]], g[a_inv], f"-g({a}) != g({a_inv}) for additive g")
    return HypergroupMorphism(sym.hypergroup, K, tuple(mapping))


@dataclass
class UniversalityReport:
    n_maps: int = 0
    n_additive: int = 0
    n_morphisms: int = 0
    # (g, reason) for every additive g without exactly one factoring morphism
    failures: List[Tuple[Tuple[int, ...], str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def check_universal(
    M: FiniteCommutativeMonoid, K: FiniteHypergroup
) -> UniversalityReport:
    sym = symmetrize(M)
    S = sym.hypergroup
    report = UniversalityReport()

    factorizations: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    others = [x for x in range(S.size) if x != S.neutral]
    for images in itertools.product(range(K.size), repeat=len(others)):
        mapping = [K.neutral] * S.size
        for x, v in zip(others, images):
            mapping[x] = v
        h = HypergroupMorphism(S, K, tuple(mapping))
        if check_morphism(h):
            report.n_morphisms += 1
            g = tuple(h(i) for i in sym.injection)
            factorizations.setdefault(g, []).append(h.mapping)

    for g in itertools.product(range(K.size), repeat=M.order):
        report.n_maps += 1
        if additivity_witness(M, K, g) is not None:
            continue
        report.n_additive += 1
        h = extend_additive_map(M, K, g, sym=sym)
        if not check_morphism(h):
            report.failures.append((g, "extension is not a morphism"))
            continue
        found = factorizations.get(g, [])
        if found != [h.mapping]:
            report.failures.append((g, f"{len(found)} factoring morphisms"))
    SYM_LOG.info(
        f"Universality over {M} -> {K.size}-element target: "
        f"{report.n_additive}/{report.n_maps} additive maps, {len(report.failures)} failures"
    )
    return report


def quotient_sound(M: SolvableMonoid, a: int, b: int) -> bool:
    """(a, +1) + (b, -1) and (a, +1) + (b', +1) agree on classes when b' = -b in B."""
    b_inv = M.inverse(b)
    if b_inv is None:
        return True
    pos = SignedElement(a, 1)
    lhs = raw_sum(M, pos, SignedElement(b, -1))
    rhs = raw_sum(M, pos, SignedElement(b_inv, 1))
    return {canonical(M, s.magnitude, s.sign) for s in lhs} == {
        canonical(M, s.magnitude, s.sign) for s in rhs
    }
