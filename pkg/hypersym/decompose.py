"""Decompositions a = a_1 + ... + a_n and their refinement order.

A decomposition `fine` refines `coarse` when the positions of `fine` split
into consecutive non-empty intervals, one per part of `coarse`, each
summing to that part. The splitting property of the monoid holds iff any
two decompositions of the same element have a common refinement;
`common_refinement` builds one by induction on the total number of parts.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from hypersym.abstract.monoid import FiniteCommutativeMonoid, SolvableMonoid
from hypersym.error import (
    InputCheck,
    InputError,
    InvalidCertificate,
    SanityCheck,
    ShareFailed,
    TargetMismatch,
    WindowOverflow,
)
from hypersym.logging import DECOMP_LOG
from hypersym.symmetrize import (
    ShareCase,
    ShareCounterexample,
    ShareWitness,
    check_share,
    share_witness,
)


@dataclass(frozen=True)
class Decomposition:
    target: int
    parts: Tuple[int, ...]

    @staticmethod
    def of(M: SolvableMonoid, parts: Sequence[int]) -> "Decomposition":
        parts = tuple(int(p) for p in parts)
        if not parts:
            raise ValueError("A decomposition needs at least one part")
        return Decomposition(M.sum(parts), parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


@dataclass(frozen=True)
class RefinementCertificate:
    # Interval i of the fine list is parts[cuts[i]:cuts[i + 1]].
    cuts: Tuple[int, ...]

    def intervals(self) -> List[Tuple[int, int]]:
        return list(zip(self.cuts[:-1], self.cuts[1:]))

    def verify(
        self, M: SolvableMonoid, fine: Decomposition, coarse: Decomposition
    ) -> bool:
        if len(self.cuts) != len(coarse) + 1:
            return False
        if self.cuts[0] != 0 or self.cuts[-1] != len(fine):
            return False
        for (start, stop), part in zip(self.intervals(), coarse.parts):
            if stop <= start:
                return False
            try:
                if M.sum(fine.parts[start:stop]) != part:
                    return False
            except WindowOverflow:
                return False
        return True

    def __str__(self) -> str:
        return " | ".join(f"[{start + 1}..{stop}]" for start, stop in self.intervals())


@dataclass(frozen=True)
class CommonRefinement:
    decomposition: Decomposition
    fine_of_first: RefinementCertificate
    fine_of_second: RefinementCertificate


def parse_decomposition(M: SolvableMonoid, text) -> Decomposition:
    """`"2,3"` or an already split sequence such as `[2, 3]`."""
    if isinstance(text, str):
        tokens = [tok.strip() for tok in text.split(",")]
    else:
        tokens = [str(tok).strip() for tok in text]
    InputCheck.true(
        len(tokens) > 0 and all(tok.isdigit() for tok in tokens),
        f"Invalid decomposition `{text}`; expect comma-separated element indices",
    )
    parts = [int(tok) for tok in tokens]
    InputCheck.true(
        all(M.contains(p) for p in parts),
        f"Decomposition `{text}` leaves the carrier of {M}",
    )
    try:
        return Decomposition.of(M, parts)
    except WindowOverflow as e:
        raise InputError(
            f"Decomposition `{text}` sums past {M}: {e}", e.witness
        ) from e


def refines(
    M: SolvableMonoid, fine: Decomposition, coarse: Decomposition
) -> Optional[RefinementCertificate]:
    if fine.target != coarse.target:
        raise TargetMismatch(fine.target, coarse.target)
    n, m = len(fine), len(coarse)

    def interval_sum(start: int, stop: int) -> Optional[int]:
        try:
            return M.sum(fine.parts[start:stop])
        except WindowOverflow:
            return None

    # Greedy matching of interval sums is unsound without cancellation.
    @lru_cache(maxsize=None)
    def search(i: int, j: int) -> Optional[Tuple[int, ...]]:
        if j == m:
            return (i,) if i == n else None
        for stop in range(i + 1, n - (m - j - 1) + 1):
            if interval_sum(i, stop) == coarse.parts[j]:
                rest = search(stop, j + 1)
                if rest is not None:
                    return (i,) + rest
        return None

    cuts = search(0, 0)
    return None if cuts is None else RefinementCertificate(cuts)


def _split(
    M: SolvableMonoid, a: Tuple[int, ...], b: Tuple[int, ...]
) -> Tuple[int, ...]:
    if a == b:
        return a
    if len(a) == 1:
        return b
    if len(b) == 1:
        return a

    x, y = M.sum(a[:-1]), a[-1]
    u, v = M.sum(b[:-1]), b[-1]
    witness = share_witness(M, x, y, u, v)
    if witness is None:
        raise ShareFailed(ShareCounterexample(x, y, u, v))
    z = witness.z

    if len(a) + len(b) <= 4:
        if witness.case is ShareCase.CASE1:
            return (x, z, v)
        return (u, z, y)

    # x + z = u and z + v = y: refine (a_1..a_{n-1}, z) against b_1..b_{m-1}, add v
    if witness.case is ShareCase.CASE1:
        return _split(M, a[:-1] + (z,), b[:-1]) + (v,)
    # x = u + z and v = z + y: refine a_1..a_{n-1} against (b_1..b_{m-1}, z), add y
    return _split(M, a[:-1], b[:-1] + (z,)) + (y,)


def common_refinement(
    M: SolvableMonoid, d1: Decomposition, d2: Decomposition
) -> CommonRefinement:
    if d1.target != d2.target:
        raise TargetMismatch(d1.target, d2.target)
    if isinstance(M, FiniteCommutativeMonoid):
        cex = check_share(M)
        if cex is not None:
            raise ShareFailed(cex)

    parts = _split(M, d1.parts, d2.parts)
    common = Decomposition.of(M, parts)
    SanityCheck.eq(common.target, d1.target, f"Refinement of {d1} changed the target")
    cert1, cert2 = refines(M, common, d1), refines(M, common, d2)
    SanityCheck.not_none(cert1, f"{common} does not refine {d1}")
    SanityCheck.not_none(cert2, f"{common} does not refine {d2}")
    DECOMP_LOG.debug(f"Common refinement of ({d1}) and ({d2}) in {M}: {common}")
    return CommonRefinement(common, cert1, cert2)


def witness_from_refinement(
    M: SolvableMonoid, d1: Decomposition, d2: Decomposition, common: CommonRefinement
) -> ShareWitness:
    """Recover a splitting witness for x + y = u + v from a common refinement."""
    if len(d1) != 2 or len(d2) != 2:
        raise ValueError("Expect two decompositions with two parts each")
    fine = common.decomposition
    for cert, coarse in ((common.fine_of_first, d1), (common.fine_of_second, d2)):
        if not cert.verify(M, fine, coarse):
            raise InvalidCertificate(
                f"{cert} does not certify that {fine} refines {coarse}"
            )

    (x, y), (u, v) = d1.parts, d2.parts
    k, l = common.fine_of_first.cuts[1], common.fine_of_second.cuts[1]
    if k < l:
        witness = ShareWitness(ShareCase.CASE1, M.sum(fine.parts[k:l]))
    elif k > l:
        witness = ShareWitness(ShareCase.CASE2, M.sum(fine.parts[l:k]))
    else:
        witness = ShareWitness(ShareCase.CASE1, M.zero)
    SanityCheck.true(
        witness.holds(M, x, y, u, v), f"Extracted {witness} fails on {x}+{y}={u}+{v}"
    )
    return witness


def random_decomposition(
    M: SolvableMonoid, target: int, length: int, rng: random.Random
) -> Optional[Decomposition]:
    """A uniform-ish decomposition of `target` into `length` parts, if one is found."""
    parts: List[int] = []
    prefix = M.zero
    for _ in range(length - 1):
        candidates = [
            p
            for p in M.elements()
            if M.try_add(prefix, p) is not None and M.leq(M.add(prefix, p), target)
        ]
        if not candidates:
            return None
        p = rng.choice(candidates)
        parts.append(p)
        prefix = M.add(prefix, p)
    last = M.div(target, prefix)
    if not last:
        return None
    parts.append(rng.choice(last))
    return Decomposition.of(M, parts)


def random_decomposition_pair(
    M: SolvableMonoid,
    rng: random.Random,
    max_len: int = 4,
    max_part: Optional[int] = None,
) -> Tuple[Decomposition, Decomposition]:
    """Two decompositions of one element with at most `max_len` parts each.

    Parts of the first decomposition are drawn up to `max_part`; draws whose
    sum leaves a window are discarded.
    """
    pool = M.elements(max_part)
    while True:
        parts = [rng.choice(pool) for _ in range(rng.randint(1, max_len))]
        try:
            first = Decomposition.of(M, parts)
        except WindowOverflow:
            continue
        second = random_decomposition(M, first.target, rng.randint(1, max_len), rng)
        if second is not None:
            return first, second
