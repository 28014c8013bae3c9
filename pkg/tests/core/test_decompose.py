import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersym.builders import chain_max, naturals_window, product
from hypersym.decompose import (
    CommonRefinement,
    Decomposition,
    RefinementCertificate,
    common_refinement,
    parse_decomposition,
    random_decomposition,
    random_decomposition_pair,
    refines,
    witness_from_refinement,
)
from hypersym.error import InputError, InvalidCertificate, ShareFailed, TargetMismatch


def test_parse():
    N = naturals_window(10)
    assert parse_decomposition(N, "2,3") == Decomposition(5, (2, 3))
    assert parse_decomposition(N, " 4 , 1") == Decomposition(5, (4, 1))
    assert parse_decomposition(N, [4, 1]).parts == (4, 1)
    for bad in ("", "2,,3", "a,b", "-1,2", "11"):
        with pytest.raises(InputError):
            parse_decomposition(N, bad)


def test_naturals_example():
    N = naturals_window(10)
    d1, d2 = Decomposition.of(N, [2, 3]), Decomposition.of(N, [4, 1])
    common = common_refinement(N, d1, d2)
    assert common.decomposition.parts == (2, 2, 1)
    assert common.fine_of_first.cuts == (0, 1, 3)
    assert common.fine_of_second.cuts == (0, 2, 3)
    assert str(common.fine_of_first) == "[1..1] | [2..3]"

    w = witness_from_refinement(N, d1, d2, common)
    assert w.z == 2
    assert w.holds(N, 2, 3, 4, 1)


def test_equal_decompositions_refine_to_themselves():
    C = chain_max(4)
    d = Decomposition.of(C, [1, 3, 2])
    common = common_refinement(C, d, d)
    assert common.decomposition == d
    assert common.fine_of_first.cuts == (0, 1, 2, 3)


def test_refinement_is_directional():
    N = naturals_window(10)
    fine = Decomposition.of(N, [2, 2, 1])
    coarse = Decomposition.of(N, [4, 1])
    assert refines(N, fine, coarse) is not None
    assert refines(N, coarse, fine) is None


def test_refines_backtracks_without_cancellation():
    C = chain_max(3)
    # the shortest first interval [2] leaves 2, 1 for the part 1
    fine = Decomposition.of(C, [2, 2, 1])
    coarse = Decomposition.of(C, [2, 1])
    cert = refines(C, fine, coarse)
    assert cert.cuts == (0, 2, 3)
    assert cert.verify(C, fine, coarse)


def test_target_mismatch():
    N = naturals_window(10)
    d1, d2 = Decomposition.of(N, [2, 3]), Decomposition.of(N, [4, 2])
    with pytest.raises(TargetMismatch):
        common_refinement(N, d1, d2)
    with pytest.raises(TargetMismatch):
        refines(N, d1, d2)


def test_no_refinement_without_splitting():
    P = product(chain_max(2), chain_max(2))
    d1, d2 = Decomposition.of(P, [1, 2]), Decomposition.of(P, [2, 1])
    with pytest.raises(ShareFailed):
        common_refinement(P, d1, d2)


def test_invalid_certificate():
    N = naturals_window(10)
    d1, d2 = Decomposition.of(N, [2, 3]), Decomposition.of(N, [4, 1])
    common = common_refinement(N, d1, d2)
    forged = CommonRefinement(
        common.decomposition, RefinementCertificate((0, 2, 3)), common.fine_of_second
    )
    with pytest.raises(InvalidCertificate):
        witness_from_refinement(N, d1, d2, forged)
    with pytest.raises(ValueError):
        witness_from_refinement(N, d1, common.decomposition, common)


def test_random_decomposition_hits_target():
    rng = random.Random(7)
    C = chain_max(6)
    for _ in range(50):
        d = random_decomposition(C, 4, rng.randint(1, 4), rng)
        assert d is not None
        assert d.target == 4


@pytest.mark.parametrize(
    "M, max_part", [(chain_max(6), None), (naturals_window(30), 7)], ids=["chain", "nat"]
)
def test_random_pairs_have_common_refinements(M, max_part):
    rng = random.Random(2024)
    n_pairs = 0
    for _ in range(200):
        d1, d2 = random_decomposition_pair(M, rng, max_len=4, max_part=max_part)
        assert d1.target == d2.target
        common = common_refinement(M, d1, d2)
        assert refines(M, common.decomposition, d1) is not None
        assert refines(M, common.decomposition, d2) is not None
        if len(d1) == 2 and len(d2) == 2:
            (x, y), (u, v) = d1.parts, d2.parts
            assert witness_from_refinement(M, d1, d2, common).holds(M, x, y, u, v)
            n_pairs += 1
    assert n_pairs > 0


parts = st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=4)


@given(parts, parts)
@settings(max_examples=100, deadline=None)
def test_chain_refinement_property(lhs, rhs):
    C = chain_max(6)
    d1, d2 = Decomposition.of(C, lhs), Decomposition.of(C, rhs)
    if d1.target != d2.target:
        with pytest.raises(TargetMismatch):
            common_refinement(C, d1, d2)
        return
    common = common_refinement(C, d1, d2)
    assert common.fine_of_first.verify(C, common.decomposition, d1)
    assert common.fine_of_second.verify(C, common.decomposition, d2)


@given(parts)
@settings(max_examples=50, deadline=None)
def test_every_decomposition_refines_its_sum(ps):
    N = naturals_window(30)
    d = Decomposition.of(N, ps)
    cert = refines(N, d, Decomposition.of(N, [d.target]))
    assert cert.cuts == (0, len(d))
    assert refines(N, d, d).cuts == tuple(range(len(d) + 1))


def test_parse_rejects_sums_past_window():
    N = naturals_window(10)
    with pytest.raises(InputError) as e:
        parse_decomposition(N, "6,6")
    assert e.value.witness == (6, 6)
    assert parse_decomposition(N, "6,4").target == 10
