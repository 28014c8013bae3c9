import pytest

from hypersym.abstract.hypergroup import (
    FiniteHypergroup,
    SignedElement,
    check_axioms,
    is_group,
    isomorphic,
)
from hypersym.builders import (
    chain_max,
    cyclic_group,
    integer_window_hypergroup,
    max_chain_hypergroup,
    naturals_window,
    product,
)
from hypersym.error import NotBalanced, NotTotal, ShareFailed, WindowOverflow
from hypersym.symmetrize import (
    ShareCase,
    ShareWitness,
    WindowedSymmetrization,
    canonical,
    check_share,
    quotient_sound,
    share_witness,
    symmetrize,
)


def test_share_witness_scan_order():
    N = naturals_window(10)
    assert share_witness(N, 2, 3, 4, 1) == ShareWitness(ShareCase.CASE1, 2)
    assert share_witness(N, 4, 1, 2, 3) == ShareWitness(ShareCase.CASE2, 2)
    assert share_witness(N, 3, 3, 3, 3) == ShareWitness(ShareCase.CASE1, 0)
    with pytest.raises(NotBalanced):
        share_witness(N, 1, 2, 2, 2)


def test_share_holds():
    for M in (chain_max(4), cyclic_group(3), naturals_window(8)):
        assert check_share(M) is None


def test_share_fails_on_product():
    P = product(chain_max(2), chain_max(2))
    cex = check_share(P)
    assert cex.as_tuple() == (1, 2, 2, 1)
    assert cex.recheck(P)
    assert str(cex) == "1 + 2 = 2 + 1"


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_max_chain_closed_form(n):
    res = symmetrize(chain_max(n))
    assert res.hypergroup == max_chain_hypergroup(n)
    assert res.injection == tuple(range(n))


def test_cyclic_group_stays_a_group():
    res = symmetrize(cyclic_group(2))
    H = res.hypergroup
    assert H.elements == ["0", "+1"]
    assert H.cell(1, 1) == (0,)
    assert is_group(H)
    # (1, -1) is identified with (1, +1)
    assert res.index(1, -1) == res.index(1, 1)


def test_canonical_rewrites_invertible_negatives():
    Z = cyclic_group(4)
    assert canonical(Z, 1, -1) == SignedElement(3, 1)
    assert canonical(Z, 0, -1) == SignedElement(0, 1)
    C = chain_max(3)
    assert canonical(C, 2, -1) == SignedElement(2, -1)
    assert all(quotient_sound(Z, a, b) for a in range(4) for b in range(4))


def test_symmetrize_refuses_non_splitting():
    P = product(chain_max(2), chain_max(2))
    with pytest.raises(ShareFailed) as e:
        symmetrize(P)
    assert e.value.witness == (1, 2, 2, 1)
    with pytest.raises(NotTotal) as e:
        symmetrize(P, force=True)
    assert e.value.witness == (1, 2)


def test_windowed_naturals_match_integers():
    W = 20
    sym = symmetrize(naturals_window(W))
    assert isinstance(sym, WindowedSymmetrization)
    Z = integer_window_hypergroup(W)
    for x in range(-10, 11):
        for y in range(-10, 11):
            got = sym.hypersum(Z.to_signed(x), Z.to_signed(y))
            assert got == [Z.to_signed(s) for s in Z.add(x, y)]


def test_windowed_overflow():
    sym = symmetrize(naturals_window(5))
    with pytest.raises(WindowOverflow):
        sym.hypersum(SignedElement(3), SignedElement(4))
    assert len(sym.elements(2)) == 5
    assert [sym.label(e) for e in sym.elements(1)] == ["0", "+1", "-1"]


def test_dump_carries_injection(tmp_path):
    res = symmetrize(chain_max(3))
    path = tmp_path / "s.json"
    res.dump(path)
    loaded = FiniteHypergroup.load(path)
    assert loaded == res.hypergroup
    assert res.to_dict()["injection"] == [0, 1, 2]


def test_splitting_characterizes_hypergroups(census):
    for record in census:
        forced_ok = record.total and not record.forced_failures
        assert record.share == forced_ok, record.name
        if record.share:
            assert record.total, record.name


def test_reversibility_follows_from_other_axioms(census):
    tables = [max_chain_hypergroup(n) for n in range(1, 6)]
    for record in census:
        if record.total:
            tables.append(symmetrize(record.monoid, force=True).hypergroup)
    for H in tables:
        report = check_axioms(H)
        if all(report[axiom] for axiom in (1, 2, 3, 4)):
            assert report[5]


def test_forced_failures_break_associativity_or_negatives(census):
    broken = [r for r in census if r.total and not r.share]
    for record in broken:
        assert set(record.forced_failures) & {2, 4, 5}, record.name
        H = symmetrize(record.monoid, force=True).hypergroup
        report = check_axioms(H)
        assert report.failed() == record.forced_failures


def test_symmetrization_of_splitting_census_is_hypergroup(census):
    for record in census:
        if record.share:
            assert check_axioms(symmetrize(record.monoid).hypergroup).passed


def test_idempotent_splitting_is_totality(census):
    idempotent = [r for r in census if r.idempotent]
    assert any(not r.total for r in idempotent)
    for record in idempotent:
        assert record.total == record.share, record.name
        if record.total:
            M = record.monoid
            H = symmetrize(M).hypergroup
            assert isomorphic(H, max_chain_hypergroup(M.order)) is not None, record.name
