import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypersym.abstract.hypergroup import (
    FiniteHypergroup,
    HypergroupMorphism,
    SignedElement,
    check_axioms,
    check_morphism,
    group_hypergroup,
    hypersum,
    is_group,
    is_isomorphism,
    isomorphic,
    negation,
    violates,
)
from hypersym.builders import cyclic_group, max_chain_hypergroup
from hypersym.error import MalformedTable, NotAHypergroup, SizeMismatch
from hypersym.symmetrize import symmetrize


def z3_hypergroup():
    idx = np.arange(3)
    return group_hypergroup(["0", "1", "2"], 0, np.add.outer(idx, idx) % 3)


def test_signed_labels():
    assert SignedElement(0).label() == "0"
    assert SignedElement(2, 1).label() == "+2"
    assert SignedElement(2, -1).label() == "-2"
    assert SignedElement(2, -1).negate() == SignedElement(2, 1)
    with pytest.raises(ValueError):
        SignedElement(1, 0)


def test_structural_validation():
    with pytest.raises(MalformedTable):
        FiniteHypergroup([], 0, [])
    with pytest.raises(MalformedTable):
        FiniteHypergroup(["0", "0"], 0, [[[0], [1]], [[1], [0]]])
    with pytest.raises(MalformedTable):
        FiniteHypergroup(["0", "a"], 0, [[[0], [1]], [[1], []]])
    with pytest.raises(MalformedTable):
        FiniteHypergroup(["0", "a"], 0, [[[0], [1]], [[1], [2]]])


def test_cells_are_sorted_sets():
    H = FiniteHypergroup(["0", "a"], 0, [[[0], [1]], [[1], [1, 0, 1]]])
    assert H.cell(1, 1) == (0, 1)


def test_group_axioms():
    G = z3_hypergroup()
    assert check_axioms(G).passed
    assert is_group(G)
    assert negation(G) == (0, 2, 1)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_max_chain_axioms(n):
    H = max_chain_hypergroup(n)
    assert H.size == 2 * n - 1
    assert check_axioms(H).passed
    assert is_group(H) == (n == 1)


def test_max_chain_cells():
    H = max_chain_hypergroup(3)
    assert H.elements == ["0", "+1", "+2", "-1", "-2"]
    p1, p2, m1, m2 = (H.index(s) for s in ("+1", "+2", "-1", "-2"))
    assert H.cell(p1, m1) == (0, p1, m1)
    assert H.cell(p2, m2) == tuple(range(5))
    assert H.cell(p2, m1) == (p2,)
    assert H.cell(m1, m2) == (m2,)
    assert negation(H) == (0, 3, 4, 1, 2)
    assert hypersum(H, [p1], [m1, m2]) == (0, p1, m1, m2)


def test_broken_table_witnesses():
    # a + a = {a}: a has no negative, which also breaks reversibility
    H = FiniteHypergroup(["0", "a"], 0, [[[0], [1]], [[1], [1]]])
    report = check_axioms(H)
    assert report.failed() == [4, 5]
    assert report[4].witness == (1,)
    assert report[5].witness == (1, 1, 0)
    for axiom in report.failed():
        assert violates(H, axiom, report[axiom].witness)
    with pytest.raises(NotAHypergroup):
        negation(H)
    assert "axiom (4) unique negatives: FAIL at ('a',)" in report.pretty(H)


def test_validate_rejects_non_commutative():
    H = FiniteHypergroup(
        ["0", "a", "b"], 0, [[[0], [1], [2]], [[1], [0], [1]], [[2], [2], [0]]]
    )
    with pytest.raises(NotAHypergroup):
        H.validate()
    assert violates(H, 1, check_axioms(H)[1].witness)


def test_non_associative_table():
    # (a + b) + b = {a} but a + (b + b) = {0}
    H = FiniteHypergroup(
        ["0", "a", "b"],
        0,
        [
            [[0], [1], [2]],
            [[1], [0], [2]],
            [[2], [2], [1]],
        ],
    )
    report = check_axioms(H, axioms=(2,))
    assert not report[2]
    assert violates(H, 2, report[2].witness)


def test_morphisms():
    H = max_chain_hypergroup(2)
    assert check_morphism(HypergroupMorphism(H, H, (0, 1, 2)))
    # the sign flip is an automorphism of s(chain)
    assert check_morphism(HypergroupMorphism(H, H, (0, 2, 1)))
    assert is_isomorphism(H, H, (0, 2, 1))
    # the neutral element must stay put
    moved = check_morphism(HypergroupMorphism(H, H, (1, 1, 2)))
    assert moved.witness == (0,)
    with pytest.raises(ValueError):
        HypergroupMorphism(H, H, (0, 1))


def test_isomorphic_search():
    H = max_chain_hypergroup(3)
    perm = [0, 3, 4, 1, 2]
    elements = [H.elements[p] for p in perm]
    inv = np.argsort(perm)
    table = [
        [[int(inv[w]) for w in H.cell(perm[x], perm[y])] for y in range(5)]
        for x in range(5)
    ]
    K = FiniteHypergroup(elements, 0, table)
    mapping = isomorphic(H, K)
    assert mapping is not None
    assert is_isomorphism(H, K, mapping)

    idx = np.arange(5)
    Z5 = group_hypergroup([str(i) for i in range(5)], 0, np.add.outer(idx, idx) % 5)
    assert isomorphic(H, Z5) is None
    with pytest.raises(SizeMismatch):
        isomorphic(max_chain_hypergroup(2), max_chain_hypergroup(3))


def test_json_round_trip(tmp_path):
    H = max_chain_hypergroup(3)
    path = tmp_path / "h.json"
    H.dump(path)
    loaded = FiniteHypergroup.load(path)
    assert loaded == H
    assert check_axioms(loaded).failed() == check_axioms(H).failed()


def test_load_rejects_invalid(tmp_path):
    path = tmp_path / "h.json"
    path.write_text(
        '{"elements": ["0", "a"], "neutral": 0, "table": [[[0], [0]], [[1], [0]]]}'
    )
    with pytest.raises(NotAHypergroup):
        FiniteHypergroup.load(path)
    path.write_text('{"elements": ["0"]}')
    with pytest.raises(MalformedTable):
        FiniteHypergroup.load(path)


def relabel(H, perm):
    """H with element perm[i] moved to index i."""
    inv = np.argsort(perm)
    table = [
        [[int(inv[w]) for w in H.cell(perm[x], perm[y])] for y in range(H.size)]
        for x in range(H.size)
    ]
    return FiniteHypergroup([H.elements[p] for p in perm], int(inv[H.neutral]), table)


SAMPLES = [max_chain_hypergroup(n) for n in range(1, 5)]
SAMPLES += [symmetrize(cyclic_group(4)).hypergroup, z3_hypergroup()]


@given(st.data())
@settings(max_examples=100, deadline=None)
def test_hypersum_laws(data):
    H = data.draw(st.sampled_from(SAMPLES))
    elems = st.integers(min_value=0, max_value=H.size - 1)
    x, y = data.draw(elems), data.draw(elems)
    assert hypersum(H, [x], [y]) == H.cell(x, y)

    X = data.draw(st.sets(elems, min_size=1))
    Y = data.draw(st.sets(elems, min_size=1))
    bigger_x = X | data.draw(st.sets(elems))
    bigger_y = Y | data.draw(st.sets(elems))
    assert set(hypersum(H, X, Y)) <= set(hypersum(H, bigger_x, bigger_y))
    assert hypersum(H, X, Y) == hypersum(H, Y, X)


def splitting_symmetrizations(census):
    return [symmetrize(r.monoid).hypergroup for r in census if r.share]


def test_isomorphic_is_reflexive_and_symmetric(census):
    tables = splitting_symmetrizations(census)
    for H in tables:
        assert is_isomorphism(H, H, isomorphic(H, H))
        rest = [x for x in range(H.size) if x != H.neutral]
        perm = [H.neutral] + rest[::-1]
        K = relabel(H, perm)
        assert is_isomorphism(H, K, tuple(int(v) for v in np.argsort(perm)))
        assert is_isomorphism(K, H, isomorphic(K, H))

    for H, K in itertools.combinations(tables, 2):
        if H.size != K.size:
            continue
        forward, backward = isomorphic(H, K), isomorphic(K, H)
        assert (forward is None) == (backward is None)
        if forward is not None:
            assert is_isomorphism(H, K, forward)
            assert is_isomorphism(K, H, backward)


def test_negation_is_an_involutive_automorphism(census):
    for H in splitting_symmetrizations(census):
        neg = negation(H)
        assert neg[H.neutral] == H.neutral
        assert all(neg[neg[x]] == x for x in range(H.size))
        assert check_morphism(HypergroupMorphism(H, H, neg))
        assert is_isomorphism(H, H, neg)
