import pytest

from hypersym.abstract.hypergroup import is_group, isomorphic
from hypersym.builders import chain_max, cyclic_group, naturals_window
from hypersym.symmetrize import compare_grothendieck, grothendieck, symmetrize


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_idempotent_chains_collapse(n):
    assert grothendieck(chain_max(n)).is_trivial
    assert symmetrize(chain_max(n)).hypergroup.size == 2 * n - 1


def test_cyclic_group_is_its_own_completion():
    Z = cyclic_group(3)
    G = grothendieck(Z)
    assert G.size == 3
    assert G.labels()[0] == "0"
    assert len(set(G.embedding)) == 3
    assert isomorphic(symmetrize(Z).hypergroup, G.to_hypergroup()) is not None

    cmp = compare_grothendieck(Z)
    assert cmp.cancellative and cmp.s_is_group
    assert cmp.isomorphism is not None
    assert cmp.agrees


def test_chain_comparison():
    cmp = compare_grothendieck(chain_max(3))
    assert not cmp.cancellative
    assert not cmp.s_is_group
    assert cmp.isomorphism is None
    assert cmp.cancellation_witness == (0, 1, 1)


def test_window_of_naturals():
    G = grothendieck(naturals_window(20))
    # differences a - b with a + b <= 20
    assert G.size == 41
    assert not G.is_trivial
    assert len(G.embedding) == 21
    zero, one, two = G.embedding[:3]
    assert zero == 0
    assert G.table[one, one] == two
    minus_one = G.class_of(0, 1)
    assert G.table[one, minus_one] == zero


def test_window_covers_full_range():
    G = grothendieck(naturals_window(10))
    assert G.size == 21
    ten, minus_ten = G.class_of(10, 0), G.class_of(0, 10)
    assert G.labels()[ten] == "[10-0]"
    assert G.labels()[minus_ten] == "[0-10]"
    assert G.table[ten, minus_ten] == 0
    # 7 + (-5) is reached although 7 + 5 leaves the window
    assert G.table[G.class_of(7, 0), G.class_of(0, 5)] == G.class_of(2, 0)
    assert G.table[ten, ten] == -1

    small = grothendieck(naturals_window(10), bound=5)
    assert small.size == 11


def test_dump(tmp_path):
    G = grothendieck(cyclic_group(2))
    path = tmp_path / "g.json"
    G.dump(path)
    assert path.read_text().count('"embedding"') == 1


def test_groups_match_cancellation(census):
    for record in census:
        if not record.share:
            continue
        M = record.monoid
        H = symmetrize(M).hypergroup
        assert is_group(H) == record.cancellative, record.name
        if is_group(H):
            assert isomorphic(H, grothendieck(M).to_hypergroup()) is not None
        assert compare_grothendieck(M).agrees
