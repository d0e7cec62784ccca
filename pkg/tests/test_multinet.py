import pytest

from arrtop.arrangement import build_lattice
from arrtop.errors import BudgetError, ValidationError
from arrtop.fixtures import (
    HESSE_NET_CLASSES,
    TRIPLE_WEAVE_CLASSES,
    get_arrangement,
    get_fixture,
)
from arrtop.multinet import (
    enumerate_3nets,
    enumerate_multinets,
    enumerate_nets,
    find_pointed_multinets,
    is_net,
    latin_square,
    pencil_subspace,
    verify_multinet,
)


@pytest.fixture(scope="module")
def braid_lat():
    return build_lattice(get_arrangement("braid"))


@pytest.fixture(scope="module")
def b3_lat():
    return build_lattice(get_arrangement("b3"))


def test_braid_net_found_and_unique(braid_lat):
    nets = enumerate_3nets(braid_lat)
    assert len(nets) == 1
    mn = nets[0]
    assert mn.k == 3 and mn.weight == 2 and mn.reduced
    assert is_net(braid_lat, mn)
    assert mn.classes == ((0, 5), (1, 4), (2, 3))
    assert len(mn.base_locus) == 4
    assert set(mn.n_x) == {1}


def test_braid_exhaustive_partition_oracle(braid_lat):
    """Independent oracle: check every 3-partition of the six lines directly."""
    found = []
    n = 6
    for code in range(3**n):
        classes = [[], [], []]
        x = code
        for i in range(n):
            classes[x % 3].append(i)
            x //= 3
        if any(not c for c in classes):
            continue
        if not (0 in classes[0]):
            continue
        verdict, mn = verify_multinet(braid_lat, classes, [1] * n)
        if verdict and mn and is_net(braid_lat, mn):
            found.append(mn.classes)
    assert set(found) == {((0, 5), (1, 4), (2, 3))}


def test_pencil_is_degenerate_net():
    lat = build_lattice(get_arrangement("pencil3"))
    nets = enumerate_3nets(lat)
    assert len(nets) == 1
    assert nets[0].weight == 1
    assert len(nets[0].base_locus) == 1


def test_falk_has_no_multinets_at_all():
    for name in ("falk_A", "falk_A_prime"):
        lat = build_lattice(get_arrangement(name))
        assert enumerate_3nets(lat) == []
        assert enumerate_multinets(lat, k=3, max_mult=3) == []
        assert enumerate_multinets(lat, k=3, max_mult=1) == []


def test_b3_multinet(b3_lat):
    mns = enumerate_multinets(b3_lat, max_mult=2)
    assert len(mns) == 1
    mn = mns[0]
    assert mn.k == 3 and mn.weight == 4 and not mn.reduced
    assert not is_net(b3_lat, mn)
    # weight 2 exactly on the three coordinate lines x, y, z
    assert [mn.mult[i] for i in range(9)] == [2, 2, 2, 1, 1, 1, 1, 1, 1]
    verdict, rebuilt = verify_multinet(b3_lat, mn.classes, mn.mult, base_locus=mn.base_locus)
    assert verdict


def test_verify_diagnostics(braid_lat):
    n = 6
    verdict, _ = verify_multinet(braid_lat, [[0, 1, 2, 3, 4, 5]], [1] * n)
    assert not verdict and verdict.failed_axiom == 0
    verdict, _ = verify_multinet(braid_lat, [[0], [1], [2, 3, 4, 5]], [1] * n)
    assert not verdict and verdict.failed_axiom == 1  # unequal class weights
    # Same sizes but wrong geometry: axiom 3 fires at some flat.
    verdict, _ = verify_multinet(braid_lat, [[0, 1], [2, 3], [4, 5]], [1] * n)
    assert not verdict and verdict.failed_axiom in (3, 4)
    assert verdict.witness
    verdict, _ = verify_multinet(braid_lat, [[0, 5], [1, 4], [2, 3]], [2] * n)
    assert not verdict and verdict.failed_axiom == 0  # gcd 2
    # Declared base locus missing a cross-class flat -> axiom 2.
    verdict, _ = verify_multinet(braid_lat, [[0, 5], [1, 4], [2, 3]], [1] * n, base_locus=[])
    assert not verdict and verdict.failed_axiom == 2


def test_triple_weave_reduced_not_net():
    lat = build_lattice(get_arrangement("triple_weave_12"))
    verdict, mn = verify_multinet(lat, TRIPLE_WEAVE_CLASSES, [1] * 12)
    assert verdict
    assert mn.k == 3 and mn.weight == 4 and mn.reduced
    assert not is_net(lat, mn)
    assert 2 in mn.n_x  # the multiplicity-6 flat carries two lines per class


def test_hesse_four_net():
    _, hes = get_fixture("hesse")
    verdict, mn = verify_multinet(hes, HESSE_NET_CLASSES, [1] * 12)
    assert verdict
    assert mn.k == 4 and mn.weight == 3
    assert is_net(hes, mn)
    assert enumerate_nets(hes, 4) == [mn]
    assert enumerate_nets(hes, 3) == []


def test_latin_square_round_trip(braid_lat):
    for mn in enumerate_3nets(braid_lat):
        sq = latin_square(braid_lat, mn)
        d = mn.weight
        assert len(sq) == d
        for row in sq:
            assert sorted(row) == list(range(d))
        for col in zip(*sq):
            assert sorted(col) == list(range(d))


def test_latin_square_rejects_non_net(b3_lat):
    mn = enumerate_multinets(b3_lat, max_mult=2)[0]
    with pytest.raises(ValidationError):
        latin_square(b3_lat, mn)


def test_pencil_subspace_dimensions(braid_lat):
    mn = enumerate_3nets(braid_lat)[0]
    ps = pencil_subspace(mn, 6)
    assert len(ps.basis) == mn.k - 1
    # Linear independence: the two vectors are not proportional.
    v, w = ps.basis
    assert any(v[i] * w[j] != v[j] * w[i] for i in range(6) for j in range(6))


def test_pointed_multinets(b3_lat, braid_lat):
    pointed = find_pointed_multinets(b3_lat, max_mult=2)
    lines = sorted(h for _, h in pointed)
    assert lines == [0, 1, 2]
    assert all(mn.mult[h] == 2 for mn, h in pointed)
    assert find_pointed_multinets(braid_lat) == []
    for name in ("falk_A", "falk_A_prime"):
        assert find_pointed_multinets(build_lattice(get_arrangement(name))) == []


def test_enumeration_budget():
    lat = build_lattice(get_arrangement("braid"))
    with pytest.raises(BudgetError):
        enumerate_3nets(lat, max_lines=5)
    with pytest.raises(BudgetError):
        enumerate_multinets(lat, max_lines=5)


def test_structural_rejection_small_k(braid_lat):
    verdict, _ = verify_multinet(braid_lat, [[0, 1, 2], [3, 4, 5]], [1] * 6)
    assert not verdict and verdict.failed_axiom == 0
    with pytest.raises(ValidationError):
        enumerate_multinets(braid_lat, k=2)
