import random
from itertools import combinations

import pytest

from arrtop.arrangement import (
    Arrangement,
    build_lattice,
    collinear_triples_report,
    lattice_from_incidence,
    load_arrangement_source,
    multiplicity_predicates,
    normalize_triple,
    parse_arrangement_text,
)
from arrtop.errors import ValidationError
from arrtop.fixtures import get_arrangement, get_fixture
from arrtop.intlinalg import det_int


def test_normalize_idempotent_and_canonical():
    assert normalize_triple((2, -4, 6)) == (1, -2, 3)
    assert normalize_triple((-2, 4, -6)) == (1, -2, 3)
    assert normalize_triple((0, 0, -5)) == (0, 0, 1)
    t = normalize_triple((6, -9, 12))
    assert normalize_triple(t) == t
    with pytest.raises(ValidationError):
        normalize_triple((0, 0, 0))


def test_duplicate_lines_named():
    with pytest.raises(ValidationError, match="indices 0 and 2"):
        Arrangement.make([(1, 0, 0), (0, 1, 0), (2, 0, 0)])


def test_falk_censuses_and_common_line():
    for name, want_common in (("falk_A", True), ("falk_A_prime", False)):
        lat = build_lattice(get_arrangement(name))
        assert lat.census == {2: 9, 3: 2}
        assert collinear_triples_report(lat).some_line_contains_all is want_common


def test_trivial_censuses():
    assert build_lattice(get_arrangement("generic4")).census == {2: 6}
    lat = build_lattice(get_arrangement("pencil3"))
    assert lat.census == {3: 1}
    assert collinear_triples_report(lat).some_line_contains_all
    single = build_lattice(Arrangement.make([(1, 2, 3)]))
    assert single.flats == ()
    assert single.census == {}


def test_multiplicity_predicates():
    falk = build_lattice(get_arrangement("falk_A"))
    rep = multiplicity_predicates(falk, 3)
    assert rep.has_flat_with_r_dividing
    assert rep.only_double_and_triple
    assert rep.no_multiple_of_three_beyond_three

    gen4 = build_lattice(get_arrangement("generic4"))
    assert not multiplicity_predicates(gen4, 3).has_flat_with_r_dividing

    b3 = build_lattice(get_arrangement("b3"))
    rep = multiplicity_predicates(b3, 4)
    assert rep.has_flat_with_r_dividing
    assert not rep.only_double_and_triple

    with pytest.raises(ValidationError):
        multiplicity_predicates(falk, 1)


def _random_arrangement(rng, n):
    coeffs = []
    seen = set()
    while len(coeffs) < n:
        t = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 3))
        if t == (0, 0, 0):
            continue
        key = normalize_triple(t)
        if key in seen:
            continue
        seen.add(key)
        coeffs.append(t)
    return Arrangement.make(coeffs, label="random")


@pytest.mark.parametrize("seed", range(30))
def test_pair_coverage_random(seed):
    rng = random.Random(seed)
    arr = _random_arrangement(rng, rng.randint(2, 8))
    lat = build_lattice(arr)
    pairs = sum(
        fl.multiplicity * (fl.multiplicity - 1) // 2 for fl in lat.flats
    )
    assert pairs == arr.n * (arr.n - 1) // 2
    covered = set()
    for fl in lat.flats:
        for p in combinations(fl.lines, 2):
            assert p not in covered
            covered.add(p)


@pytest.mark.parametrize("seed", range(10))
def test_projective_invariance(seed):
    rng = random.Random(1000 + seed)
    arr = _random_arrangement(rng, rng.randint(3, 7))
    while True:
        m = [[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)]
        if det_int(m) != 0:
            break
    moved = Arrangement.make(
        [
            tuple(
                sum(m[k][j] * ln.coeffs[k] for k in range(3)) for j in range(3)
            )
            for ln in arr.lines
        ],
        label="moved",
    )
    lat, lat2 = build_lattice(arr), build_lattice(moved)
    assert lat.census == lat2.census
    # Same incidence structure with line indices preserved.
    assert sorted(fl.lines for fl in lat.flats) == sorted(fl.lines for fl in lat2.flats)


def test_essential_flag():
    assert not get_arrangement("pencil3").is_essential
    assert get_arrangement("falk_A").is_essential
    assert not Arrangement.make([(1, 0, 0), (0, 1, 0)]).is_essential


def test_parse_text_and_diagnostics():
    arr = parse_arrangement_text("# falk A\n0 0 1\n1 0 0\n\n1 0 -1  # x - z\n")
    assert arr.n == 3
    with pytest.raises(ValidationError, match="line 2"):
        parse_arrangement_text("1 0 0\n1 2.5 0\n")
    with pytest.raises(ValidationError, match="expected 3 integers"):
        parse_arrangement_text("1 0\n")
    with pytest.raises(ValidationError, match="no lines"):
        parse_arrangement_text("# nothing\n")


def test_load_json_forms():
    tier, arr = load_arrangement_source('{"label": "two", "lines": [[1,0,0],[0,1,0]]}')
    assert tier == "realized" and arr.n == 2 and arr.label == "two"
    with pytest.raises(ValidationError, match="triple of integers"):
        load_arrangement_source('{"lines": [[1, 0, 0.5]]}')
    tier, lat = load_arrangement_source('{"label": "tri", "n": 3, "flats": [[0,1,2]]}')
    assert tier == "incidence" and lat.census == {3: 1}
    with pytest.raises(ValidationError, match="invalid JSON"):
        load_arrangement_source("{broken")


def test_incidence_validation():
    with pytest.raises(ValidationError, match="two declared flats"):
        lattice_from_incidence(4, [[0, 1, 2], [0, 1, 3]])
    with pytest.raises(ValidationError, match="outside"):
        lattice_from_incidence(3, [[0, 5]])
    hes_tier, hes = get_fixture("hesse")
    assert hes.census == {2: 12, 4: 9}
    assert not hes.realized
