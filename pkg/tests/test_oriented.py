import pytest
from hypothesis import given, settings, strategies as st

from earlab.coloring import VertexMapping, verify_homomorphism
from earlab.digraph import Digraph, is_strong
from earlab.ears import Ear, EarDecomposition, generate_random_le
from earlab.errors import (CapExceededError, InvalidInputError,
                           PropertyFailedError)
from earlab.oriented import (REFERENCE_WALKS, build_G, cycle_homomorphism,
                             extend_homomorphism, find_tight_le3_instance,
                             gi_lower_bound_check, missing_walk_witness,
                             oriented_coloring_le3, tournament_T,
                             uniqueness_census, validate_reference_walks,
                             verify_walk_property, walk_catalog)
from earlab.tournaments import Tournament, automorphism_count


@pytest.fixture(scope="module")
def census():
    return uniqueness_census()


def test_pinned_tournament_shape():
    t = tournament_T()
    assert t.k == 6
    assert t.code_string() == "101001001010101"
    assert t.out_degrees() == (2, 2, 2, 3, 3, 3)
    assert is_strong(t.to_digraph())
    assert automorphism_count(t) == 3


def test_reference_walks_cover_every_pair():
    assert sorted(REFERENCE_WALKS) == [(i, j) for i in range(6)
                                       for j in range(6) if i != j]
    assert all(len(w) == 3 for w in REFERENCE_WALKS.values())
    assert validate_reference_walks()


def test_walk_property_holds_for_t():
    t = tournament_T()
    assert verify_walk_property(t)
    assert verify_walk_property(t, include_closed=True)
    assert missing_walk_witness(t) is None


def test_walk_property_fails_for_transitive_tournament():
    arcs = [(i, j) for i in range(6) for j in range(6) if i < j]
    t = Tournament.from_arcs(6, arcs)
    assert not verify_walk_property(t)
    length, i, j = missing_walk_witness(t)
    assert length in (3, 4, 5)


def test_walk_property_needs_order_six():
    with pytest.raises(InvalidInputError):
        verify_walk_property(Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)]))


def test_census_finds_a_single_class(census):
    assert census.labeled_count == 240
    assert census.iso_class_count == 1
    assert census.witness_isomorphic_to_reference
    assert census.closed_reading_agrees
    assert census.closed_labeled_count == 240


def test_census_count_matches_orbit_size(census):
    # 720 labelings divided by the 3 automorphisms
    assert census.labeled_count * automorphism_count(tournament_T()) == 720


def test_census_json(census):
    doc = census.to_json()
    assert doc["iso_class_count"] == 1
    assert doc["closed_reading"]["agrees"] is True


def test_catalog_anchored_cycles():
    cat = walk_catalog(tournament_T())
    assert cat.cycles[(0, 3)] == (0, 1, 2, 0)
    assert cat.cycles[(0, 4)] == (0, 1, 2, 4, 0)
    assert cat.cycles[(0, 5)] == (0, 1, 2, 4, 5, 0)
    assert cat.cycles[(0, 6)] == (0, 1, 5, 3, 2, 4, 0)


def test_catalog_pair_walks():
    cat = walk_catalog(tournament_T())
    assert cat.paths[(0, 1, 3)] == (0, 3, 4, 1)
    assert cat.paths[(5, 4, 5)] == (5, 0, 1, 5, 2, 4)


def test_catalog_is_complete_and_valid():
    t = tournament_T()
    cat = walk_catalog(t)
    assert len(cat.cycles) == 6 * 4
    assert len(cat.paths) == 30 * 3
    for (anchor, k), cyc in cat.cycles.items():
        assert cyc[0] == cyc[-1] == anchor and len(cyc) == k + 1
        assert len(set(cyc[:-1])) == k
        assert all(t.has_arc(a, b) for a, b in zip(cyc, cyc[1:]))
    for (i, j, k), walk in cat.paths.items():
        assert walk[0] == i and walk[-1] == j and len(walk) == k + 1
        assert all(t.has_arc(a, b) for a, b in zip(walk, walk[1:]))


def test_reference_walks_are_admissible_but_not_forced():
    # the catalog may legally pick smaller walks than the frozen fixtures
    t = tournament_T()
    cat = walk_catalog(t)
    agreements = sum(
        cat.paths[(i, j, 3 + pos)] == walk
        for (i, j), walks in REFERENCE_WALKS.items()
        for pos, walk in enumerate(walks))
    assert agreements >= 45
    for (i, j, k), walk in cat.paths.items():
        ref = REFERENCE_WALKS[(i, j)][k - 3]
        assert walk <= ref


@pytest.mark.parametrize("n", list(range(3, 21)))
def test_cycle_homomorphism_verifies(n):
    m = cycle_homomorphism(n)
    verify_homomorphism(Digraph.cycle(n), m)


def test_cycle_homomorphism_seven_fixture():
    m = cycle_homomorphism(7)
    assert [m.assignment[i] for i in range(7)] == [0, 1, 2, 0, 1, 2, 4]


def test_cycle_homomorphism_rejects_short():
    with pytest.raises(InvalidInputError):
        cycle_homomorphism(2)


def test_extend_homomorphism_path_ear():
    stage = Digraph.cycle(3)
    phi = VertexMapping({0: 0, 1: 1, 2: 2}, tournament_T(), "homomorphism")
    ear = Ear((0, 3, 4, 1))
    out = extend_homomorphism(stage, phi, ear)
    glued = stage.union(ear.vertices, ear.arcs)
    verify_homomorphism(glued, out)
    assert out.assignment[0] == 0 and out.assignment[1] == 1


def test_extend_homomorphism_cycle_ear_rides_anchored_cycle():
    stage = Digraph.cycle(3)
    phi = VertexMapping({0: 0, 1: 1, 2: 2}, tournament_T(), "homomorphism")
    ear = Ear((0, 3, 4, 5, 0))
    out = extend_homomorphism(stage, phi, ear)
    # interior follows the anchored 4-cycle at image 0
    assert [out.assignment[v] for v in (3, 4, 5)] == [1, 2, 4]
    verify_homomorphism(stage.union(ear.vertices, ear.arcs), out)


def test_extend_homomorphism_rejects_short_ears():
    stage = Digraph.cycle(3)
    phi = VertexMapping({0: 0, 1: 1, 2: 2}, tournament_T(), "homomorphism")
    with pytest.raises(InvalidInputError):
        extend_homomorphism(stage, phi, Ear((0, 3, 1)))


def test_oriented_coloring_small_fixture():
    arcs = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 1)]
    d = Digraph(range(5), arcs)
    e = EarDecomposition(d, Ear((0, 1, 2, 0)), [Ear((0, 3, 4, 1))])
    m = oriented_coloring_le3(d, e)
    verify_homomorphism(d, m)
    assert m.kind == "oriented"
    assert m.colors_used() <= 6


def test_oriented_coloring_rejects_short_ears():
    arcs = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)]
    d = Digraph(range(4), arcs)
    e = EarDecomposition(d, Ear((0, 1, 2, 0)), [Ear((0, 3, 1))])
    with pytest.raises(InvalidInputError):
        oriented_coloring_le3(d, e)


def test_oriented_coloring_rejects_symmetric_digraphs():
    d = Digraph.cycle(2)
    e = EarDecomposition(d, Ear((0, 1, 0)), [])
    with pytest.raises(InvalidInputError):
        oriented_coloring_le3(d, e)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=3, max_value=7),
       st.integers(min_value=0, max_value=4),
       st.floats(min_value=0.0, max_value=1.0),
       st.integers(min_value=0, max_value=10_000))
def test_oriented_coloring_volume(base, ears, cycle_prob, seed):
    d, e = generate_random_le(base_length=base, ear_count=ears,
                              min_ear_length=3, max_ear_length=7,
                              cycle_ear_probability=cycle_prob, seed=seed)
    m = oriented_coloring_le3(d, e)
    verify_homomorphism(d, m)
    assert set(m.assignment) == set(d.vertices)


def test_blowup_family_sizes():
    g1, g2, g3 = build_G(1), build_G(2), build_G(3)
    assert (g1.n, len(g1.arcs)) == (3, 3)
    assert (g2.n, len(g2.arcs)) == (9, 15)
    assert (g3.n, len(g3.arcs)) == (81, 159)
    for g in (g1, g2, g3):
        assert len(g.arcs) == 2 * g.n - 3


def test_blowup_prefix_is_previous_generation():
    g2, g3 = build_G(2), build_G(3)
    prefix = {(u, v) for (u, v) in g3.arcs if u < 9 and v < 9}
    assert prefix == set(g2.arcs)


def test_blowup_cap():
    with pytest.raises(CapExceededError):
        build_G(5)
    with pytest.raises(InvalidInputError):
        build_G(0)


def test_lower_bound_check():
    assert gi_lower_bound_check(2)
    assert gi_lower_bound_check(3)
    with pytest.raises(InvalidInputError):
        gi_lower_bound_check(1)


def test_tight_instance_search_is_deterministic():
    a = find_tight_le3_instance()
    b = find_tight_le3_instance()
    assert a.digraph == b.digraph
    assert a.attempts_used == b.attempts_used == 1


def test_tight_instance_shape():
    inst = find_tight_le3_instance()
    assert inst.digraph.n == 11
    assert len(inst.decomposition.ears) == 4
    assert all(ear.length == 3 for ear in inst.decomposition.ears)
    assert inst.below_report.value is None
    assert inst.below_report.details == {"exceeds": 5}
    verify_homomorphism(inst.digraph, inst.mapping)
    doc = inst.to_json()
    assert doc["oriented_chromatic_number"] == 6
