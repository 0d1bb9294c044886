import random
from itertools import chain, combinations

import pytest
from hypothesis import given, settings, strategies as st

from nestlab.building import BuildingSet
from nestlab.embed import (
    IntervalMap, analyze_embedding, atomic_boolean_embedding, atoms_cover_ground, bergman_embedding, compatibility_witness,
    face_flat_map, facial_nested_fan, fan_in_positive_bergman, flatial_building_set, is_phi_compatible,
    positive_bergman, pull, push, random_tame_triple,
)
from nestlab.errors import ElementNotAVertex, HasLoops, NotPullable, NotPushable
from nestlab.facial import FacialBuildingSet
from nestlab.lattice import from_covers, lattice_from_sets
from nestlab.om import A_CIRC, Digraph, OrientedMatroid, VectorConfig, om_from_digraph


@pytest.fixture
def diamond():
    return from_covers("abcd", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")])


def test_identity(diamond):
    r = analyze_embedding(IntervalMap.identity(diamond))
    assert r.tame and r.atom_exhaustive and r.join_preserving and r.cover_preserving


def test_preimage_needs_compatibility(diamond):
    ident = IntervalMap.identity(diamond)
    B1 = BuildingSet.from_labels(diamond, ["b", "c"])
    B2 = BuildingSet.from_labels(diamond, ["b", "c", "d"])
    assert not is_phi_compatible(ident, B1, B2)
    assert compatibility_witness(ident, B1, B2) is not None
    L8 = from_covers(range(1, 9), [(1, 2), (1, 3), (1, 4), (2, 5), (2, 6), (3, 5), (3, 7), (4, 6), (4, 7),
                                   (5, 8), (6, 8), (7, 8)])
    phi = IntervalMap.from_labels(diamond, L8, {"a": 1, "b": 2, "c": 3, "d": 8})
    assert not analyze_embedding(phi).tame
    Bp = BuildingSet.from_labels(L8, [2, 3, 4, 5])
    assert sorted(diamond.label(x) for x in phi.preimage(Bp.blocks)) == ["b", "c"]
    assert not is_phi_compatible(phi, B1, Bp)


def test_pull_and_push_failures():
    L = from_covers("abcde", [("a", "b"), ("a", "c"), ("b", "d"), ("c", "d"), ("d", "e")])
    Lp = from_covers(range(1, 7), [(1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6)])
    Lpp = from_covers(list("αβγδεζη"), [("α", "β"), ("α", "γ"), ("β", "δ"), ("γ", "δ"), ("γ", "ε"),
                                        ("γ", "ζ"), ("δ", "η"), ("ε", "η"), ("ζ", "η")])
    f = IntervalMap.from_labels(L, Lp, dict(a=1, b=2, c=3, d=4, e=6))
    g = IntervalMap.from_labels(Lp, Lpp, {1: "α", 2: "β", 3: "γ", 4: "δ", 5: "ζ", 6: "η"})
    assert analyze_embedding(f).tame and analyze_embedding(g).tame
    B = BuildingSet.from_labels(Lp, [2, 3, 5])
    with pytest.raises(NotPullable):
        pull(f, B)
    with pytest.raises(NotPushable):
        push(g, B)


def _sets(strs):
    return [frozenset(int(c) for c in s) for s in strs]


def test_atomic_lattices_into_boolean():
    ground = [1, 2, 3, 4]
    Lq = lattice_from_sets([frozenset(x) for x in chain.from_iterable(combinations(ground, k) for k in range(5))])
    skip = (frozenset(), frozenset({1, 3}), frozenset({2, 4}))
    Bq = BuildingSet(Lq, [k for k in Lq.elements() if Lq.label(k) not in skip])
    L1 = lattice_from_sets(_sets(["", "1", "2", "3", "4", "12", "23", "34", "14", "1234"]))
    L2 = lattice_from_sets(_sets(["", "1", "2", "3", "4", "12", "13", "24", "34", "1234"]))
    B1 = BuildingSet(L1, [k for k in L1.elements() if k != L1.bottom])
    B2 = BuildingSet(L2, [k for k in L2.elements() if L2.label(k) not in skip])
    for L, B, f in ((L1, B1, (1, 8, 8)), (L2, B2, (1, 6, 6))):
        i = IntervalMap.from_labels(L, Lq, {x: x for x in L.labels})
        assert analyze_embedding(i).atom_exhaustive
        assert is_phi_compatible(i, B, Bq)
        assert sorted(map(sorted, pull(i, Bq).labels())) == sorted(map(sorted, B.labels()))
        ae = atomic_boolean_embedding(L, B)
        assert ae.matches_lattice_fan and ae.subfan.is_fan()
        assert ae.subcomplex.f_vector() == f


def test_bergman_circ():
    M = OrientedMatroid.from_config(A_CIRC)
    for FB, cones in ((FacialBuildingSet.minimal(M), 9), (FacialBuildingSet.maximal(M), 99)):
        cert = fan_in_positive_bergman(M, FB, samples=2, rng=random.Random(1))
        assert cert.ok and cert.cones_checked == cones
    with pytest.raises(ElementNotAVertex):
        bergman_embedding(M, FacialBuildingSet.minimal(M), "push")
    be = bergman_embedding(M, flatial_building_set(M), "pull")
    assert be.compatible and len(be.facial) == 19
    assert analyze_embedding(face_flat_map(M)).cover_preserving


def test_bergman_sign_is_not_vacuous():
    # the opposite barycenters land outside the positive Bergman fan
    M = OrientedMatroid.from_config(A_CIRC)
    fan = facial_nested_fan(FacialBuildingSet.maximal(M))
    bad = sum(1 for c in fan.cones() if c and not positive_bergman(M, [sum(fan.rays[i][j] for i in c) for j in range(6)]))
    assert bad > 0


def test_square_pull_push():
    sq = OrientedMatroid.from_config(VectorConfig(list("abcd"), [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]]))
    assert bergman_embedding(sq, flatial_building_set(sq), "pull").compatible
    for FB in (FacialBuildingSet.minimal(sq), FacialBuildingSet.maximal(sq)):
        be = bergman_embedding(sq, FB, "push")
        assert be.compatible and be.facial.blocks == FB.blocks


def test_positive_bergman_weights():
    tri = om_from_digraph(Digraph([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 1, 3)]))
    assert positive_bergman(tri, {"a": 0, "b": 0, "c": 0})
    assert not positive_bergman(tri, {"a": 1, "b": 1, "c": 0})
    loop = om_from_digraph(Digraph([1, 2], [("a", 1, 2), ("b", 2, 1)]))
    assert not positive_bergman(loop, {"a": 0, "b": 0})


def test_loops_rejected():
    with pytest.raises(HasLoops):
        positive_bergman(OrientedMatroid.from_config(VectorConfig(["x", "y"], [[0, 0], [1, 0]])), [0, 0])


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tame_preimages_are_compatible(seed):
    phi, B, Bp = random_tame_triple(random.Random(seed))
    assert analyze_embedding(phi).tame
    assert sorted(B.blocks) == sorted(phi.preimage(Bp.blocks))
    assert is_phi_compatible(phi, B, Bp)


def test_bergman_needs_elements_on_atoms():
    # point 4 is the midpoint of the edge 23, so it lies in no vertex of the polygon
    M = OrientedMatroid.from_config(VectorConfig(
        list("12345"), [[1, 0, 1], [0, 1, 1], [-2, 0, 1], [-1, "1/2", 1], [1, -1, 1]]))
    assert not atoms_cover_ground(M)
    low = fan_in_positive_bergman(M, FacialBuildingSet.minimal(M))
    assert not low.atoms_cover_ground
    assert [f["cone"] for f in low.failures] == [[["2"], ["3"]]]
    assert fan_in_positive_bergman(M, FacialBuildingSet.maximal(M)).ok
    assert atoms_cover_ground(OrientedMatroid.from_config(A_CIRC))
