import random
from itertools import combinations

from hypothesis import given, settings, strategies as st

from conftest import complex_strings, fs
from nestlab.building import BuildingSet, graphical_building_set
from nestlab.corpus import facial_equals_acyclic, oriented_building_sets, random_configs, sphere_properties
from nestlab.facial import (
    FacialBuildingSet, OrientedBuildingSet, cross_polytope_om, design_building_set, design_nested_faces,
    facial_part, graphical_oriented_building_set, is_hyperoctahedral, is_oriented_building_set,
    minimal_oriented_building_set,
)
from nestlab.lattice import BooleanLattice
from nestlab.om import Digraph, OrientedMatroid


def acyclic_by_definition(OB):
    """Oracle: nested faces all of whose sub-unions are faces of the oriented matroid."""
    B, M = OB.building, OB.om
    out = set()
    for f in B.nested_faces():
        labels = [B.label(k) for k in f]
        ok = all(M.is_face(frozenset().union(*S)) for k in range(1, len(labels) + 1)
                 for S in combinations(labels, k))
        if ok:
            out.add(frozenset(fs(x) for x in labels))
    return out


def faces_of(C):
    return {frozenset(fs(x) for x in f) for f in C.faces()}


def test_b_circ_is_oriented(b_circ, m_circ):
    assert is_oriented_building_set(b_circ, m_circ)
    L = BooleanLattice(m_circ.ground)
    singletons = BuildingSet(L, [L.key(fs(g)) for g in m_circ.ground] + [L.top], check=False)
    assert not is_oriented_building_set(singletons, m_circ)


def test_minimal_oriented_building_set(m_circ):
    assert minimal_oriented_building_set(m_circ).block_strings() == \
        ["1", "2", "3", "4", "5", "6", "12", "1456", "2456", "12456"]


def test_facial_part(b_circ, m_circ):
    OB = OrientedBuildingSet(b_circ, m_circ)
    FB = facial_part(OB)
    assert FB.block_strings() == ["3", "4", "5", "6", "12", "123", "124", "125", "1234", "1235", "12456", "123456"]
    assert complex_strings(FB.nested_complex()) == complex_strings(OB.acyclic_nested_complex())
    assert facial_part(FB.preimage()).blocks == FB.blocks


def test_acyclic_complex_by_definition(b_circ, m_circ):
    OB = OrientedBuildingSet(b_circ, m_circ)
    assert faces_of(OB.acyclic_nested_complex()) - {frozenset()} == acyclic_by_definition(OB) - {frozenset()}


def test_facial_building_sets_of_circ(m_circ):
    assert FacialBuildingSet.minimal(m_circ).block_strings() == ["3", "4", "5", "6", "12", "12456"]
    assert len(FacialBuildingSet.maximal(m_circ).blocks) == 19


def test_cross_polytope():
    X = cross_polytope_om(2)
    assert len(X.faces()) == 10
    F = FacialBuildingSet.maximal(X)
    assert F.nested_complex().f_vector() == (1, 8, 8)
    assert is_hyperoctahedral([F.label(b) for b in F.blocks], 2)


def test_design_building_set():
    P = graphical_building_set([1, 2], [(1, 2)])
    D = design_building_set(P)
    assert len(D.blocks) == 6
    assert set(D.nested_complex().faces()) == set(design_nested_faces(P))


def test_directed_triangle_has_void_complex():
    D = Digraph([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)])
    OB, _ = graphical_oriented_building_set(D)
    assert OB.acyclic_nested_complex().is_empty()
    assert facial_equals_acyclic(OB)[0]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_configs_facial_and_sphere(seed):
    rng = random.Random(seed)
    A = random_configs(rng, count=1, max_columns=6, max_rank=4)[0]
    M = OrientedMatroid.from_config(A)
    for _, OB in oriented_building_sets(M, rng):
        assert facial_equals_acyclic(OB)[0]
        assert sphere_properties(OB)[0]
        assert faces_of(OB.acyclic_nested_complex()) - {frozenset()} == acyclic_by_definition(OB) - {frozenset()}
