import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from conftest import fs, sstr
from nestlab import _linalg as la
from nestlab.building import BuildingSet, closure_keys, complete_building_set
from nestlab.errors import Unbounded
from nestlab.facial import OrientedBuildingSet, graphical_oriented_building_set
from nestlab.geom import (
    Fan, HRepPolytope, acyclonestohedron, nested_fan, nestohedron_hrep, nestohedron_vertex, polytope_f_vector,
    to_off, verify_acyclonestohedron, vertex_enumeration,
)
from nestlab.lattice import BooleanLattice
from nestlab.om import A_CIRC, Digraph
from nestlab.posets import Poset, piping_complex


def fourier_motzkin_feasible(rows, rhs):
    """Oracle: decide {t : rows . t >= rhs} != {} by eliminating variables one at a time."""
    cons = [([Fraction(a) for a in r], Fraction(b)) for r, b in zip(rows, rhs)]
    d = len(rows[0])
    for k in range(d):
        pos = [c for c in cons if c[0][k] > 0]
        neg = [c for c in cons if c[0][k] < 0]
        new = [c for c in cons if c[0][k] == 0]
        for a, b in pos:
            for a2, b2 in neg:
                s, s2 = -a2[k], a[k]
                new.append(([s * x + s2 * y for x, y in zip(a, a2)], s * b + s2 * b2))
        cons = new
    return all(b <= 0 for _, b in cons)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(1, 6), st.integers(0, 10 ** 6))
def test_feasibility_against_fourier_motzkin(d, m, seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(m)]
    rhs = [rng.randint(-2, 2) for _ in range(m)]
    t = la.feasible_point(rows, rhs)
    assert (t is not None) == fourier_motzkin_feasible(rows, rhs)
    if t is not None:
        assert all(la.dot(r, t) >= b for r, b in zip(rows, rhs))


def test_simplex_statuses():
    assert la.simplex([1, 1], [[1, 1]], [2])[:2] == ("optimal", 2)
    assert la.simplex([1, 0], [[1, -1]], [0])[0] == "unbounded"
    assert la.simplex([0], [[1], [1]], [1, 2])[0] == "infeasible"
    # two of the equalities cannot hold together with the sign conditions
    rows, rhs = [], []
    cols = [(0, 0, 0, 1), (0, 0, 0, 1), (0, 0, 1, 1), (1, 0, 0, 1), (0, 1, 0, 1), (1, 1, 0, 1)]
    for c, s in zip(cols, (-1, -1, -1, 0, 0, -1)):
        if s == 0:
            rows += [list(c), [-a for a in c]]
            rhs += [0, 0]
        else:
            rows.append([s * a for a in c])
            rhs.append(1)
    assert la.feasible_point(rows, rhs) is None


def test_fan_checks():
    assert not Fan([(1, 0), (0, 1), (1, 1)], [{0, 1}, {0, 2}]).is_fan()
    assert Fan([(1, 0), (0, 1), (1, 1)], [{0, 2}, {2, 1}]).is_fan()
    assert Fan([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], [{0, 1}, {2, 3}]).is_fan()


def test_vertex_enumeration_edge_cases():
    with pytest.raises(Unbounded):
        vertex_enumeration(HRepPolytope(2, [], [([-1, 0], 1)]))
    box = [([-1, 0], 1), ([1, 0], -5), ([0, 1], -3), ([0, -1], -4)]
    assert vertex_enumeration(HRepPolytope(2, [], box)) == [(-5, -3), (-5, 4), (-1, -3), (-1, 4)]
    assert vertex_enumeration(HRepPolytope(2, [], [([1, 0], 1), ([-1, 0], 1)])) == []


def test_permutohedron():
    B = complete_building_set(BooleanLattice([1, 2, 3]))
    P = nestohedron_hrep(B, lambda X: 1)
    assert set(vertex_enumeration(P)) == set(permutations((1, 2, 4)))
    assert polytope_f_vector(P) == (1, 6, 6, 1)


def test_off_output():
    text = to_off([(0, 0, 0), (1, 0, 0), (0, 1, 0)], [[0, 1, 2]])
    lines = text.splitlines()
    assert lines[0] == "OFF" and lines[2] == "3 1 0" and lines[-1] == "3 0 1 2"


def _random_boolean_building(rng, n):
    L = BooleanLattice(list(range(1, n + 1)))
    seeds = [x for x in L.elements() if x and rng.random() < 0.3]
    return BuildingSet(L, closure_keys(L, seeds), check=False)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_nestohedron_vertices_and_tightness(seed):
    rng = random.Random(seed)
    B = _random_boolean_building(rng, rng.randint(1, 4))
    lam = {fs(B.label(b)): Fraction(rng.randint(1, 9), rng.randint(1, 4)) for b in B.blocks}
    P = nestohedron_hrep(B, lam)
    V = set(vertex_enumeration(P))
    formula = {}
    for N in B.maximal_nested_sets():
        labels = [B.label(k) for k in N]
        v = nestohedron_vertex(B, lam, labels)
        formula[v] = {fs(x) for x in labels}
    assert V == set(formula)
    for v, N in formula.items():
        tight = {fs(P.labels[i]) for i in P.tight(v)}
        assert tight <= {fs(B.label(b)) for b in B.blocks}
        assert tight | set(map(fs, (B.label(k) for k in B.kappa))) == N | set(map(fs, (B.label(k) for k in B.kappa)))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_nested_fan_is_complete_fan(seed):
    rng = random.Random(seed)
    B = _random_boolean_building(rng, rng.randint(2, 4))
    F = nested_fan(B)
    assert F.is_fan()
    assert len(F.maximal_cones) == len(B.maximal_nested_sets())


def test_acyclonestohedron_circ(b_circ, m_circ):
    cert = verify_acyclonestohedron(b_circ, A_CIRC)
    assert cert.dimension == 3 and len(cert.vertices) == 18
    facets = {sstr(X) for X in cert.facet_of_block}
    assert facets == {"3", "4", "5", "6", "12", "123", "124", "125", "1234", "1235", "12456"}
    C = OrientedBuildingSet(b_circ, m_circ).acyclic_nested_complex()
    assert C.f_vector() == (1, 11, 27, 18)
    assert facets == {sstr(x) for f in C.facets for x in f} - {"123456"}
    PS, phi = acyclonestohedron(b_circ, A_CIRC, "RS", with_map=True)
    PA = acyclonestohedron(b_circ, A_CIRC, "RA")
    assert sorted(phi(v) for v in vertex_enumeration(PS)) == vertex_enumeration(PA)


@pytest.mark.parametrize("arcs", [
    [("a", 1, 2), ("b", 2, 3), ("c", 4, 3), ("d", 1, 4)],
    [("a", 1, 2), ("b", 3, 2), ("c", 3, 4), ("d", 1, 4)],
])
def test_four_cycle_polygons(arcs):
    OB, A = graphical_oriented_building_set(Digraph([1, 2, 3, 4], arcs))
    cert = verify_acyclonestohedron(OB.building, A)
    # oracle: pipings of the poset with the same cover relations
    expected = piping_complex(Poset([1, 2, 3, 4], [(u, v) for _, u, v in arcs])).f_vector()
    assert OB.acyclic_nested_complex().f_vector() == expected
    assert cert.dimension == 2 and len(cert.vertices) == expected[-1]
    assert expected in ((1, 6, 6), (1, 8, 8))
