import random
from itertools import combinations
from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from nestlab.errors import NotAffine
from nestlab.geom import polytope_f_vector, vertex_enumeration
from nestlab.posets import (
    AffinePoset, Poset, affine_chain, affine_diamond, affine_piping_complex, affine_piping_complex_oracle,
    affine_validate, all_connected_posets, chain_poset, epsilon_image, piping_complex, piping_complex_via_acyclic,
    poset_associahedron, random_connected_poset, star_poset, verify_affine_cyclohedron,
    verify_poset_associahedron,
)


def pipings_by_definition(P):
    """Oracle: faces of the piping complex enumerated straight from the pipe and piping definitions."""
    E = list(P.elements)
    H = nx.Graph(P.covers)
    H.add_nodes_from(E)
    pipes = []
    for k in range(2, len(E) + 1):
        for Q in combinations(E, k):
            Q = frozenset(Q)
            convex = all(q in Q for p in Q for r in Q for q in E if P.leq(p, q) and P.leq(q, r))
            if convex and nx.is_connected(H.subgraph(Q)):
                pipes.append(Q)
    full = frozenset(E)
    others = [Q for Q in pipes if Q != full]
    faces = set()
    for k in range(len(others) + 1):
        for fam in combinations(others, k):
            if any(not (a <= b or b <= a or not a & b) for a, b in combinations(fam, 2)):
                continue
            D = nx.DiGraph()
            allp = list(fam) + [full]
            D.add_nodes_from(range(len(allp)))
            for i, Q in enumerate(allp):
                for j, R in enumerate(allp):
                    if not Q & R and any(P.lt(q, r) for q in Q for r in R):
                        D.add_edge(i, j)
            if nx.is_directed_acyclic_graph(D):
                faces.add(frozenset(fam))
    return faces


def faces_of(C):
    return {frozenset(frozenset(x) for x in f) for f in C.faces()}


@pytest.mark.parametrize("k, vertices", [(3, 2), (4, 5), (5, 14)])
def test_chains_give_associahedra(k, vertices):
    P = chain_poset(k)
    assert faces_of(piping_complex(P)) == pipings_by_definition(P)
    assert len(vertex_enumeration(poset_associahedron(P))) == vertices


def test_star_gives_permutahedron():
    C = piping_complex(star_poset(3))
    assert C.f_vector() == (1, 6, 6)
    assert len(vertex_enumeration(poset_associahedron(star_poset(3)))) == 6


def test_three_dimensional_example():
    P = Poset([1, 2, 3, 4, 5], [(1, 2), (1, 3), (2, 4), (3, 4), (3, 5)])
    C = piping_complex(P)
    assert faces_of(C) == pipings_by_definition(P)
    f = polytope_f_vector(poset_associahedron(P))
    # dual f-vector: polytope faces of dimension d-1-i match complex faces of size i
    assert tuple(reversed(f[1:-1])) == C.f_vector()[1:]
    cert = verify_poset_associahedron(P)
    assert cert.dimension == 3


def test_connected_poset_counts():
    assert [len(all_connected_posets(k)) for k in range(1, 7)] == [1, 1, 3, 10, 44, 238]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_posets(seed):
    P = random_connected_poset(random.Random(seed), max_elements=5)
    C = piping_complex(P)
    assert faces_of(C) == pipings_by_definition(P)
    assert epsilon_image(P, C) == piping_complex_via_acyclic(P)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_affine_chain_cyclohedra(n):
    P = affine_chain(n)
    C = affine_piping_complex(P)
    O, stable = affine_piping_complex_oracle(P)
    assert stable and C == O
    # cyclohedron vertices: binom(2n - 2, n - 1)
    assert C.f_vector()[-1] == comb(2 * n - 2, n - 1)
    cert = verify_affine_cyclohedron(P)
    assert len(cert.vertices) == comb(2 * n - 2, n - 1)


def test_affine_chain4_f_vector():
    assert affine_piping_complex(affine_chain(4)).f_vector() == (1, 12, 30, 20)


def test_affine_diamond():
    P = affine_diamond()
    O, stable = affine_piping_complex_oracle(P)
    assert stable and affine_piping_complex(P) == O


def test_affine_axioms():
    with pytest.raises(NotAffine):
        affine_validate(AffinePoset(2, [(1, 2, 0), (2, 1, 0)]), 2)
