import random
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from nestlab.corpus import random_configs
from nestlab.errors import CircuitAxiomViolation
from nestlab.om import (
    A_CIRC, D_CIRC, Digraph, OrientedMatroid, SignedSet, check_circuit_axioms, connected_components,
    contraction_from_circuits, dual_config, flat_lattice, initial_om, om_from_digraph, restrict_contract_om,
    smallest_face_containing,
)


def _rays(cols):
    """Rays of a central arrangement: normals to rank d-1 subsets of columns, both signs."""
    d = len(cols[0])
    rays = set()
    for sub in combinations(range(len(cols)), d - 1):
        K = sympy.Matrix([cols[i] for i in sub]).nullspace() if d > 1 else [sympy.Matrix([1])]
        if len(K) != 1:
            continue
        v = K[0] / max(abs(x) for x in K[0])
        rays.add(tuple(v))
        rays.add(tuple(-v))
    return sorted(rays)


def covectors_by_rays(cols):
    """Oracle: sign vectors y.a_i over all subset sums of rays.

    For a full-rank configuration every cell is the relative interior of the
    cone on its rays, so the subset sums meet every cell.
    """
    cols = [[sympy.nsimplify(x) for x in c] for c in cols]
    d = len(cols[0])
    assert sympy.Matrix(cols).rank() == d
    rays = _rays(cols)
    found = set()
    for k in range(len(rays) + 1):
        for S in combinations(rays, k):
            y = [sum((r[i] for r in S), sympy.Integer(0)) for i in range(d)]
            found.add(tuple(sympy.sign(sum(a * b for a, b in zip(c, y))) for c in cols))
    return found


def vectors_by_rays(cols):
    """Oracle: sign vectors of the kernel, as covectors of a Gale dual."""
    A = sympy.Matrix([[sympy.nsimplify(x) for x in c] for c in cols]).T
    K = A.nullspace()
    if not K:
        return {tuple([0] * len(cols))}
    return covectors_by_rays([list(r) for r in sympy.Matrix.hstack(*K).tolist()])


def as_sign_tuples(M, masks):
    out = set()
    for pm in masks:
        s = M.to_signed(pm)
        out.add(tuple(1 if l in s.plus else -1 if l in s.minus else 0 for l in M.ground))
    return out


def test_exm_signed_sets(m_circ):
    C = {(frozenset(p), frozenset(m)) for p, m in [("1", "2"), ("16", "45"), ("26", "45")]}
    C |= {(m, p) for p, m in C}
    K = {(frozenset(p), frozenset(m)) for p, m in
         [("12", "6"), ("124", ""), ("125", ""), ("3", ""), ("46", ""), ("4", "5"), ("56", "")]}
    K |= {(m, p) for p, m in K}
    assert {(c.plus, c.minus) for c in m_circ.circuits()} == C
    assert {(c.plus, c.minus) for c in m_circ.cocircuits()} == K
    assert len(m_circ.vector_masks) == 13 and len(m_circ.covector_masks) == 153


def test_vectors_and_covectors_against_ray_oracle(m_circ):
    assert as_sign_tuples(m_circ, m_circ.vector_masks) == vectors_by_rays(A_CIRC.columns)
    assert as_sign_tuples(m_circ, m_circ.covector_masks) == covectors_by_rays(A_CIRC.columns)


def test_graphical_equals_configuration(m_circ):
    assert om_from_digraph(D_CIRC) == m_circ


def test_abstract_from_circuits(m_circ):
    Ab = OrientedMatroid(m_circ.ground, m_circ.circuit_masks)
    assert set(Ab.cocircuit_masks) == set(m_circ.cocircuit_masks)
    assert Ab.rank == m_circ.rank == 4


def test_faces(m_circ):
    assert m_circ.is_acyclic()
    assert len(m_circ.faces()) == 20
    assert m_circ.is_face(["3"]) and not m_circ.is_face(["1"]) and m_circ.is_face(["1", "2"])
    assert smallest_face_containing(m_circ, ["1"]) == frozenset("12")
    assert connected_components(m_circ) == [frozenset("3"), frozenset("12456")]
    assert len(flat_lattice(m_circ).labels) == 24


def test_dual_circuits_are_cocircuits(m_circ):
    Md = OrientedMatroid.from_config(dual_config(A_CIRC))
    assert sorted(map(repr, Md.circuits())) == sorted(map(repr, m_circ.cocircuits()))


def test_minors(m_circ):
    R = restrict_contract_om(m_circ, ["1", "2", "3"], "restriction")
    assert {repr(c) for c in R.circuits()} == {"(1,2)", "(2,1)"}
    C = restrict_contract_om(m_circ, ["1", "2", "3"], "contraction")
    assert contraction_from_circuits(m_circ, ["1", "2", "3"]) == C
    G = om_from_digraph(D_CIRC)
    assert restrict_contract_om(G, "123", "contraction") == om_from_digraph(D_CIRC.contract("123"))


def test_directed_cycle():
    M = om_from_digraph(Digraph([1, 2, 3], [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)]))
    assert [repr(c) for c in M.circuits()] == ["(∅,abc)", "(abc,∅)"]
    assert not M.is_acyclic()


def test_axiom_violation():
    with pytest.raises(CircuitAxiomViolation):
        check_circuit_axioms([(1, 0), (2, 0), (3, 0)])


def test_signed_set_ops():
    x, y = SignedSet("a", "b"), SignedSet("bc", "")
    assert x.compose(y) == SignedSet("ac", "b")
    assert -x == SignedSet("b", "a")
    assert x.orthogonal(SignedSet("ab", ""))
    with pytest.raises(ValueError):
        SignedSet("a", "a")


def test_initial_om_constant_weight(m_circ):
    assert initial_om(m_circ, {l: 0 for l in m_circ.ground}) == m_circ


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_configs(seed):
    A = random_configs(random.Random(seed), count=1, max_columns=6, max_rank=4)[0]
    M = OrientedMatroid.from_config(A)
    check_circuit_axioms(M.circuit_masks)
    for c in M.circuits():
        for k in M.cocircuits():
            assert c.orthogonal(k)
    # last coordinate 1 makes the all-positive vector a covector
    assert M.is_acyclic()
    assert (sum(1 << i for i in range(len(M.ground))), 0) in set(M.covector_masks)
    assert M.rank == sympy.Matrix([[sympy.nsimplify(x) for x in c] for c in A.columns]).rank()
    Md = OrientedMatroid.from_config(dual_config(A))
    assert set(map(repr, Md.circuits())) == set(map(repr, M.cocircuits()))
    assert OrientedMatroid(M.ground, M.circuit_masks) == M


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_sign_vectors_against_ray_oracle(seed):
    A = random_configs(random.Random(seed), count=1, max_columns=4, max_rank=3)[0]
    M = OrientedMatroid.from_config(A)
    if M.rank < len(A.columns[0]):
        return
    assert as_sign_tuples(M, M.covector_masks) == covectors_by_rays(A.columns)
    assert as_sign_tuples(M, M.vector_masks) == vectors_by_rays(A.columns)
