"""Input corpora and the invariant suites run by ``nestlab verify``.

Each suite returns a list of entries ``{"suite", "case", "ok", "witness"}``
so that failures are reported rather than raised.
"""
from fractions import Fraction
import random as _random

import networkx as nx

from .building import (
    BuildingSet, admissible_orders, closure_keys, is_building_set, iterated_blowup, random_building_set,
)
from .errors import NestlabError, NotAcyclic
from .facial import (
    OrientedBuildingSet, facial_part, graphical_oriented_building_set, minimal_oriented_building_set,
)
from .geom import verify_acyclonestohedron
from .lattice import BooleanLattice, random_lattice
from .om import Digraph, OrientedMatroid, VectorConfig, om_from_digraph
from .posets import all_connected_posets, epsilon_image, piping_complex, piping_complex_via_acyclic


# ----------------------------------------------------------------------
# digraphs

def _simple(G):
    """Simple digraph with arc multiplicities as edge labels (for hashing)."""
    H = nx.DiGraph()
    H.add_nodes_from(G.nodes)
    for u, v in G.edges():
        if H.has_edge(u, v):
            H[u][v]["m"] += 1
        else:
            H.add_edge(u, v, m=1)
    for u, v in H.edges:
        H[u][v]["m"] = str(H[u][v]["m"])
    return H


def _add_unique(store, G):
    key = (G.number_of_nodes(), G.number_of_edges(), nx.weisfeiler_lehman_graph_hash(_simple(G), edge_attr="m"))
    bucket = store.setdefault(key, [])
    for H in bucket:
        if nx.is_isomorphic(G, H):
            return False
    bucket.append(G)
    return True


def connected_digraphs(max_arcs, acyclic_only=False):
    """All connected directed multigraphs without loops and with 1..max_arcs arcs, up to isomorphism.

    Returned as :class:`Digraph` objects with vertices ``1..k`` and arcs
    labelled ``a, b, c, ...``.
    """
    level = [nx.MultiDiGraph([(0, 1)])]
    out = list(level)
    for _ in range(max_arcs - 1):
        store = {}
        nxt = []
        for G in level:
            n = G.number_of_nodes()
            cands = [(u, v) for u in range(n) for v in range(n) if u != v]
            cands += [(u, n) for u in range(n)] + [(n, u) for u in range(n)]
            for u, v in cands:
                H = G.copy()
                H.add_edge(u, v)
                if _add_unique(store, H):
                    nxt.append(H)
        level = nxt
        out.extend(level)
    result = []
    for G in out:
        if acyclic_only and not nx.is_directed_acyclic_graph(nx.DiGraph(G)):
            continue
        arcs = [(chr(ord("a") + i), u + 1, v + 1) for i, (u, v, _) in enumerate(sorted(G.edges(keys=True)))]
        result.append(Digraph(list(range(1, G.number_of_nodes() + 1)), arcs))
    return result


def four_cycle_digraphs():
    """The two orientations of the 4-cycle with a single source and a single sink (up to symmetry)."""
    return [
        Digraph([1, 2, 3, 4], [("a", 1, 2), ("b", 2, 3), ("c", 4, 3), ("d", 1, 4)]),
        Digraph([1, 2, 3, 4], [("a", 1, 2), ("b", 3, 2), ("c", 3, 4), ("d", 1, 4)]),
    ]


def tree_digraphs(max_arcs):
    return [D for D in connected_digraphs(max_arcs) if len(D.vertices) == len(D.arcs) + 1]


def random_configs(rng, count=50, max_columns=6, max_rank=4, entries=2):
    """Random acyclic rational configurations (last coordinate 1, so no loops)."""
    if isinstance(rng, int):
        rng = _random.Random(rng)
    out = []
    for k in range(count):
        n = rng.randint(2, max_columns)
        d = rng.randint(2, max_rank)
        cols = []
        for _ in range(n):
            c = [Fraction(rng.randint(-entries, entries), rng.randint(1, 2)) for _ in range(d - 1)]
            cols.append(c + [Fraction(1)])
        out.append(VectorConfig([str(i + 1) for i in range(n)], cols))
    return out


def oriented_building_sets(M, rng=None, D=None):
    """Minimal, random and (for digraphs) graphical oriented building sets of ``M``."""
    out = [("minimal", OrientedBuildingSet(minimal_oriented_building_set(M), M, check=False))]
    L = BooleanLattice(M.ground)
    if rng is not None:
        seeds = {p | m for p, m in M.circuit_masks}
        seeds |= {x for x in L.elements() if x and rng.random() < 0.2}
        out.append(("random", OrientedBuildingSet(BuildingSet(L, closure_keys(L, seeds), check=False), M, check=False)))
    if D is not None:
        OB, _ = graphical_oriented_building_set(D)
        out.append(("graphical", OB))
    return out


# ----------------------------------------------------------------------
# suites

def _entry(suite, case, ok, witness=None):
    return {"suite": suite, "case": case, "ok": bool(ok), "witness": witness}


def _digraph_case(D):
    return "digraph " + " ".join("%s:%s>%s" % a for a in D.arcs)


def facial_equals_acyclic(OB):
    """Compare the facial nested complex of the facial part with the acyclic nested complex.

    For a cyclic oriented matroid there is no face lattice, and the acyclic
    nested complex must be void.
    """
    acyc = OB.acyclic_nested_complex()
    if not OB.om.is_acyclic():
        return acyc.is_empty(), None
    fac = facial_part(OB).nested_complex()
    fac = type(fac)([frozenset(frozenset(x) for x in f) for f in fac.facets])
    acyc = type(acyc)([frozenset(frozenset(x) for x in f) for f in acyc.facets])
    if fac == acyc:
        return True, None
    diff = sorted(sorted("".join(sorted(map(str, x))) for x in f) for f in set(fac.facets) ^ set(acyc.facets))
    return False, diff[:3]


def sphere_properties(OB):
    """Purity with dimension rank - |kappa| - 1, pseudomanifold, sphere Euler characteristic."""
    C = OB.acyclic_nested_complex()
    if C.is_empty():
        return not OB.om.is_acyclic(), None
    want = OB.om.rank - len(OB.building.kappa) - 1
    ok = (C.is_pure() and C.dimension() == want and C.is_pseudomanifold()
          and C.has_sphere_euler_characteristic())
    return ok, None if ok else {"dimension": C.dimension(), "expected": want, "f": list(C.f_vector())}


def suite_facial(digraphs, configs, rng):
    out = []
    for D in digraphs:
        M = om_from_digraph(D)
        for name, OB in oriented_building_sets(M, rng, D):
            ok, wit = facial_equals_acyclic(OB)
            out.append(_entry("facial=acyclic", "%s [%s]" % (_digraph_case(D), name), ok, wit))
    for k, A in enumerate(configs):
        M = OrientedMatroid.from_config(A)
        for name, OB in oriented_building_sets(M, rng):
            ok, wit = facial_equals_acyclic(OB)
            out.append(_entry("facial=acyclic", "config #%d [%s]" % (k, name), ok, wit))
    return out


def suite_sphere(digraphs, configs, rng):
    out = []
    items = [(_digraph_case(D), om_from_digraph(D), D) for D in digraphs]
    items += [("config #%d" % k, OrientedMatroid.from_config(A), None) for k, A in enumerate(configs)]
    for case, M, D in items:
        if not M.is_acyclic():
            continue
        for name, OB in oriented_building_sets(M, rng, D):
            ok, wit = sphere_properties(OB)
            out.append(_entry("sphere", "%s [%s]" % (case, name), ok, wit))
    return out


def _block_str(x):
    if isinstance(x, (set, frozenset)):
        return "".join(sorted(map(str, x), key=lambda t: (len(t), t)))
    return str(x)


def blowup_case(L, B, rng, orders=2):
    labels = [B.label(b) for b in B.ordered_blocks()]
    chosen = []
    for _ in range(20 * orders):
        order = admissible_orders(L, labels, rng, count=1)[0]
        if order not in chosen:
            chosen.append(order)
        if len(chosen) == orders:
            break
    results = []
    for order in chosen:
        try:
            _, iso = iterated_blowup(L, order, certify=True, strict=False)
        except NestlabError as exc:
            return False, {"error": type(exc).__name__, "blocks": [_block_str(x) for x in labels]}
        results.append(iso is not None)
    if all(results):
        return True, None
    return False, {"blocks": [_block_str(x) for x in labels]}


def suite_blowup(rng, count=200, max_size=12):
    out = []
    for k in range(count):
        L = random_lattice(rng, max_size=max_size, ground=rng.randint(2, 5))
        B = random_building_set(L, rng, density=rng.choice([0.1, 0.3, 0.6]))
        ok, wit = blowup_case(L, B, rng)
        out.append(_entry("blow-up", "lattice #%d (%d elements, %d blocks)" % (k, L.n, len(B)), ok, wit))
    return out


def suite_realization(digraphs, with_four_cycles=True):
    out = []
    cases = list(digraphs)
    if with_four_cycles:
        cases = four_cycle_digraphs() + cases
    for D in cases:
        M = om_from_digraph(D)
        if not M.is_acyclic():
            continue
        A = D.incidence_config()
        for name, OB in oriented_building_sets(M, None, D):
            try:
                cert = verify_acyclonestohedron(OB.building, A)
                out.append(_entry("realization", "%s [%s]" % (_digraph_case(D), name), True,
                                  {"vertices": len(cert.vertices), "nonacyclic_checked": cert.checked_nonacyclic}))
            except NestlabError as exc:
                out.append(_entry("realization", "%s [%s]" % (_digraph_case(D), name), False,
                                  {"error": type(exc).__name__, "message": str(exc),
                                   "witness": getattr(exc, "witness", None)}))
    return out


def suite_bijection(max_elements=6):
    out = []
    for k in range(1, max_elements + 1):
        for P in all_connected_posets(k):
            try:
                ok = epsilon_image(P, piping_complex(P)) == piping_complex_via_acyclic(P)
            except NotAcyclic:
                ok = False
            out.append(_entry("piping bijection", "poset %s" % (P.covers,), ok))
    return out


def mutated_building_set():
    """A deliberately broken family: the boolean building set B° with the block 125 removed."""
    blocks = ["1", "2", "3", "4", "5", "6", "12", "14", "25", "123", "124", "1234",
              "1235", "1245", "1456", "2456", "12345", "12456", "123456", "456"]
    L = BooleanLattice(["1", "2", "3", "4", "5", "6"])
    return L, [L.key(frozenset(b)) for b in blocks]


def suite_mutation():
    L, keys = mutated_building_set()
    out = []
    ok = is_building_set(L, keys)
    missing = sorted("".join(sorted(L.label(k))) for k in closure_keys(L, keys) - set(keys))
    out.append(_entry("mutation", "B° without 125 is a building set", ok, {"missing_unions": missing}))
    F = L.to_finite()
    Bf = BuildingSet(F, [F.key(L.label(k)) for k in keys], check=False)
    ok, wit = blowup_case(F, Bf, _random.Random(0), orders=1)
    out.append(_entry("mutation", "blow-up of B° without 125", ok, wit))
    return out


CORPORA = ("default", "circuit-free", "mutation", "full")


def run_corpus(name="default", seed=0):
    """Run the invariant suites on a named corpus and return report entries."""
    rng = _random.Random(seed)
    if name == "default":
        dg = connected_digraphs(4)
        out = suite_facial(dg, random_configs(rng, 10), rng)
        out += suite_sphere(dg, random_configs(rng, 10), rng)
        out += suite_blowup(rng, count=20, max_size=10)
        out += suite_realization(connected_digraphs(3))
        out += suite_bijection(4)
        return out
    if name == "full":
        dg = connected_digraphs(5)
        out = suite_facial(dg, random_configs(rng, 50), rng)
        out += suite_sphere(dg, random_configs(rng, 50), rng)
        out += suite_blowup(rng, count=200)
        out += suite_realization(connected_digraphs(4))
        out += suite_bijection(6)
        return out
    if name == "circuit-free":
        trees = tree_digraphs(4)
        out = suite_facial(trees, [], rng)
        out += suite_sphere(trees, [], rng)
        out += suite_realization(trees, with_four_cycles=False)
        return out
    if name == "mutation":
        return suite_mutation()
    raise ValueError("unknown corpus %r (expected one of %s)" % (name, ", ".join(CORPORA)))
