"""Poset associahedra and affine poset cyclohedra.

Both are obtained as acyclic nested complexes of graphical-type oriented
building sets; the direct definitions (pipes and pipings) are kept as
independent enumerations to compare against.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import networkx as nx

from .building import BuildingSet, SimplicialComplex, closure_keys, graphical_building_set, join_all
from .errors import CyclicInput, DisconnectedHasse, NotAffine
from .facial import OrientedBuildingSet, graphical_oriented_building_set, line_graph
from .geom import acyclonestohedron, verify_acyclonestohedron
from .lattice import BooleanLattice, label_key
from .om import Digraph, OrientedMatroid, VectorConfig


# ----------------------------------------------------------------------
# finite posets

class Poset:
    """A finite poset stored through its transitive closure and Hasse diagram."""

    def __init__(self, elements, relations):
        self.elements = tuple(sorted(set(elements), key=label_key))
        G = nx.DiGraph()
        G.add_nodes_from(self.elements)
        G.add_edges_from((a, b) for a, b in relations if a != b)
        if not nx.is_directed_acyclic_graph(G):
            raise CyclicInput("the relations contain a directed cycle")
        self.closure = nx.transitive_closure_dag(G)
        self.hasse = nx.transitive_reduction(G)
        self.hasse.add_nodes_from(self.elements)
        self.covers = sorted(self.hasse.edges(), key=lambda e: (label_key(e[0]), label_key(e[1])))

    @classmethod
    def from_digraph(cls, D):
        return cls(D.vertices, [(t, h) for _, t, h in D.arcs])

    @classmethod
    def from_json(cls, data):
        return cls(data["elements"], [tuple(r) for r in data["relations"]])

    def to_json(self):
        return {"elements": list(self.elements), "relations": [list(c) for c in self.covers]}

    def __repr__(self):
        return "Poset(%d elements, covers %s)" % (len(self.elements), self.covers)

    def __len__(self):
        return len(self.elements)

    def lt(self, a, b):
        return self.closure.has_edge(a, b)

    def leq(self, a, b):
        return a == b or self.lt(a, b)

    def is_connected(self):
        return len(self.elements) <= 1 or nx.is_weakly_connected(self.hasse)

    def require_connected(self):
        if not self.is_connected():
            raise DisconnectedHasse("the Hasse diagram is not connected")

    def arc_label(self, p, q):
        return "%s<%s" % (p, q)

    def hasse_digraph(self):
        """Hasse diagram with arcs p -> q labeled "p<q"."""
        return Digraph(self.elements, [(self.arc_label(p, q), p, q) for p, q in self.covers])

    def epsilon(self, Q):
        """Arcs of the Hasse diagram with both ends in ``Q``."""
        Q = set(Q)
        return frozenset(self.arc_label(p, q) for p, q in self.covers if p in Q and q in Q)

    def is_convex(self, Q):
        Q = set(Q)
        return all(not (self.leq(p, x) and self.leq(x, r))
                   for p in Q for r in Q for x in self.elements if x not in Q)

    def is_hasse_connected(self, Q):
        Q = set(Q)
        if len(Q) <= 1:
            return True
        return nx.is_weakly_connected(self.hasse.subgraph(Q))


def chain_poset(k):
    return Poset(range(1, k + 1), [(i, i + 1) for i in range(1, k)])


def star_poset(leaves):
    """A minimum element below ``leaves`` incomparable elements."""
    return Poset(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def transitive_closure_digraph(D):
    """Digraph of all relations of the transitive closure of ``D`` (labels "p<q")."""
    P = Poset.from_digraph(D)
    arcs = [("%s<%s" % (a, b), a, b) for a, b in sorted(P.closure.edges(),
                                                       key=lambda e: (label_key(e[0]), label_key(e[1])))]
    return Digraph(P.elements, arcs)


# pipes and pipings ----------------------------------------------------

def pipes(P):
    """All pipes: subsets of size > 1, connected in the Hasse diagram, order convex."""
    P.require_connected()
    if len(P) < 2:
        return []
    out = []
    for k in range(2, len(P) + 1):
        for Q in combinations(P.elements, k):
            if P.is_hasse_connected(Q) and P.is_convex(Q):
                out.append(frozenset(Q))
    return out


def _nested_or_disjoint(Q, R):
    return Q <= R or R <= Q or not (Q & R)


def _d_arc(P, Q, R):
    return not (Q & R) and any(P.lt(q, r) for q in Q for r in R)


def is_piping(P, family):
    family = [frozenset(Q) for Q in family]
    full = frozenset(P.elements)
    if full not in family:
        return False
    if not all(_nested_or_disjoint(Q, R) for Q, R in combinations(family, 2)):
        return False
    G = nx.DiGraph()
    G.add_nodes_from(family)
    G.add_edges_from((Q, R) for Q in family for R in family if Q != R and _d_arc(P, Q, R))
    return nx.is_directed_acyclic_graph(G)


def piping_complex(P):
    """Faces are pipings minus the full pipe (direct enumeration)."""
    ps = [Q for Q in pipes(P) if Q != frozenset(P.elements)]
    full = frozenset(P.elements)
    faces = []

    def rec(start, chosen):
        faces.append(frozenset(chosen))
        for i in range(start, len(ps)):
            cand = chosen + [ps[i]]
            if is_piping(P, cand + [full]):
                rec(i + 1, cand)

    rec(0, [])
    return SimplicialComplex(faces)


def poset_oriented_building_set(P):
    """Graphical oriented building set of the Hasse diagram, with its incidence configuration."""
    P.require_connected()
    return graphical_oriented_building_set(P.hasse_digraph())


def piping_complex_via_acyclic(P):
    OB, _ = poset_oriented_building_set(P)
    return OB.acyclic_nested_complex()


def epsilon_image(P, C):
    """Image of a piping complex under Q -> epsilon(Q)."""
    return SimplicialComplex([frozenset(P.epsilon(Q) for Q in f) for f in C.facets]) \
        if not C.is_empty() else SimplicialComplex([])


def poset_weights(B):
    """rho_tau = |B|^|tau| for every tube, singletons included."""
    n = len(B)
    return {frozenset(X): Fraction(n) ** len(X) for X in B.labels()}


def poset_associahedron(P, space="RA", with_map=False):
    OB, A = poset_oriented_building_set(P)
    return acyclonestohedron(OB.building, A, space, weights=poset_weights(OB.building), with_map=with_map)


def verify_poset_associahedron(P):
    OB, A = poset_oriented_building_set(P)
    return verify_acyclonestohedron(OB.building, A, weights=poset_weights(OB.building))


def piping_link_posets(P, piping):
    """Posets P_{Q in piping}: transitive closure of the restriction to Q with smaller pipes contracted."""
    piping = [frozenset(Q) for Q in piping]
    full = frozenset(P.elements)
    if full not in piping:
        piping = piping + [full]
    out = []
    D = P.hasse_digraph()
    for Q in piping:
        inner = set()
        for R in piping:
            if R < Q:
                inner |= P.epsilon(R)
        sub = Digraph([v for v in D.vertices if v in Q], [a for a in D.arcs if a[0] in P.epsilon(Q)])
        out.append(Poset.from_digraph(sub.contract(inner)))
    return out


def piping_link(P, piping):
    """Join of the piping complexes of the posets P_{Q in piping}."""
    return join_all([piping_complex(R) for R in piping_link_posets(P, piping)])


def random_connected_poset(rng, max_elements=6, density=0.4):
    """Random poset on 1..k whose Hasse diagram is connected (k >= 2)."""
    while True:
        k = rng.randint(2, max_elements)
        rel = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1) if rng.random() < density]
        order = list(range(1, k + 1))
        rng.shuffle(order)
        rel = [(order[i - 1], order[j - 1]) for i, j in rel]
        P = Poset(range(1, k + 1), rel)
        if P.is_connected():
            return P


def all_connected_posets(k, up_to_isomorphism=True):
    """Posets on 1..k with connected Hasse diagram.

    Every poset has a natural labeling, so relations i < j with i < j as
    integers suffice; duplicates are removed by order (and optionally by
    isomorphism class).
    """
    pairs = [(i, j) for i in range(1, k + 1) for j in range(i + 1, k + 1)]
    closures = set()
    for r in range(len(pairs) + 1):
        for rel in combinations(pairs, r):
            rel = set(rel)
            if all((a, c) in rel for a, b in rel for b2, c in rel if b == b2):
                closures.add(frozenset(rel))
    out = []
    buckets = {}
    for rel in sorted(closures, key=lambda x: (len(x), sorted(x))):
        P = Poset(range(1, k + 1), rel)
        if not P.is_connected():
            continue
        if up_to_isomorphism:
            h = nx.weisfeiler_lehman_graph_hash(P.hasse)
            bucket = buckets.setdefault(h, [])
            if any(nx.is_isomorphic(P.hasse, Q.hasse) for Q in bucket):
                continue
            bucket.append(P)
        out.append(P)
    return out


# ----------------------------------------------------------------------
# affine posets

def _floor(m, n):
    return (m - 1) // n


def _res(m, n):
    return (m - 1) % n + 1


@dataclass(frozen=True)
class CoverClass:
    """Residues ``i, j`` in 1..n and offset ``k``: i covered by j + k n (and all shifts)."""
    i: int
    j: int
    k: int

    @property
    def label(self):
        return "%d<%d" % (self.i, self.j) if self.k == 0 else "%d<%d%+dn" % (self.i, self.j, self.k)


class AffinePoset:
    """An affine poset on Z of order n, given by its cover relation classes.

    Elements of Z are written ``r + q n`` with residue ``r`` in 1..n.
    """

    def __init__(self, n, cover_classes):
        self.n = n
        self.classes = tuple(sorted({CoverClass(*c) if not isinstance(c, CoverClass) else c
                                     for c in cover_classes}, key=lambda c: (c.i, c.j, c.k)))
        self.max_offset = max((abs(c.k) for c in self.classes), default=0)
        self._reach = None

    def __repr__(self):
        return "AffinePoset(n=%d, %s)" % (self.n, [c.label for c in self.classes])

    @property
    def labels(self):
        return [c.label for c in self.classes]

    def to_json(self):
        return {"n": self.n, "cover_classes": [{"from": c.i, "to": c.j, "offset": c.k} for c in self.classes]}

    @classmethod
    def from_json(cls, data):
        return cls(data["n"], [(c["from"], c["to"], c["offset"]) for c in data["cover_classes"]])

    # order ------------------------------------------------------------
    def quotient_graph(self):
        G = nx.MultiDiGraph()
        G.add_nodes_from(range(1, self.n + 1))
        for c in self.classes:
            G.add_edge(c.i, c.j, offset=c.k, label=c.label)
        return G

    def _bounds(self):
        lo = -(self.n - 1) * self.max_offset - 1
        return lo

    def _walks(self, start, hi):
        """States (residue, offset) reachable from (start, 0) by walks of length >= 1."""
        lo = self._bounds()
        seen = set()
        frontier = [(start, 0)]
        while frontier:
            nxt = []
            for r, off in frontier:
                for c in self.classes:
                    if c.i == r:
                        st = (c.j, off + c.k)
                        if lo <= st[1] <= hi and st not in seen:
                            seen.add(st)
                            nxt.append(st)
            frontier = nxt
        return seen

    def reach(self, hi=None):
        hi = self.default_hi() if hi is None else hi
        if self._reach is None or self._reach[0] < hi:
            self._reach = (hi, {r: self._walks(r, hi) for r in range(1, self.n + 1)})
        return self._reach[1]

    def default_hi(self):
        return (self.n + 2) * (self.max_offset + 1)

    def lt(self, a, b):
        d = _floor(b, self.n) - _floor(a, self.n)
        hi = max(self.default_hi(), d + 1)
        return (_res(b, self.n), d) in self.reach(hi)[_res(a, self.n)]

    def leq(self, a, b):
        return a == b or self.lt(a, b)

    def covers_of(self, a):
        """Upper covers of the integer ``a``."""
        out = []
        q, r = _floor(a, self.n), _res(a, self.n)
        for c in self.classes:
            if c.i == r:
                out.append((c, c.j + (q + c.k) * self.n))
        return out

    def lower_covers_of(self, b):
        out = []
        q, r = _floor(b, self.n), _res(b, self.n)
        for c in self.classes:
            if c.j == r:
                out.append((c, c.i + (q - c.k) * self.n))
        return out

    def neighbors(self, a):
        return [x for _, x in self.covers_of(a)] + [x for _, x in self.lower_covers_of(a)]

    def class_of_cover(self, a, b):
        for c, x in self.covers_of(a):
            if x == b:
                return c
        return None


def affine_validate(cover_classes, n):
    """Check the axioms of an affine poset; raises NotAffine naming the failing one."""
    P = cover_classes if isinstance(cover_classes, AffinePoset) else AffinePoset(n, cover_classes)
    n = P.n
    if any(not (1 <= c.i <= n and 1 <= c.j <= n) for c in P.classes):
        raise NotAffine("residues must lie in 1..n")
    # antisymmetry: every closed walk has positive total offset
    G = nx.DiGraph()
    G.add_nodes_from(range(1, n + 1))
    big = len(P.classes) + n + 1
    for c in P.classes:
        w = c.k * big - 1
        if G.has_edge(c.i, c.j):
            w = min(w, G[c.i][c.j]["weight"])
        G.add_edge(c.i, c.j, weight=w)
    if any(c.i == c.j and c.k <= 0 for c in P.classes) or (G.number_of_edges() and nx.negative_edge_cycle(G)):
        raise NotAffine("the relation is not antisymmetric (a cycle of non-positive offset)")
    # first axiom: i < i + n
    reach = P.reach()
    for r in range(1, n + 1):
        if (r, 1) not in reach[r]:
            raise NotAffine("first axiom fails: %d is not below %d" % (r, r + n))
    # third axiom: cofinality, i.e. every class reaches every class
    if n > 1 and not nx.is_strongly_connected(G):
        raise NotAffine("third axiom fails: some element class never lies below another")
    # covers must be covers
    for c in P.classes:
        a, b = c.i, c.j + c.k * n
        for c2, x in P.covers_of(a):
            if x != b and P.lt(x, b):
                raise NotAffine("class %s is not a cover relation" % c.label)
    return P


def affine_chain(n):
    return AffinePoset(n, [(i, i + 1, 0) for i in range(1, n)] + [(n, 1, 1)])


def affine_diamond():
    """Order-3 affine poset whose four cover classes all meet residue 1."""
    return AffinePoset(3, [(1, 2, 0), (1, 3, 0), (2, 1, 1), (3, 1, 1)])


@dataclass
class AffineStructures:
    quotient_graph: object
    line_graph: list
    config: VectorConfig
    building: BuildingSet
    graphical: BuildingSet


def affine_incidence_config(P):
    """Vectors b~_i - b~_j in dimension n + 1, with b~_m = b_{m mod n} + floor(m) b_{n+1}."""
    n = P.n
    cols = []
    for c in P.classes:
        v = [Fraction(0)] * (n + 1)
        v[c.i - 1] += 1
        v[c.j - 1] -= 1
        # floor(i) - floor(j + k n) with i, j residues
        v[n] -= c.k
        cols.append(v)
    return VectorConfig(P.labels, cols)


def affine_line_graph(P):
    out = []
    for a, b in combinations(P.classes, 2):
        if {a.i, a.j} & {b.i, b.j}:
            out.append((a.label, b.label))
    return out


def affine_structures(P):
    A = affine_incidence_config(P)
    M = OrientedMatroid.from_config(A)
    hat = graphical_building_set(P.labels, affine_line_graph(P))
    L = hat.lattice
    keys = closure_keys(L, set(hat.blocks) | {L.key(frozenset(M.labels_of(p | m))) for p, m in M.circuit_masks})
    return AffineStructures(P.quotient_graph(), affine_line_graph(P), A,
                            BuildingSet(L, keys, check=False), hat)


def affine_oriented_building_set(P):
    S = affine_structures(P)
    return OrientedBuildingSet(S.building, OrientedMatroid.from_config(S.config)), S.config


def affine_piping_complex(P):
    """Computed as the acyclic nested complex of the affine poset oriented building set."""
    OB, _ = affine_oriented_building_set(P)
    return OB.acyclic_nested_complex()


def affine_cyclohedron(P, space="RA", with_map=False):
    OB, A = affine_oriented_building_set(P)
    return acyclonestohedron(OB.building, A, space, weights=poset_weights(OB.building), with_map=with_map)


def verify_affine_cyclohedron(P):
    OB, A = affine_oriented_building_set(P)
    return verify_acyclonestohedron(OB.building, A, weights=poset_weights(OB.building))


def circuit_cycle_decomposition(P, coeffs):
    """Split a circuit dependence into quotient-graph cycles.

    ``coeffs`` maps class labels to nonzero coefficients.  Returns a list of
    (weight, cycle labels, cycle offset) with positive weights, such that the
    weighted offsets sum to zero.
    """
    by_label = {c.label: c for c in P.classes}
    flow = {}
    for lab, d in coeffs.items():
        if d == 0:
            continue
        c = by_label[lab]
        # traverse the arc forwards when d > 0, backwards otherwise
        flow[lab] = (abs(d), (c.i, c.j) if d > 0 else (c.j, c.i), 1 if d > 0 else -1)
    cycles = []
    while flow:
        start = next(iter(flow))
        path = [start]
        seen = {flow[start][1][0]: 0}
        v = flow[start][1][1]
        while v not in seen:
            seen[v] = len(path)
            lab = next(l for l in flow if flow[l][1][0] == v and l not in path)
            path.append(lab)
            v = flow[lab][1][1]
        cyc = path[seen[v]:]
        w = min(flow[l][0] for l in cyc)
        # offset of the cycle in the sign convention c+ minus c-
        off = sum(-by_label[l].k * flow[l][2] for l in cyc)
        cycles.append((w, frozenset(cyc), off))
        for l in cyc:
            amount, arc, sgn = flow[l]
            if amount == w:
                del flow[l]
            else:
                flow[l] = (amount - w, arc, sgn)
    return cycles


# bounded-shift oracle ------------------------------------------------

def affine_pipes(P):
    """Representatives of pipe classes (minimum residue-normalized), excluding Z.

    Connected thin sets are grown from their minimum through Hasse neighbours,
    which is finite because thin sets have at most n elements.
    """
    n = P.n
    found = set()
    for start in range(1, n + 1):
        stack = [frozenset([start])]
        seen = set(stack)
        while stack:
            Q = stack.pop()
            if len(Q) > 1 and _affine_convex(P, Q):
                found.add(Q)
            if len(Q) == n:
                continue
            res = {_res(x, n) for x in Q}
            for x in Q:
                for y in P.neighbors(x):
                    if y > start and y not in Q and _res(y, n) not in res:
                        R = Q | {y}
                        if R not in seen:
                            seen.add(R)
                            stack.append(R)
    return sorted(found, key=lambda Q: (len(Q), sorted(Q)))


def _affine_convex(P, Q):
    n = P.n
    span = (n - 1) * P.max_offset + 1
    lo = (min(_floor(x, n) for x in Q) - span) * n + 1
    hi = (max(_floor(x, n) for x in Q) + span + 1) * n
    for x in range(lo, hi + 1):
        if x in Q:
            continue
        if any(P.lt(p, x) for p in Q) and any(P.lt(x, r) for r in Q):
            return False
    return True


def pipe_block(P, Q):
    """Cover relation classes induced by the pipe ``Q``."""
    out = set()
    for a in Q:
        for c, b in P.covers_of(a):
            if b in Q:
                out.add(c.label)
    return frozenset(out)


def _shift(Q, k, n):
    return frozenset(x + k * n for x in Q)


def _class_relation(P, Q, R, window):
    """'nested', 'disjoint' or None for two pipe classes (shifts searched in the window)."""
    n = P.n
    nested = False
    for k in range(-window, window + 1):
        S = _shift(Q, k, n)
        if S & R:
            if S <= R or R <= S:
                nested = True
            else:
                return None
    return "nested" if nested else "disjoint"


def affine_piping_complex_oracle(P, window=None):
    """Affine piping complex from the pipe definitions, labeled by induced cover classes.

    Directed cycles of D are searched among shifts by at most ``window``
    periods; the complex is recomputed with a doubled window and
    ``stable`` reports whether both agree.
    """
    window = 1 + P.max_offset if window is None else window
    reps = affine_pipes(P)
    C1 = _oracle_complex(P, reps, window)
    C2 = _oracle_complex(P, reps, 2 * window)
    return C1, C1 == C2


def _oracle_complex(P, reps, window):
    n = P.n
    wide = window + n * (P.max_offset + 2)
    rel = {}
    for a, b in combinations(range(len(reps)), 2):
        rel[a, b] = _class_relation(P, reps[a], reps[b], wide)
    faces = []

    def ok(chosen):
        for a, b in combinations(chosen, 2):
            if rel[min(a, b), max(a, b)] is None:
                return False
        # D-acyclicity among shifted copies
        G = nx.DiGraph()
        copies = [(_shift(reps[a], k, n)) for a in chosen for k in range(-window, window + 1)]
        G.add_nodes_from(range(len(copies)))
        for u, U in enumerate(copies):
            for v, V in enumerate(copies):
                if u != v and not (U & V) and any(P.lt(x, y) for x in U for y in V):
                    G.add_edge(u, v)
        return nx.is_directed_acyclic_graph(G)

    def rec(start, chosen):
        faces.append(frozenset(pipe_block(P, reps[a]) for a in chosen))
        for i in range(start, len(reps)):
            if ok(chosen + [i]):
                rec(i + 1, chosen + [i])

    rec(0, [])
    return SimplicialComplex(faces)
