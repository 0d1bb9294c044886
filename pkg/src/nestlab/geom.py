"""Exact polyhedral realizations: nested fans, nestohedra and acyclonestohedra.

Vectors are tuples of ``Fraction`` indexed by the ground set of the building
set, in the order of ``B.lattice.ground``.  Inequalities are stored as pairs
``(a, b)`` meaning ``<a, x> >= b``; equalities as ``(a, b)`` meaning
``<a, x> = b``.
"""
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations


from . import _linalg as la
from .building import BuildingSet, SimplicialComplex, _fmt
from .errors import (
    DimensionTooLarge, NotAcyclic, NotAtomic, NotMaximal, NotNested, NotOrientedBuildingSet,
    Unbounded, VerificationFailed,
)
from .facial import OrientedBuildingSet, is_oriented_building_set
from .lattice import BooleanLattice, label_key, lattice_from_sets
from .om import OrientedMatroid, VectorConfig

ZERO = Fraction(0)


def max_dimension():
    return int(os.environ.get("NESTLAB_MAX_DIM", "7"))


def char_vector(X, ground):
    """Characteristic vector e_X in R^ground."""
    X = set(X)
    return tuple(Fraction(int(s in X)) for s in ground)


# ----------------------------------------------------------------------
# fans

@dataclass
class Fan:
    """A simplicial fan given by rays and maximal cones (sets of ray indices).

    ``lineality`` holds extra generators of a linear subspace added to every
    cone (the characteristic vectors of connected components for nested fans).
    """
    rays: list
    maximal_cones: list
    ray_labels: list = field(default_factory=list)
    lineality: list = field(default_factory=list)

    @property
    def ambient_dimension(self):
        vecs = self.rays or self.lineality
        return len(vecs[0]) if vecs else 0

    def cones(self):
        """All cones (faces of maximal cones), including the zero cone."""
        out = set()
        for c in self.maximal_cones:
            c = sorted(c)
            for k in range(len(c) + 1):
                out.update(frozenset(x) for x in combinations(c, k))
        return sorted(out, key=lambda f: (len(f), sorted(f)))

    def generators(self, cone):
        return [self.rays[i] for i in sorted(cone)] + list(self.lineality)

    def is_simplicial(self):
        return all(la.rank(self.generators(c)) == len(c) + len(self.lineality)
                   for c in self.maximal_cones)

    def properly_intersect(self, c1, c2):
        common = sorted(set(c1) & set(c2))
        tail = [self.rays[i] for i in common] + list(self.lineality)
        g1 = [self.rays[i] for i in sorted(set(c1) - set(common))] + tail
        g2 = [self.rays[i] for i in sorted(set(c2) - set(common))] + tail
        return cones_intersect_properly(g1, g2, len(tail))

    def is_fan(self):
        """Simplicial and every two maximal cones meet along a common face."""
        if not self.is_simplicial():
            return False
        return all(self.properly_intersect(a, b) for a, b in combinations(self.maximal_cones, 2))

    def to_json(self):
        return {"rays": [[str(x) for x in r] for r in self.rays],
                "ray_labels": [_fmt(x) for x in self.ray_labels],
                "cones": [sorted(c) for c in self.maximal_cones],
                "lineality": [[str(x) for x in r] for r in self.lineality]}


def cones_intersect_properly(gens1, gens2, n_common):
    """Simplicial cones sharing their first generators: is the intersection the common face?

    ``gens1`` and ``gens2`` must list the ``n_common`` shared generators
    last.  Maximizes the mass on non-shared generators over the (normalized)
    intersection with an exact simplex solver; zero means proper.
    """
    own1 = len(gens1) - n_common
    own2 = len(gens2) - n_common
    if own1 == 0 or own2 == 0:
        return True
    dim = len(gens1[0])
    nvar = len(gens1) + len(gens2)
    # coefficients of both cones agree, total mass plus a slack equals one
    A_eq = [[la.frac(g[i]) for g in gens1] + [-la.frac(g[i]) for g in gens2] + [ZERO] for i in range(dim)]
    A_eq.append([Fraction(1)] * (nvar + 1))
    c = [1] * own1 + [0] * n_common + [1] * own2 + [0] * n_common + [0]
    status, opt, _ = la.simplex(c, A_eq, [0] * dim + [1])
    return status == "optimal" and opt == 0


def nested_fan(B):
    """Rays e_X for blocks outside kappa, cones indexed by nested sets."""
    if not B.is_boolean:
        return lattice_nested_fan(B.lattice, B)
    ground = B.lattice.ground
    return _fan_from_vectors(B, lambda k: char_vector(B.label(k), ground))


def lattice_nested_fan(L, B):
    """Nested fan of an atomic lattice: rays are characteristic vectors of atoms below."""
    if not L.is_atomic():
        raise NotAtomic("lattice nested fans need an atomic lattice")
    atoms = L.atoms()
    pos = {a: i for i, a in enumerate(atoms)}

    def vec(k):
        v = [ZERO] * len(atoms)
        for a in L.atoms_below(k):
            v[pos[a]] = Fraction(1)
        return tuple(v)

    return _fan_from_vectors(B, vec)


def _fan_from_vectors(B, vec):
    kappa = B.kappa
    outside = [b for b in B.ordered_blocks() if b not in kappa]
    index = {b: i for i, b in enumerate(outside)}
    maxi = [frozenset(index[b] for b in N if b not in kappa) for N in B.maximal_nested_sets()]
    kappa_sorted = sorted(kappa, key=lambda k: label_key(B.label(k)))
    return Fan(rays=[vec(b) for b in outside], maximal_cones=maxi,
               ray_labels=[B.label(b) for b in outside],
               lineality=[vec(k) for k in kappa_sorted])


# ----------------------------------------------------------------------
# nestohedra

def _block_labels(B):
    return [frozenset(x) for x in B.labels()]


def normalize_weights(B, lam):
    """Weights as a dict frozenset -> Fraction over all blocks (callables allowed)."""
    out = {}
    for X in _block_labels(B):
        if callable(lam):
            w = lam(X)
        else:
            w = lam.get(X, lam.get(tuple(sorted(X, key=str)), None)) if isinstance(lam, dict) else None
            if w is None:
                raise KeyError("missing weight for block %s" % _fmt(X))
        out[X] = la.frac(w)
    return out


def is_positive_weight(B, lam):
    return all(w > 0 for X, w in normalize_weights(B, lam).items() if len(X) >= 2)


def _check_maximal(B, N):
    N = [frozenset(x) for x in N]
    keys = {B.key_of(x) for x in N}
    if not B.is_nested_keys(keys):
        raise NotNested("not a nested set")
    if len(keys) != len(B.lattice.ground):
        raise NotMaximal("the nested set is not maximal")
    return N


def vertex_terms(B, N):
    """For each ground element s, the blocks X with s in X contained in beta(s, N)."""
    N = _check_maximal(B, N)
    blocks = _block_labels(B)
    out = {}
    for s in B.lattice.ground:
        beta = min((X for X in N if s in X), key=len)
        out[s] = sorted((X for X in blocks if s in X and X <= beta), key=label_key)
    return out


def nestohedron_vertex(B, lam, N):
    w = normalize_weights(B, lam)
    terms = vertex_terms(B, N)
    return tuple(sum((w[X] for X in terms[s]), ZERO) for s in B.lattice.ground)


def omega(B, w, X):
    """Right-hand side sum of the weights of blocks contained in X."""
    return sum((w[Y] for Y in w if Y <= X), ZERO)


def g_value(B, lam, X, x):
    """g_X(x) = <e_X, x> - sum of weights of blocks inside X."""
    w = normalize_weights(B, lam)
    ground = B.lattice.ground
    return la.dot(char_vector(X, ground), x) - omega(B, w, frozenset(X))


@dataclass
class HRepPolytope:
    """``{x : <a, x> = b for equalities, <a, x> >= b for inequalities}``."""
    dimension: int
    equalities: list
    inequalities: list
    labels: list = field(default_factory=list)
    redundant: list = field(default_factory=list)

    def __post_init__(self):
        self.equalities = [(tuple(map(la.frac, a)), la.frac(b)) for a, b in self.equalities]
        self.inequalities = [(tuple(map(la.frac, a)), la.frac(b)) for a, b in self.inequalities]
        if not self.labels:
            self.labels = [None] * len(self.inequalities)
        if not self.redundant:
            self.redundant = [False] * len(self.inequalities)

    def contains(self, x):
        return (all(la.dot(a, x) == b for a, b in self.equalities)
                and all(la.dot(a, x) >= b for a, b in self.inequalities))

    def slack(self, i, x):
        a, b = self.inequalities[i]
        return la.dot(a, x) - b

    def tight(self, x):
        return [i for i in range(len(self.inequalities)) if self.slack(i, x) == 0]

    def drop(self, indices):
        keep = [i for i in range(len(self.inequalities)) if i not in set(indices)]
        return HRepPolytope(self.dimension, list(self.equalities),
                            [self.inequalities[i] for i in keep],
                            [self.labels[i] for i in keep], [self.redundant[i] for i in keep])

    def to_json(self):
        def row(a, b, i=None):
            d = {"a": [str(x) for x in a], "b": str(b)}
            if i is not None and self.labels[i] is not None:
                d["label"] = _fmt(self.labels[i])
                d["redundant"] = bool(self.redundant[i])
            return d
        return {"dimension": self.dimension,
                "eq": [row(a, b) for a, b in self.equalities],
                "ineq": [row(a, b, i) for i, (a, b) in enumerate(self.inequalities)]}

    @classmethod
    def from_json(cls, data):
        eq = [(r["a"], r["b"]) for r in data.get("eq", [])]
        ineq = [(r["a"], r["b"]) for r in data.get("ineq", [])]
        dim = data.get("dimension")
        if dim is None:
            rows = eq + ineq
            dim = len(rows[0][0]) if rows else 0
        return cls(dim, eq, ineq)


def nestohedron_hrep(B, lam):
    w = normalize_weights(B, lam)
    ground = B.lattice.ground
    eqs = [(char_vector(K, ground), omega(B, w, frozenset(K))) for K in map(frozenset, B.connected_components())]
    labels = sorted(w, key=label_key)
    ineqs = [(char_vector(X, ground), omega(B, w, X)) for X in labels]
    return HRepPolytope(len(ground), eqs, ineqs, labels=labels)


# ----------------------------------------------------------------------
# dependence and evaluation spaces, rho weights

def spaces(A):
    """Exact bases (dependences, evaluations) of the configuration ``A``."""
    n = len(A.ground)
    rows = A.rows()
    dep = [tuple(v) for v in la.kernel(rows, n)]
    ev = [tuple(v) for v in la.row_space(rows, n)]
    return dep, ev


@dataclass
class RhoWeights:
    building: BuildingSet
    R: Fraction
    weights: dict

    def __getitem__(self, X):
        return self.weights[frozenset(X)]


def circuit_ratio(coeffs):
    vals = [abs(x) for x in coeffs.values() if x != 0]
    return max(vals) / min(vals)


def rho_weights(B, A):
    """rho_X = 0 on singletons and R^|X| otherwise, R = |B| max_c r_c (|B| if circuit-free)."""
    M = A if isinstance(A, OrientedMatroid) else OrientedMatroid.from_config(A)
    if not is_oriented_building_set(B, M):
        raise NotOrientedBuildingSet("some circuit support is not a block")
    ratios = [circuit_ratio(M.circuit_coefficients(c)) for c in M.circuit_masks]
    R = Fraction(len(B)) * (max(ratios) if ratios else 1)
    weights = {X: (ZERO if len(X) == 1 else R ** len(X)) for X in _block_labels(B)}
    return RhoWeights(B, R, weights)


def _resolve_weights(B, A, weights):
    if weights is None:
        return rho_weights(B, A).weights
    if callable(weights) and not isinstance(weights, dict):
        weights = weights(B, A)
    if isinstance(weights, RhoWeights):
        weights = weights.weights
    return normalize_weights(B, weights)


def _setup(B, A):
    M = OrientedMatroid.from_config(A)
    OB = OrientedBuildingSet(B, M)
    if not M.is_acyclic():
        raise NotAcyclic("acyclonestohedra need an acyclic configuration")
    return M, OB


@dataclass
class AffineMap:
    """y = matrix . x + offset."""
    matrix: list
    offset: tuple

    def __call__(self, x):
        return tuple(la.dot(row, x) + o for row, o in zip(self.matrix, self.offset))


def _span_equalities(A):
    """Normals of the orthogonal complement of the span of the columns."""
    return [tuple(v) for v in la.kernel([list(c) for c in A.columns], A.dim)] if A.columns else \
        [tuple(Fraction(int(i == j)) for i in range(A.dim)) for j in range(A.dim)]


def rs_to_ra_map(A):
    """The linear map Psi* sending the evaluation space onto span(A).

    For x in the evaluation space, the image y is the unique vector of span(A)
    with <a_s, y> = x_s for every s.  Extended by zero on dependences.
    """
    n = len(A.ground)
    dep, ev = spaces(A)
    cols = [list(c) for c in A.columns]
    span_eq = _span_equalities(A)
    images = []
    for s in range(n):
        # projection of e_s onto the evaluation space (orthogonal to dependences)
        e = [Fraction(int(i == s)) for i in range(n)]
        f = _project(e, ev)
        sol = la.affine_solutions(cols + [list(w) for w in span_eq],
                                  f + [ZERO] * len(span_eq), A.dim)
        y0, free = sol
        assert not free
        images.append(y0)
    matrix = [[images[s][i] for s in range(n)] for i in range(A.dim)]
    return AffineMap(matrix, tuple([ZERO] * A.dim))


def _project(v, basis):
    """Orthogonal projection of v on the span of ``basis``."""
    if not basis:
        return [ZERO] * len(v)
    G = [[la.dot(a, b) for b in basis] for a in basis]
    coef = la.solve(G, [la.dot(a, v) for a in basis])
    return [sum((c * a[i] for c, a in zip(coef, basis)), ZERO) for i in range(len(v))]


def acyclonestohedron(B, A, space="RS", weights=None, with_map=False):
    """Acyclonestohedron as an H-representation, in R^S ("RS") or span(A) ("RA").

    Inequalities of blocks that are not faces of OM(A) are flagged redundant.
    With ``with_map`` also returns the affine map from the RS to the RA model.
    """
    M, OB = _setup(B, A)
    B = OB.building
    w = _resolve_weights(B, A, weights)
    faces = M.face_masks
    labels = sorted(w, key=label_key)
    redundant = [B.key_of(X) not in faces for X in labels]
    comps = [frozenset(K) for K in B.connected_components()]
    ground = B.lattice.ground
    if space == "RS":
        dep, _ = spaces(A)
        eqs = [(char_vector(K, ground), omega(B, w, K)) for K in comps]
        eqs += [(d, ZERO) for d in dep]
        ineqs = [(char_vector(X, ground), omega(B, w, X)) for X in labels]
        P = HRepPolytope(len(ground), eqs, ineqs, labels=labels, redundant=redundant)
    elif space == "RA":
        def abar(X):
            return tuple(sum((A.column(s)[i] for s in X), ZERO) for i in range(A.dim))
        eqs = [(abar(K), omega(B, w, K)) for K in comps]
        eqs += [(v, ZERO) for v in _span_equalities(A)]
        ineqs = [(abar(X), omega(B, w, X)) for X in labels]
        P = HRepPolytope(A.dim, eqs, ineqs, labels=labels, redundant=redundant)
    else:
        raise ValueError("space must be 'RS' or 'RA'")
    if with_map:
        return P, rs_to_ra_map(A)
    return P


def section_then_truncate(B, A, weights=None):
    """Simplex section by the evaluation space, then truncations by facial blocks only."""
    P = acyclonestohedron(B, A, "RS", weights)
    drop = [i for i, X in enumerate(P.labels) if len(X) >= 2 and P.redundant[i]]
    return P.drop(drop)


# ----------------------------------------------------------------------
# exact vertex enumeration

def _reduce(P):
    """Substitute x = x0 + T t; returns (x0, T, rows, rhs) or None if infeasible."""
    if P.equalities:
        sol = la.affine_solutions([list(a) for a, _ in P.equalities], [b for _, b in P.equalities], P.dimension)
        if sol is None:
            return None
        x0, T = sol
    else:
        x0 = [ZERO] * P.dimension
        T = [[Fraction(int(i == j)) for i in range(P.dimension)] for j in range(P.dimension)]
    rows, rhs = [], []
    for a, b in P.inequalities:
        rows.append([la.dot(a, t) for t in T])
        rhs.append(b - la.dot(a, x0))
    return x0, T, rows, rhs


def _lift(x0, T, t):
    return tuple(x0[i] + sum((tj[i] * c for tj, c in zip(T, t)), ZERO) for i in range(len(x0)))


def _feasible(rows, rhs, d):
    return la.feasible_point(rows, rhs) is not None


def vertex_enumeration(P):
    """Exact vertices by solving every full-rank system of active constraints."""
    red = _reduce(P)
    if red is None:
        return []
    x0, T, rows, rhs = red
    d = len(T)
    if d > max_dimension():
        raise DimensionTooLarge("combinatorial dimension %d exceeds the guard %d" % (d, max_dimension()))
    live = []
    for r, b in zip(rows, rhs):
        if all(x == 0 for x in r):
            if b > 0:
                return []
        else:
            live.append((r, b))
    rows = [r for r, _ in live]
    rhs = [b for _, b in live]
    if d == 0:
        return [tuple(x0)]
    if la.rank(rows, d) < d:
        if _feasible(rows, rhs, d):
            raise Unbounded("the polyhedron contains a line")
        return []
    for sub in combinations(range(len(rows)), d - 1):
        K = la.kernel([rows[i] for i in sub], d)
        if len(K) != 1:
            continue
        r = K[0]
        vals = [la.dot(row, r) for row in rows]
        if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
            if _feasible(rows, rhs, d):
                raise Unbounded("the polyhedron has a recession direction")
            return []
    found = set()
    for sub in combinations(range(len(rows)), d):
        t = la.solve([rows[i] for i in sub], [rhs[i] for i in sub])
        if t is None:
            continue
        if all(la.dot(row, t) >= b for row, b in zip(rows, rhs)):
            found.add(_lift(x0, T, t))
    return sorted(found)


def _affine_dim(points):
    if not points:
        return -1
    p0 = points[0]
    return la.rank([[a - b for a, b in zip(p, p0)] for p in points[1:]], len(p0)) if len(points) > 1 else 0


def polytope_faces(P, vertices=None):
    """Faces as frozensets of vertex indices (including the empty face and P)."""
    V = vertex_enumeration(P) if vertices is None else vertices
    full = frozenset(range(len(V)))
    tight = {frozenset(j for j, v in enumerate(V) if P.slack(i, v) == 0) for i in range(len(P.inequalities))}
    proper = {t for t in tight if t and t != full}
    facets = [t for t in proper if not any(t < u for u in proper)]
    faces = {full, frozenset()}
    frontier = set(facets)
    while frontier:
        faces |= frontier
        frontier = {a & b for a in frontier for b in facets} - faces
    return V, sorted(faces, key=lambda f: (len(f), sorted(f)))


def polytope_face_lattice(P):
    _, faces = polytope_faces(P)
    return lattice_from_sets(faces)


def polytope_f_vector(P):
    """(f_{-1}, f_0, ..., f_d) counted over all faces."""
    V, faces = polytope_faces(P)
    dims = [_affine_dim([V[i] for i in sorted(f)]) for f in faces]
    top = max(dims)
    return tuple(dims.count(k) for k in range(-1, top + 1))


def affine_coordinates(points):
    """Exact coordinates of the points in an affine basis of their span (first point at the origin)."""
    if not points:
        return []
    p0 = points[0]
    basis = []
    for p in points[1:]:
        d = [a - b for a, b in zip(p, p0)]
        if la.rank(basis + [d], len(p0)) > len(basis):
            basis.append(d)
    cols = la.transpose(basis)
    if not basis:
        return [() for _ in points]
    return [tuple(la.solve(cols, [a - b for a, b in zip(p, p0)])) for p in points]


def to_off(vertices, faces=None):
    """OFF text for a 3-dimensional vertex set; coordinates are converted to floats (lossy)."""
    lines = ["OFF", "# lossy: exact rationals converted to floating point"]
    faces = faces or []
    lines.append("%d %d 0" % (len(vertices), len(faces)))
    for v in vertices:
        lines.append(" ".join("%.12g" % float(x) for x in v))
    for f in faces:
        lines.append(" ".join(str(x) for x in [len(f)] + list(f)))
    return "\n".join(lines) + "\n"


def cyclic_facet_order(V, facet):
    """Vertex indices of a 2-dimensional face listed in cyclic order (for OFF output)."""
    pts = [V[i] for i in facet]
    n = len(pts)
    cen = [sum(p[k] for p in pts) / n for k in range(len(pts[0]))]
    # angles in a basis of the face plane, floating point is fine for display
    base = [[float(a - c) for a, c in zip(p, cen)] for p in pts]
    u = base[0]
    nu = math.sqrt(sum(x * x for x in u)) or 1.0
    u = [x / nu for x in u]
    w = next((b for b in base[1:] if abs(sum(x * y for x, y in zip(b, u))) < 0.999 * math.sqrt(sum(x * x for x in b))), base[1])
    proj = sum(x * y for x, y in zip(w, u))
    w = [x - proj * y for x, y in zip(w, u)]
    nw = math.sqrt(sum(x * x for x in w)) or 1.0
    w = [x / nw for x in w]
    ang = [math.atan2(sum(x * y for x, y in zip(b, w)), sum(x * y for x, y in zip(b, u))) for b in base]
    return [i for _, i in sorted(zip(ang, sorted(facet)))]


# ----------------------------------------------------------------------
# verification

@dataclass
class AcyclCertificate:
    vertices: list
    facet_of_block: dict
    tight_blocks: list
    dimension: int
    checked_nonacyclic: int = 0

    def to_json(self):
        return {"dimension": self.dimension,
                "vertices": [[str(x) for x in v] for v in self.vertices],
                "facets": {_fmt(X): sorted(f) for X, f in sorted(self.facet_of_block.items(),
                                                                   key=lambda kv: label_key(kv[0]))}}


def violated_circuits(OB, keys):
    """Circuits c with c- inside and c+ not inside some union of members of ``keys``."""
    out = set()
    for u in OB._unions(keys):
        for p, m in OB.om.circuit_masks:
            if m & ~u == 0 and p & ~u:
                out.add((p, m))
    return out


def lemma_positivity(B, A, weights=None):
    """Check <delta, v_N> > 0 for every maximal N above a non-acyclic nested set.

    Returns the number of non-acyclic nested sets checked; raises
    VerificationFailed with the nested set as witness otherwise.
    """
    M, OB = _setup(B, A)
    B = OB.building
    w = _resolve_weights(B, A, weights)
    ground = M.ground
    kappa = B.kappa
    maxi = B.maximal_nested_sets()
    verts = {N: nestohedron_vertex(B, w, [B.label(k) for k in N]) for N in maxi}
    count = 0
    for face in B.nested_faces():
        keys = set(face) | kappa
        bad = violated_circuits(OB, keys)
        if not bad:
            continue
        count += 1
        above = [N for N in maxi if keys <= N]
        for p, m in bad:
            coeffs = M.circuit_coefficients((p, m))
            delta = [coeffs.get(s, ZERO) for s in ground]
            # orient delta so that its positive part is c+
            j = next(iter(i for i in range(len(ground)) if p >> i & 1))
            if delta[j] < 0:
                delta = [-x for x in delta]
            for N in above:
                if la.dot(delta, verts[N]) <= 0:
                    raise VerificationFailed("vertex outside the open halfspace of a violated circuit",
                                             witness=sorted(_fmt(B.label(k)) for k in keys))
    return count


def verify_acyclonestohedron(B, A, weights=None, check_lemma=True):
    """Check that the acyclonestohedron realizes the acyclic nested complex.

    Returns an AcyclCertificate whose ``facet_of_block`` maps every block
    labelling a facet to the set of vertex indices on that facet.
    """
    M, OB = _setup(B, A)
    Bb = OB.building
    P = acyclonestohedron(Bb, A, "RS", weights)
    V = vertex_enumeration(P)
    cx = OB.acyclic_nested_complex()
    kappa_labels = {frozenset(K) for K in Bb.connected_components()}
    dim = _affine_dim(V)
    tight_blocks = []
    for v in V:
        T = frozenset(P.labels[i] for i in P.tight(v)) - kappa_labels
        if len(T) != dim:
            raise VerificationFailed("the acyclonestohedron is not simple at a vertex", witness=[str(x) for x in v])
        tight_blocks.append(T)
    got = SimplicialComplex(tight_blocks) if V else SimplicialComplex([])
    want = SimplicialComplex([frozenset(f) for f in cx.facets]) if not cx.is_empty() else SimplicialComplex([])
    if got != want:
        extra = sorted(set(got.facets) ^ set(want.facets), key=lambda f: sorted(map(label_key, f)))
        raise VerificationFailed("polar boundary complex differs from the acyclic nested complex",
                                 witness=[sorted(_fmt(x) for x in f) for f in extra[:1]])
    # acyclic nested sets meet the evaluation space
    for face in cx.faces():
        if not any(face <= T for T in tight_blocks):
            raise VerificationFailed("acyclic nested set misses the evaluation space",
                                     witness=sorted(_fmt(x) for x in face))
    facet_of_block = {}
    for X in sorted(cx.vertices, key=label_key):
        facet_of_block[X] = frozenset(j for j, T in enumerate(tight_blocks) if X in T)
    n_bad = lemma_positivity(Bb, A, weights) if check_lemma else 0
    return AcyclCertificate(V, facet_of_block, tight_blocks, dim, n_bad)
