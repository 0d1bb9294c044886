"""Oriented matroids from vector configurations, digraphs or circuit lists.

Internally a signed subset of the ground set is a pair of bitmasks
``(plus, minus)`` over the ground indices; :class:`SignedSet` is the
label-level view used at the API boundary.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from . import _linalg as la
from .errors import (
    CertificationFailed, CircuitAxiomViolation, GroundMismatch, GroundOverlap,
    NotAcyclic, NotAProperFace,
)
from .lattice import FiniteLattice, bits, label_key, lattice_from_sets, set_label


# ----------------------------------------------------------------------
# signed sets

@dataclass(frozen=True)
class SignedSet:
    plus: frozenset
    minus: frozenset

    def __post_init__(self):
        object.__setattr__(self, "plus", frozenset(self.plus))
        object.__setattr__(self, "minus", frozenset(self.minus))
        if self.plus & self.minus:
            raise ValueError("positive and negative parts must be disjoint")

    @property
    def support(self):
        return self.plus | self.minus

    def __neg__(self):
        return SignedSet(self.minus, self.plus)

    def compose(self, other):
        return SignedSet(self.plus | (other.plus - self.minus), self.minus | (other.minus - self.plus))

    def orthogonal(self, other):
        same = (self.plus & other.plus) | (self.minus & other.minus)
        opp = (self.plus & other.minus) | (self.minus & other.plus)
        return bool(same) == bool(opp)

    def __repr__(self):
        m = set_label(self.minus) if self.minus else "∅"
        p = set_label(self.plus) if self.plus else "∅"
        return "(%s,%s)" % (p, m)

    def sort_key(self):
        return (len(self.support), label_key(self.plus), label_key(self.minus))


def _orth(x, y):
    return bool((x[0] & y[0]) | (x[1] & y[1])) == bool((x[0] & y[1]) | (x[1] & y[0]))


def _compose(x, y):
    return (x[0] | (y[0] & ~x[1]), x[1] | (y[1] & ~x[0]))


def _support_minimal(pairs):
    pairs = [p for p in set(pairs) if p[0] | p[1]]
    sups = {p[0] | p[1] for p in pairs}
    minimal = {s for s in sups if not any(t != s and t & ~s == 0 for t in sups)}
    return {p for p in pairs if p[0] | p[1] in minimal}


def span_masks(generators):
    """All compositions of the generators (plus the zero signed set)."""
    gens = list(set(generators))
    seen = {(0, 0)}
    todo = [(0, 0)]
    while todo:
        x = todo.pop()
        for g in gens:
            y = _compose(x, g)
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return seen


def orthogonal_filter(others, n):
    """Every sign vector on ``n`` elements orthogonal to all of ``others`` (3**n scan)."""
    out = []
    for code in range(3 ** n):
        p = m = 0
        c = code
        for i in range(n):
            r = c % 3
            c //= 3
            if r == 1:
                p |= 1 << i
            elif r == 2:
                m |= 1 << i
        if all(_orth((p, m), o) for o in others):
            out.append((p, m))
    return set(out)


def orthogonal_backtrack(others, n):
    """Sign vectors orthogonal to all of ``others``, by pruned backtracking."""
    others = [o for o in set(others) if o[0] | o[1]]
    by_last = [[] for _ in range(n)]
    for o in others:
        by_last[(o[0] | o[1]).bit_length() - 1].append(o)
    out = []

    def rec(i, p, m):
        if i == n:
            out.append((p, m))
            return
        b = 1 << i
        for q, r in ((p, m), (p | b, m), (p, m | b)):
            if all(_orth((q, r), o) for o in by_last[i]):
                rec(i + 1, q, r)

    rec(0, 0, 0)
    return set(out)


# ----------------------------------------------------------------------
# vector configurations

class VectorConfig:
    """Exact rational vectors indexed by ground labels."""

    def __init__(self, ground, columns):
        self.ground = tuple(ground)
        self.columns = tuple(tuple(la.frac(x) for x in c) for c in columns)
        if len(self.ground) != len(self.columns):
            raise ValueError("one column per ground element is required")
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground labels must be distinct")
        dims = {len(c) for c in self.columns}
        if len(dims) > 1:
            raise ValueError("columns must have a common dimension")
        self.dim = dims.pop() if dims else 0

    def __repr__(self):
        return "VectorConfig(%d vectors in dimension %d)" % (len(self.ground), self.dim)

    def __eq__(self, other):
        return isinstance(other, VectorConfig) and self.ground == other.ground and self.columns == other.columns

    def __hash__(self):
        return hash((self.ground, self.columns))

    def rows(self, subset=None):
        idx = range(len(self.ground)) if subset is None else subset
        return [[self.columns[j][i] for j in idx] for i in range(self.dim)]

    @property
    def rank(self):
        return la.rank(self.rows(), len(self.ground))

    def column(self, label):
        return self.columns[self.ground.index(label)]

    def sub(self, labels):
        labels = list(labels)
        return VectorConfig(labels, [self.column(s) for s in labels])

    def to_json(self):
        return {"ground": [str(g) for g in self.ground],
                "columns": [[str(x) for x in c] for c in self.columns]}

    @classmethod
    def from_json(cls, data):
        return cls(data["ground"], data["columns"])


def _circuit_data(A):
    """Circuits of ``A`` as ``{(plus, minus): {index: coefficient}}`` (both signs)."""
    n = len(A.ground)
    r = A.rank
    out = {}
    found = []
    for k in range(1, min(r + 1, n) + 1):
        for sub in combinations(range(n), k):
            sm = _mask(sub)
            if any(s & ~sm == 0 for s in found):
                continue
            ker = la.kernel(A.rows(sub), k)
            if len(ker) != 1 or any(x == 0 for x in ker[0]):
                continue
            v = la.normalize_min_one(ker[0])
            for sign in (1, -1):
                p = m = 0
                coeffs = {}
                for j, x in zip(sub, v):
                    x = sign * x
                    coeffs[j] = x
                    if x > 0:
                        p |= 1 << j
                    else:
                        m |= 1 << j
                out[(p, m)] = coeffs
            found.append(sm)
    return out


def _mask(indices):
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _cocircuits_hyperplanes(A):
    """Cocircuits from hyperplanes spanned by columns (both signs)."""
    n = len(A.ground)
    basis, _ = la.rref(A.rows(), n)
    r = len(basis)
    cols = [[row[j] for row in basis] for j in range(n)]
    out = set()
    seen = set()
    zero_sets = []
    for sub in combinations(range(n), r - 1) if r >= 1 else ():
        sm = _mask(sub)
        if any(sm & ~z == 0 for z in zero_sets):
            continue
        ker = la.kernel([cols[j] for j in sub], r)
        if len(ker) != 1:
            continue
        y = ker[0]
        p = m = 0
        for j in range(n):
            v = la.dot(y, cols[j])
            if v > 0:
                p |= 1 << j
            elif v < 0:
                m |= 1 << j
        zero_sets.append(((1 << n) - 1) & ~(p | m))
        if (p, m) in seen:
            continue
        seen.add((p, m))
        out.add((p, m))
        out.add((m, p))
    return out


def dual_config(A):
    """Gale-type dual: rows form a basis of the linear dependences of ``A``."""
    n = len(A.ground)
    ker = la.kernel(A.rows(), n)
    return VectorConfig(A.ground, [[w[j] for w in ker] for j in range(n)])


# ----------------------------------------------------------------------
# oriented matroids

class OrientedMatroid:
    """An oriented matroid given by its circuits.

    ``config`` (optional) is a realizing vector configuration; when present,
    cocircuits and contractions are computed from it by linear algebra.
    """

    def __init__(self, ground, circuits=None, config=None, coefficients=None, check=False):
        self.ground = tuple(ground)
        self.n = len(self.ground)
        self.gindex = {g: i for i, g in enumerate(self.ground)}
        self.config = config
        if circuits is None and config is None:
            circuits = ()
        if circuits is not None:
            self._circ = frozenset(circuits)
            self.coefficients = coefficients or {}
        if check:
            check_circuit_axioms(self._circ)

    def __getattr__(self, name):
        # circuits of a realizable matroid are computed on first use
        if name in ("_circ", "coefficients") and self.__dict__.get("config") is not None:
            data = _circuit_data(self.config)
            self._circ = frozenset(data)
            self.coefficients = data
            return self.__dict__[name]
        raise AttributeError(name)

    # constructors --------------------------------------------------------
    @classmethod
    def from_config(cls, A):
        return cls(A.ground, config=A)

    @classmethod
    def from_circuits(cls, ground, circuits, check=True):
        om = cls(ground, [])
        masks = {om.to_mask(c) for c in circuits}
        masks |= {(m, p) for (p, m) in masks}
        return cls(ground, masks, check=check)

    def __repr__(self):
        return "OrientedMatroid(%d elements, %d circuits)" % (self.n, len(self._circ))

    def __eq__(self, other):
        """Same ground labels and the same signed circuits."""
        if not isinstance(other, OrientedMatroid) or set(self.ground) != set(other.ground):
            return False
        return set(self.circuits()) == set(other.circuits())

    def __hash__(self):
        return hash(frozenset(self.circuits()))

    # conversions ---------------------------------------------------------
    def to_mask(self, x):
        return (_mask(self.gindex[s] for s in x.plus), _mask(self.gindex[s] for s in x.minus))

    def subset_mask(self, labels):
        return _mask(self.gindex[s] for s in labels)

    def labels_of(self, mask):
        return frozenset(self.ground[i] for i in bits(mask))

    def to_signed(self, pm):
        return SignedSet(self.labels_of(pm[0]), self.labels_of(pm[1]))

    def _sorted(self, masks):
        return sorted((self.to_signed(x) for x in masks), key=SignedSet.sort_key)

    # signed sets ---------------------------------------------------------
    @property
    def circuit_masks(self):
        return self._circ

    def circuits(self):
        return self._sorted(self._circ)

    @cached_property
    def cocircuit_masks(self):
        if self.config is not None:
            return frozenset(_cocircuits_hyperplanes(self.config))
        return frozenset(_support_minimal(self.covector_masks))

    def cocircuits_via_dual(self):
        """Cocircuits as circuits of the dual configuration (realizable only)."""
        return frozenset(_circuit_data(dual_config(self.config)).keys())

    def cocircuits(self):
        return self._sorted(self.cocircuit_masks)

    @cached_property
    def vector_masks(self):
        return frozenset(span_masks(self._circ))

    @cached_property
    def covector_masks(self):
        if self.config is not None:
            return frozenset(span_masks(self.cocircuit_masks))
        return frozenset(orthogonal_backtrack(self._circ, self.n))

    def vectors(self):
        return self._sorted(self.vector_masks)

    def covectors(self):
        return self._sorted(self.covector_masks)

    def circuit_coefficients(self, c):
        """Dependence coefficients (label -> Fraction) of a realizable circuit."""
        pm = self.to_mask(c) if isinstance(c, SignedSet) else c
        return {self.ground[j]: x for j, x in self.coefficients[pm].items()}

    @cached_property
    def rank(self):
        if self.config is not None:
            return self.config.rank
        basis = 0
        sups = [p | m for p, m in self._circ]
        for i in range(self.n):
            cand = basis | 1 << i
            if not any(s & ~cand == 0 for s in sups):
                basis = cand
        return bin(basis).count("1")

    # acyclicity ------------------------------------------------------------
    def is_acyclic(self, check=False):
        if not check and "_circ" not in self.__dict__:
            return self.acyclic_by_cocircuits()
        acyclic = not any(m == 0 for (p, m) in self._circ)
        if check:
            full = (1 << self.n) - 1
            cond3 = (full, 0) in self.covector_masks
            pos = [p for (p, m) in self.cocircuit_masks if m == 0]
            cond4 = all(any(p >> i & 1 for p in pos) for i in range(self.n))
            cond2 = not any(m == 0 and p for (p, m) in self.vector_masks)
            if len({acyclic, cond2, cond3, cond4}) != 1:
                raise AssertionError("acyclicity conditions disagree")
        return acyclic

    def acyclic_by_cocircuits(self):
        """Every element lies in the positive part of a non-negative cocircuit."""
        covered = 0
        for p, m in self.cocircuit_masks:
            if m == 0:
                covered |= p
        return covered == (1 << self.n) - 1

    def loops(self):
        return [self.ground[i] for i in range(self.n) if any(p | m == 1 << i for p, m in self._circ)]

    def require_acyclic(self):
        if not self.is_acyclic():
            raise NotAcyclic("the oriented matroid has a positive circuit")

    # faces ---------------------------------------------------------------
    def is_face_mask(self, f):
        for p, m in self._circ:
            if m & ~f == 0 and p & ~f:
                return False
        return True

    def face_hull_mask(self, x):
        """Intersection of all faces containing ``x``."""
        out = (1 << self.n) - 1
        for f in self.face_masks:
            if x & ~f == 0:
                out &= f
        return out

    def smallest_face_mask(self, x):
        f = x
        changed = True
        while changed:
            changed = False
            for p, m in self._circ:
                if m & ~f == 0 and p & ~f:
                    f |= p
                    changed = True
        return f

    @cached_property
    def face_masks(self):
        """Faces as intersections of facets (complements of positive cocircuits)."""
        self.require_acyclic()
        full = (1 << self.n) - 1
        facets = {full & ~p for (p, m) in self.cocircuit_masks if m == 0}
        faces = {full}
        todo = [full]
        while todo:
            f = todo.pop()
            for g in facets:
                h = f & g
                if h not in faces:
                    faces.add(h)
                    todo.append(h)
        return frozenset(faces)

    def faces_by_subsets(self):
        """Slow oracle: every subset passing the circuit test."""
        self.require_acyclic()
        return frozenset(f for f in range(1 << self.n) if self.is_face_mask(f))

    def faces(self):
        return sorted((self.labels_of(f) for f in self.face_masks), key=label_key)

    def is_face(self, labels):
        self.require_acyclic()
        return self.is_face_mask(self.subset_mask(labels))

    def face_lattice(self):
        return lattice_from_sets(self.faces())

    def flat_masks(self):
        full = (1 << self.n) - 1
        return frozenset(full & ~(p | m) for (p, m) in self.covector_masks)

    def restriction_masks(self, r):
        return frozenset((p, m) for (p, m) in self._circ if (p | m) & ~r == 0)


# ----------------------------------------------------------------------
# axioms

def check_circuit_axioms(circuits):
    """Raise :class:`CircuitAxiomViolation` unless the circuit axioms hold."""
    circuits = set(circuits)
    for p, m in circuits:
        if not p | m:
            raise CircuitAxiomViolation("empty circuit")
        if (m, p) not in circuits:
            raise CircuitAxiomViolation("not closed under negation")
    for (p, m), (q, r) in combinations(circuits, 2):
        if (p | m) & ~(q | r) == 0 and (p, m) != (r, q):
            raise CircuitAxiomViolation("comparable circuit supports")
        if (q | r) & ~(p | m) == 0 and (p, m) != (r, q):
            raise CircuitAxiomViolation("comparable circuit supports")
    for (p, m) in circuits:
        for (q, r) in circuits:
            if (p, m) == (r, q):
                continue
            for e in bits(p & r):
                ep, em = (p | q) & ~(1 << e), (m | r) & ~(1 << e)
                if not any(a & ~ep == 0 and b & ~em == 0 for a, b in circuits):
                    raise CircuitAxiomViolation("elimination fails")


# ----------------------------------------------------------------------
# label-level operations

def circuits_of(A):
    return OrientedMatroid.from_config(A).circuits()


def cocircuits_of(A):
    return OrientedMatroid.from_config(A).cocircuits()


def span_signed(generators, mode="vectors", ground=None, verify=True):
    """Composition closure of signed sets, checked against orthogonality.

    ``mode`` only selects the verification: vectors must be orthogonal to
    the orthogonal complement of the circuits and vice versa.
    """
    generators = list(generators)
    if ground is None:
        labs = set()
        for g in generators:
            labs |= g.support
        ground = sorted(labs, key=label_key)
    om = OrientedMatroid(ground, [])
    masks = {om.to_mask(g) for g in generators}
    out = span_masks(masks)
    if verify and len(ground) <= 8:
        other = orthogonal_filter(masks, len(ground))
        expected = orthogonal_filter(_support_minimal(other), len(ground))
        if out != expected:
            raise AssertionError("composition closure differs from the orthogonality filter")
    return sorted((om.to_signed(x) for x in out), key=SignedSet.sort_key)


def is_acyclic(M):
    return M.is_acyclic()


def face_lattice(M):
    return M.face_lattice()


def smallest_face_containing(M, X):
    M.require_acyclic()
    return M.labels_of(M.smallest_face_mask(M.subset_mask(X)))


def flat_lattice(M):
    flats = M.flat_masks()
    return lattice_from_sets([M.labels_of(f) for f in flats])


# digraphs ----------------------------------------------------------------

class Digraph:
    """Directed multigraph; ``arcs`` is a list of ``(label, tail, head)``."""

    def __init__(self, vertices, arcs):
        self.vertices = tuple(vertices)
        self.arcs = tuple((a, t, h) for a, t, h in arcs)
        labels = [a for a, _, _ in self.arcs]
        if len(set(labels)) != len(labels):
            raise ValueError("arc labels must be distinct")
        vs = set(self.vertices)
        for a, t, h in self.arcs:
            if t not in vs or h not in vs:
                raise ValueError("arc %r uses an unknown vertex" % (a,))

    @property
    def arc_labels(self):
        return [a for a, _, _ in self.arcs]

    def incidence_config(self):
        vidx = {v: i for i, v in enumerate(self.vertices)}
        cols = []
        for a, t, h in self.arcs:
            col = [Fraction(0)] * len(self.vertices)
            col[vidx[t]] += 1
            col[vidx[h]] -= 1
            cols.append(col)
        return VectorConfig(self.arc_labels, cols)

    def restrict(self, R):
        R = set(R)
        return Digraph(self.vertices, [x for x in self.arcs if x[0] in R])

    def contract(self, R):
        """Contract the arcs of ``R`` (vertices merged along them)."""
        R = set(R)
        parent = {v: v for v in self.vertices}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for a, t, h in self.arcs:
            if a in R:
                parent[find(t)] = find(h)
        reps = sorted({find(v) for v in self.vertices}, key=label_key)
        return Digraph(reps, [(a, find(t), find(h)) for a, t, h in self.arcs if a not in R])

    def to_json(self):
        return {"vertices": [str(v) for v in self.vertices],
                "arcs": [{"label": str(a), "tail": str(t), "head": str(h)} for a, t, h in self.arcs]}

    @classmethod
    def from_json(cls, data):
        return cls(data["vertices"], [(x["label"], x["tail"], x["head"]) for x in data["arcs"]])


def simple_cycles(D):
    """Simple cycles of the underlying undirected multigraph, as signed arc sets."""
    arcs = list(D.arcs)
    out = set()
    for k, (a, t, h) in enumerate(arcs):
        if t == h:
            out.add((frozenset([a]), frozenset()))
            continue
        # paths from h back to t using arcs of larger index
        stack = [(h, frozenset([t, h]), [(a, 1)])]
        while stack:
            v, seen, path = stack.pop()
            for j in range(k + 1, len(arcs)):
                b, u, w = arcs[j]
                if u == w or any(b == x for x, _ in path):
                    continue
                if u == v:
                    nxt, sign = w, 1
                elif w == v:
                    nxt, sign = u, -1
                else:
                    continue
                if nxt == t:
                    cyc = path + [(b, sign)]
                    out.add((frozenset(x for x, s in cyc if s > 0), frozenset(x for x, s in cyc if s < 0)))
                elif nxt not in seen:
                    stack.append((nxt, seen | {nxt}, path + [(b, sign)]))
    both = set()
    for p, m in out:
        both.add((p, m))
        both.add((m, p))
    return both


def om_from_digraph(D):
    """Graphical oriented matroid; circuits read off the simple cycles."""
    om = OrientedMatroid(D.arc_labels, [])
    masks = {(om.subset_mask(p), om.subset_mask(m)) for p, m in simple_cycles(D)}
    A = D.incidence_config()
    realized = OrientedMatroid.from_config(A)
    if set(realized.circuit_masks) != masks:
        raise AssertionError("cycle circuits disagree with the incidence configuration")
    return OrientedMatroid(D.arc_labels, masks, config=A, coefficients=realized.coefficients)


# restriction / contraction --------------------------------------------------

def _contract_config(A, R):
    R = set(R)
    rest = [s for s in A.ground if s not in R]
    ker = la.kernel([list(A.column(r)) for r in A.ground if r in R], A.dim) if R else None
    if ker is None:
        return A.sub(rest)
    cols = [[la.dot(w, A.column(s)) for w in ker] for s in rest]
    return VectorConfig(rest, cols)


def restrict_contract_om(M, R, mode):
    R = set(R)
    if not R <= set(M.ground):
        raise GroundMismatch("R is not a subset of the ground set")
    r = M.subset_mask(R)
    if mode == "restriction":
        labels = [s for s in M.ground if s in R]
        if M.config is not None:
            return OrientedMatroid.from_config(M.config.sub(labels))
        sub = OrientedMatroid(labels, [])
        circ = {(sub.subset_mask(M.labels_of(p)), sub.subset_mask(M.labels_of(m)))
                for p, m in M.restriction_masks(r)}
        return OrientedMatroid(labels, circ)
    if mode == "contraction":
        labels = [s for s in M.ground if s not in R]
        if M.config is not None:
            return OrientedMatroid.from_config(_contract_config(M.config, R))
        sub = OrientedMatroid(labels, [])
        reduced = {(p & ~r, m & ~r) for p, m in M.circuit_masks}
        circ = {(sub.subset_mask(M.labels_of(p)), sub.subset_mask(M.labels_of(m)))
                for p, m in _support_minimal(reduced)}
        return OrientedMatroid(labels, circ)
    raise ValueError("mode must be 'restriction' or 'contraction'")


def contraction_from_circuits(M, R):
    """Contraction computed purely from circuits (ignores any realization)."""
    bare = OrientedMatroid(M.ground, M.circuit_masks)
    return restrict_contract_om(bare, R, "contraction")


def connected_components(M):
    parent = list(range(M.n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p, m in M.circuit_masks:
        idx = list(bits(p | m))
        for j in idx[1:]:
            parent[find(j)] = find(idx[0])
    groups = {}
    for i in range(M.n):
        groups.setdefault(find(i), []).append(M.ground[i])
    return sorted((frozenset(g) for g in groups.values()), key=label_key)


# sums -------------------------------------------------------------------

def direct_sum_config(A, B):
    cols = [list(c) + [Fraction(0)] * B.dim for c in A.columns]
    cols += [[Fraction(0)] * A.dim + list(c) for c in B.columns]
    return VectorConfig(A.ground + B.ground, cols)


def direct_sum_om(M, N):
    if set(M.ground) & set(N.ground):
        raise GroundOverlap("ground sets must be disjoint")
    if M.config is not None and N.config is not None:
        return OrientedMatroid.from_config(direct_sum_config(M.config, N.config))
    ground = M.ground + N.ground
    out = OrientedMatroid(ground, [])
    circ = set()
    for X in (M, N):
        for p, m in X.circuit_masks:
            circ.add((out.subset_mask(X.labels_of(p)), out.subset_mask(X.labels_of(m))))
    return OrientedMatroid(ground, circ)


def _expected_sd_faces(M, F):
    """Faces of the stellar subdivision predicted by the blow-up, minus the top."""
    full = (1 << M.n) - 1
    faces = [f for f in M.face_masks if f != full]
    keep = [M.labels_of(y) for y in faces if F & ~y]
    pairs = []
    for y in faces:
        if F & ~y == 0:
            continue
        j = M.face_hull_mask(F | y)
        if j != full:
            pairs.append(M.labels_of(y))
    return keep, pairs


def stellar_subdivision(A, F, label=None, budget=30):
    """Append ``a_F = sum_F a_s - eps * sum_S a_s`` for a certified rational ``eps``.

    Returns ``(config, eps)``.  The face semilattice of the result is compared,
    label by label, with the blow-up of the face semilattice at ``F``.
    """
    M = OrientedMatroid.from_config(A)
    M.require_acyclic()
    F = frozenset(F)
    f = M.subset_mask(F)
    full = (1 << M.n) - 1
    if not F or f == full or f not in M.face_masks:
        raise NotAProperFace("%s is not a proper face" % (set_label(F),))
    if label is None:
        label = "s" + set_label(F)
    if label in M.gindex:
        raise GroundOverlap("label of the new element already used")
    keep, pairs = _expected_sd_faces(M, f)
    expected = set(keep) | {y | {label} for y in pairs}
    in_f = [sum((A.column(s)[i] for s in F), Fraction(0)) for i in range(A.dim)]
    total = [sum((c[i] for c in A.columns), Fraction(0)) for i in range(A.dim)]
    eps = Fraction(1)
    for _ in range(budget):
        eps /= 2
        new = [a - eps * b for a, b in zip(in_f, total)]
        B = VectorConfig(A.ground + (label,), list(A.columns) + [new])
        N = OrientedMatroid.from_config(B)
        if not N.is_acyclic():
            continue
        top = frozenset(B.ground)
        got = {x for x in N.faces() if x != top}
        if got == expected:
            return B, eps
    raise CertificationFailed("no epsilon in the search budget realizes the blow-up")


def free_sum_om(M, N, label="e"):
    """Free sum via stellar subdivision of the direct sum at ``ground(M)``, then contraction.

    Needs realizations of both inputs.  The face lattice of the output is
    checked against the free product of the two face lattices.
    """
    if set(M.ground) & set(N.ground):
        raise GroundOverlap("ground sets must be disjoint")
    M.require_acyclic()
    N.require_acyclic()
    if M.config is None or N.config is None:
        raise NotImplementedError("free sums are built from realizations")
    while label in M.gindex or label in N.gindex:
        label += "'"
    D = direct_sum_config(M.config, N.config)
    sd, _ = stellar_subdivision(D, M.ground, label=label)
    out = OrientedMatroid.from_config(_contract_config(sd, [label]))
    top = frozenset(out.ground)
    expected = {a | b for a in M.faces() if a != frozenset(M.ground)
                for b in N.faces() if b != frozenset(N.ground)} | {top}
    if set(out.faces()) != expected:
        raise CertificationFailed("face lattice of the free sum is not the free product")
    return out


# flats and initial matroids ----------------------------------------------------

def initial_om(M, w):
    """Circuits restricted to their largest-weight elements, then support-minimal ones."""
    weights = [Fraction(w[s]) for s in M.ground]
    reduced = set()
    for p, m in M.circuit_masks:
        sup = list(bits(p | m))
        top = max(weights[i] for i in sup)
        keep = _mask(i for i in sup if weights[i] == top)
        reduced.add((p & keep, m & keep))
    return OrientedMatroid(M.ground, _support_minimal(reduced))


def om_from_json(data):
    if "arcs" in data:
        return om_from_digraph(Digraph.from_json(data))
    if "columns" in data:
        return OrientedMatroid.from_config(VectorConfig.from_json(data))
    if "circuits" in data:
        circ = [SignedSet(c[0], c[1]) for c in data["circuits"]]
        return OrientedMatroid.from_circuits(data["ground"], circ)
    raise ValueError("unrecognized oriented matroid description")


A_CIRC = VectorConfig(
    ["1", "2", "3", "4", "5", "6"],
    [[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 1, 1], [1, 0, 0, 1], [0, 1, 0, 1], [1, 1, 0, 1]],
)

D_CIRC = Digraph(
    ["v1", "v2", "v3", "v4", "v5"],
    [("1", "v3", "v1"), ("2", "v3", "v1"), ("3", "v5", "v2"),
     ("4", "v3", "v2"), ("5", "v4", "v1"), ("6", "v4", "v2")],
)
