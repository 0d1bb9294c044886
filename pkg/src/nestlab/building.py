"""Building sets, nested sets and nested complexes over finite lattices.

A :class:`BuildingSet` pairs a lattice (a :class:`FiniteLattice` or a
:class:`BooleanLattice`) with a set of element keys.  Every algorithm here
only uses the shared lattice protocol (``leq``, ``join``, ``meet``,
``product_decomposes`` ...), so the boolean and general paths run the same
code; the boolean path additionally has the set-family closure rule, which
serves as a cross-check.
"""
from dataclasses import dataclass
from itertools import combinations
import random as _random

from .errors import (
    BadOrder, BlockRequired, ElementMissing, NotABuildingSet, NotASubsetOfBlocks,
    NotConnected, NotNested, CertificationFailed,
)
from .lattice import (
    TOP, BooleanLattice, FiniteLattice, FinitePoset, bits, cartesian_product,
    free_product, label_key, lattice_from_json, lattice_to_json, popcount, set_label,
)


# ----------------------------------------------------------------------
# simplicial complexes

class SimplicialComplex:
    """A simplicial complex given by its facets (frozensets of vertex labels)."""

    def __init__(self, facets, vertices=None):
        fs = {frozenset(f) for f in facets}
        ordered = sorted(fs, key=len, reverse=True)
        kept = []
        for f in ordered:
            if not any(f < g for g in kept):
                kept.append(f)
        self.facets = frozenset(kept)
        verts = set()
        for f in self.facets:
            verts |= f
        if vertices is not None:
            verts |= set(vertices)
        self.vertices = tuple(sorted(verts, key=label_key))
        self._faces = None

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.facets == other.facets

    def __hash__(self):
        return hash(self.facets)

    def __repr__(self):
        return "SimplicialComplex(f=%s)" % (self.f_vector(),)

    def is_empty(self):
        """True for the complex with no faces at all (not even the empty face)."""
        return not self.facets

    def faces(self):
        if self._faces is None:
            out = set()
            for f in self.facets:
                items = sorted(f, key=label_key)
                for k in range(len(items) + 1):
                    for c in combinations(items, k):
                        out.add(frozenset(c))
            self._faces = frozenset(out)
        return self._faces

    def dimension(self):
        if not self.facets:
            return None
        return max(len(f) for f in self.facets) - 1

    def f_vector(self):
        """Face counts by dimension, starting with the empty face (dimension -1)."""
        if not self.facets:
            return ()
        d = self.dimension()
        counts = [0] * (d + 2)
        for f in self.faces():
            counts[len(f)] += 1
        return tuple(counts)

    def is_pure(self):
        return len({len(f) for f in self.facets}) <= 1

    def euler_characteristic(self):
        """Unreduced Euler characteristic (empty face not counted)."""
        fv = self.f_vector()
        return sum((-1) ** i * c for i, c in enumerate(fv[1:]))

    def ridges(self):
        count = {}
        for f in self.facets:
            for v in f:
                r = f - {v}
                count[r] = count.get(r, 0) + 1
        return count

    def is_pseudomanifold(self):
        """Pure, every ridge in exactly two facets, and strongly connected."""
        if not self.facets or not self.is_pure():
            return False
        d = self.dimension()
        if d < 0:
            return True
        count = self.ridges()
        if any(c != 2 for c in count.values()):
            return False
        if d == 0:
            return len(self.facets) == 2
        facets = list(self.facets)
        by_ridge = {}
        for i, f in enumerate(facets):
            for v in f:
                by_ridge.setdefault(f - {v}, []).append(i)
        seen = {0}
        todo = [0]
        while todo:
            i = todo.pop()
            for v in facets[i]:
                for j in by_ridge[facets[i] - {v}]:
                    if j not in seen:
                        seen.add(j)
                        todo.append(j)
        return len(seen) == len(facets)

    def has_sphere_euler_characteristic(self):
        d = self.dimension()
        if d is None:
            return False
        return self.euler_characteristic() == 1 + (-1) ** d

    def link(self, face):
        face = frozenset(face)
        return SimplicialComplex([f - face for f in self.facets if face <= f])

    def join(self, other, tags=None):
        """Join of two complexes; vertices are tagged ``(tag, v)`` when ``tags`` is given."""
        a_f, b_f = self.facets, other.facets
        if tags is not None:
            ta, tb = tags
            a_f = [frozenset((ta, v) for v in f) for f in a_f]
            b_f = [frozenset((tb, v) for v in f) for f in b_f]
        return SimplicialComplex([f | g for f in a_f for g in b_f])

    def relabel(self, mapping):
        return SimplicialComplex([frozenset(mapping[v] for v in f) for f in self.facets])

    def face_poset(self):
        """All faces (empty face included) ordered by inclusion."""
        return FinitePoset.from_sets(self.faces())

    def is_isomorphic(self, other):
        if self.f_vector() != other.f_vector():
            return False
        return self.face_poset().is_isomorphic(other.face_poset())

    def to_json(self, fmt=None):
        fmt = fmt or _fmt
        vs = sorted(self.vertices, key=label_key)
        return {
            "vertices": [fmt(v) for v in vs],
            "facets": sorted(sorted((fmt(v) for v in f)) for f in self.facets),
        }


def _fmt(v):
    if isinstance(v, frozenset):
        return set_label(v)
    if isinstance(v, tuple):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    return str(v)


def f_vector(C):
    return C.f_vector()


def join_all(complexes):
    out = SimplicialComplex([frozenset()])
    for k, c in enumerate(complexes):
        out = SimplicialComplex([f | frozenset((k, v) for v in g) for f in out.facets for g in c.facets])
    return out


# ----------------------------------------------------------------------
# building sets

def _linear_extension(L):
    if isinstance(L, BooleanLattice):
        return sorted(L.elements(), key=lambda m: (popcount(m), m))
    return L.linear_extension()


def _max_below(L, blocks, y):
    return L.maxima_of([b for b in blocks if L.leq(b, y)])


def _is_building_generic(L, blocks):
    for y in L.elements():
        if y == L.bottom:
            continue
        if not L.product_decomposes(y, _max_below(L, blocks, y)):
            return False
    return True


def _boolean_rule(L, blocks):
    """Singletons present and closed under union of intersecting members."""
    blocks = set(blocks)
    if any(1 << i not in blocks for i in range(L.rank)):
        return False
    for a in blocks:
        for b in blocks:
            if a & b and (a | b) not in blocks:
                return False
    return True


def is_building_set(L, blocks, method="auto"):
    """Building-set test on element keys.

    ``method`` is ``"lattice"`` (product decomposition of every lower
    interval), ``"boolean"`` (set-family rule) or ``"auto"``.
    """
    blocks = set(blocks)
    if L.bottom in blocks:
        return False
    if method == "boolean" or (method == "auto" and isinstance(L, BooleanLattice)):
        return _boolean_rule(L, blocks)
    return _is_building_generic(L, blocks)


def _boolean_closure(L, blocks):
    out = set(blocks) | {1 << i for i in range(L.rank)}
    out.discard(0)
    todo = list(out)
    while todo:
        a = todo.pop()
        for b in list(out):
            if a & b:
                u = a | b
                if u not in out:
                    out.add(u)
                    todo.append(u)
    return out


def closure_keys(L, blocks, rng=None, method="auto"):
    """Smallest building set containing ``blocks`` (keys).

    With ``rng`` the minimal violator added at each step is chosen at random
    among all current minimal violators, which is the slow but literal form
    of the construction.
    """
    blocks = set(blocks)
    blocks.discard(L.bottom)
    if rng is None and (method == "boolean" or (method == "auto" and isinstance(L, BooleanLattice))):
        return _boolean_closure(L, blocks)
    if rng is None:
        for y in _linear_extension(L):
            if y == L.bottom or y in blocks:
                continue
            if not L.product_decomposes(y, _max_below(L, blocks, y)):
                blocks.add(y)
        return blocks
    while True:
        bad = [y for y in L.elements() if y != L.bottom and y not in blocks
               and not L.product_decomposes(y, _max_below(L, blocks, y))]
        if not bad:
            return blocks
        minimal = [y for y in bad if not any(z != y and L.leq(z, y) for z in bad)]
        blocks.add(rng.choice(minimal))


class BuildingSet:
    """A building set: a lattice together with a set of element keys."""

    def __init__(self, lattice, blocks, check=True):
        self.lattice = lattice
        self.blocks = frozenset(blocks)
        if check and not is_building_set(lattice, self.blocks):
            raise NotABuildingSet("the given family is not a building set")
        self._order = sorted(self.blocks, key=lambda b: label_key(lattice.label(b)))

    # constructors
    @classmethod
    def from_labels(cls, lattice, labels, check=True):
        return cls(lattice, [lattice.key(frozenset(x) if isinstance(lattice, BooleanLattice) else x)
                             for x in labels], check=check)

    @classmethod
    def boolean(cls, ground, blocks, check=True):
        L = BooleanLattice(ground)
        return cls(L, [L.key(b) for b in blocks], check=check)

    def __repr__(self):
        return "BuildingSet(%s)" % ", ".join(self.block_strings())

    def __eq__(self, other):
        return isinstance(other, BuildingSet) and self.lattice == other.lattice and self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def __contains__(self, label):
        try:
            return self.key_of(label) in self.blocks
        except KeyError:
            return False

    @property
    def is_boolean(self):
        return isinstance(self.lattice, BooleanLattice)

    def key_of(self, label):
        if self.is_boolean:
            return self.lattice.key(frozenset(label))
        return self.lattice.key(label)

    def label(self, key):
        return self.lattice.label(key)

    def labels(self):
        return [self.lattice.label(b) for b in self._order]

    def block_strings(self):
        return [_fmt(lab) for lab in self.labels()]

    def ordered_blocks(self):
        return list(self._order)

    @property
    def kappa(self):
        return frozenset(self.lattice.maxima_of(self.blocks))

    def connected_components(self):
        return [self.label(k) for k in sorted(self.kappa, key=lambda b: label_key(self.label(b)))]

    def is_connected(self):
        return self.kappa == {self.lattice.top}

    def blocks_below(self, y):
        return [b for b in self._order if self.lattice.leq(b, y)]

    def max_below(self, y):
        return self.lattice.maxima_of(self.blocks_below(y))

    # nested sets ------------------------------------------------------
    def is_nested_keys(self, N):
        N = set(N)
        if not N <= self.blocks:
            raise NotASubsetOfBlocks("nested-set candidate contains non-blocks")
        if not self.kappa <= N:
            return False
        return all(self._factor_ok(x, N) for x in self.kappa)

    def _factor_ok(self, x, N):
        L = self.lattice
        below = [c for c in N if c != x and L.leq(c, x)]
        top = L.maxima_of(below)
        if len(top) >= 2:
            j = L.join_all(top)
            if set(self.max_below(j)) != set(top):
                return False
        return all(self._factor_ok(c, N) for c in top)

    def is_nested_direct(self, N):
        """Antichain form: no two or more incomparable members outside the maxima join to a block."""
        N = set(N)
        if not N <= self.blocks:
            raise NotASubsetOfBlocks("nested-set candidate contains non-blocks")
        if not self.kappa <= N:
            return False
        L = self.lattice
        rest = [b for b in N if b not in self.kappa]
        for k in range(2, len(rest) + 1):
            for combo in combinations(rest, k):
                if any(L.comparable(a, b) for a, b in combinations(combo, 2)):
                    continue
                if L.join_all(combo) in self.blocks:
                    return False
        return True

    def _compatible_addition(self, face, b):
        """Whether ``face + [b]`` (all outside kappa) stays nested."""
        L = self.lattice
        inc = [x for x in face if not (L.leq(x, b) or L.leq(b, x))]
        blocks = self.blocks

        def rec(start, acc, chosen):
            for i in range(start, len(inc)):
                x = inc[i]
                if any(L.leq(x, y) or L.leq(y, x) for y in chosen):
                    continue
                j = L.join(acc, x)
                if j in blocks:
                    return False
                chosen.append(x)
                ok = rec(i + 1, j, chosen)
                chosen.pop()
                if not ok:
                    return False
            return True

        return rec(0, b, [])

    def nested_faces(self, accept=None):
        """All nested sets minus kappa, as tuples of keys (DFS with pruning).

        ``accept(face_keys)`` is an optional extra hereditary filter.
        """
        kappa = self.kappa
        cand = [b for b in self._order if b not in kappa]
        out = []
        face = []

        def rec(start):
            out.append(tuple(face))
            for i in range(start, len(cand)):
                b = cand[i]
                if not self._compatible_addition(face, b):
                    continue
                face.append(b)
                if accept is None or accept(face):
                    rec(i + 1)
                face.pop()

        if accept is None or accept(face):
            rec(0)
        return out

    def nested_complex(self, accept=None):
        faces = self.nested_faces(accept)
        if not faces:
            return SimplicialComplex([])
        lab = self.lattice.label
        return SimplicialComplex([frozenset(lab(k) for k in f) for f in faces])

    def maximal_nested_sets(self):
        """Maximal nested sets (kappa included) as frozensets of keys."""
        faces = [frozenset(f) for f in self.nested_faces()]
        top = [f for f in faces if not any(f < g for g in faces if len(g) == len(f) + 1)]
        return [f | self.kappa for f in top]


# ----------------------------------------------------------------------
# label-level operations

def building_closure(L, X, rng=None):
    keys = [L.key(frozenset(x)) if isinstance(L, BooleanLattice) else L.key(x) for x in X]
    return BuildingSet(L, closure_keys(L, keys, rng=rng), check=False)


def is_nested(N, B):
    return B.is_nested_keys([B.key_of(x) for x in N])


def nested_complex(B):
    return B.nested_complex()


def _relabel_difference(sub, y_label):
    """Relabel a set-labelled interval ``[y, top]`` by removing ``y``'s label."""
    labs = sub.labels
    if all(isinstance(x, frozenset) for x in labs):
        new = [x - y_label for x in labs]
        if len(set(new)) == len(new):
            return FiniteLattice(new, sub.up)
    return sub


def _restrict(B, x):
    L = B.lattice
    if isinstance(L, BooleanLattice):
        ground = [g for i, g in enumerate(L.ground) if x >> i & 1]
        sub = BooleanLattice(ground)
        blocks = [sub.key(L.label(b)) for b in B.blocks if L.leq(b, x)]
        return BuildingSet(sub, blocks, check=False)
    sub = L.interval(L.bottom, x)
    blocks = [sub.key(L.label(b)) for b in B.blocks if L.leq(b, x)]
    return BuildingSet(sub, blocks, check=False)


def _contract(B, y, relabel=True):
    L = B.lattice
    if isinstance(L, BooleanLattice):
        ground = [g for i, g in enumerate(L.ground) if not y >> i & 1]
        sub = BooleanLattice(ground)
        blocks = {sub.key(L.label(b & ~y)) for b in B.blocks if not L.leq(b, y)}
        return BuildingSet(sub, blocks, check=False)
    sub = L.interval(y, L.top)
    blocks = {sub.key(L.label(L.join(b, y))) for b in B.blocks if not L.leq(b, y)}
    if relabel and L.is_atomic():
        new = _relabel_difference(sub, L.label(y))
        if new is not sub:
            blocks = {new.key(sub.label(k) - L.label(y)) for k in blocks}
            sub = new
        else:
            atoms_y = {L.label(a) for a in L.atoms_below(y)}
            labs = [frozenset(L.label(a) for a in L.atoms_below(L.key(lab))) - atoms_y for lab in sub.labels]
            if len(set(labs)) == len(labs):
                new = FiniteLattice(labs, sub.up)
                blocks = {new.key(labs[k]) for k in blocks}
                sub = new
    return BuildingSet(sub, blocks, check=False)


def restrict_contract(B, X, mode):
    """Restriction to ``X`` (blocks below it) or contraction of ``X``.

    For boolean building sets any subset may be used; over general lattices
    ``X`` must be a block.
    """
    x = B.key_of(X)
    if mode == "restriction":
        if not B.is_boolean and x not in B.blocks:
            raise BlockRequired("restriction over a general lattice needs a block")
        return _restrict(B, x)
    if mode == "contraction":
        if not B.is_boolean and x not in B.blocks:
            raise BlockRequired("contraction over a general lattice needs a block")
        return _contract(B, x)
    raise ValueError("mode must be 'restriction' or 'contraction'")


def link_data(B, N):
    """The pieces ``(B|X)/Y`` whose nested complexes join to the link of ``N``."""
    N = set(N)
    if not N <= B.blocks or not B.is_nested_keys(N | B.kappa):
        raise NotNested("not a nested set")
    N = N | B.kappa
    L = B.lattice
    pieces = []
    for x in sorted(N, key=lambda k: label_key(L.label(k))):
        smaller = [c for c in N if c != x and L.leq(c, x)]
        y = L.join_all(smaller) if smaller else L.bottom
        restricted = _restrict(B, x)
        y_key = restricted.lattice.key(L.label(y))
        pieces.append((L.label(x), _contract(restricted, y_key, relabel=False)))
    return pieces


def link(B, N):
    """Link of the nested set ``N`` (labels), as a join of smaller nested complexes."""
    keys = {B.key_of(x) for x in N}
    pieces = link_data(B, keys)
    out = SimplicialComplex([frozenset()])
    for tag, piece in pieces:
        c = piece.nested_complex()
        out = SimplicialComplex([f | frozenset((tag, v) for v in g) for f in out.facets for g in c.facets])
    return out


def direct_link(B, N):
    """Simplicial link of ``N`` minus kappa computed inside the nested complex."""
    keys = {B.key_of(x) for x in N} - B.kappa
    C = B.nested_complex()
    return C.link(frozenset(B.label(k) for k in keys))


# ----------------------------------------------------------------------
# blow-ups

@dataclass(frozen=True)
class Blown:
    """Element ``(center, base)`` created by a combinatorial blow-up."""
    center: object
    base: object

    def __repr__(self):
        return "(%s,%s)" % (_fmt(self.center), _fmt(self.base))


def is_meet_semilattice(S):
    if S.bottom_element() is None:
        return False
    return all(S.meet(i, j) is not None for i in range(S.n) for j in range(i + 1, S.n))


def blowup(S, X):
    """Combinatorial blow-up of the meet semilattice ``S`` at the label ``X``."""
    if X not in S.index:
        raise ElementMissing("%r is not an element" % (X,))
    x = S.index[X]
    kept = [y for y in range(S.n) if not S.leq(x, y)]
    pairs = [y for y in kept if S.join(x, y) is not None]
    labels = [S.labels[y] for y in kept] + [Blown(X, S.labels[y]) for y in pairs]
    nk = len(kept)
    up = []
    for a in kept:
        m = 0
        for k, b in enumerate(kept):
            if S.leq(a, b):
                m |= 1 << k
        for k, b in enumerate(pairs):
            if S.leq(a, b):
                m |= 1 << (nk + k)
        up.append(m)
    for a in pairs:
        m = 0
        for k, b in enumerate(pairs):
            if S.leq(a, b):
                m |= 1 << (nk + k)
        up.append(m)
    return FinitePoset(labels, up)


def check_blowup_order(S, blocks):
    idx = [S.index[b] for b in blocks]
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if S.lt(idx[i], idx[j]):
                raise BadOrder("%r is blown up before the larger %r" % (blocks[i], blocks[j]))


def iterated_blowup(S, blocks, certify=True, strict=True):
    """Blow up ``blocks`` (labels) one after another, larger elements first.

    Returns ``(poset, certificate)``.  The certificate is an isomorphism onto
    the face poset of the seminested complex, or ``None`` when ``certify`` is
    false.  With ``strict`` a badly ordered sequence raises :class:`BadOrder`
    and a failed certification raises; without it any order is accepted and
    a failed certification simply yields ``None``.
    """
    for b in blocks:
        if b not in S.index:
            raise ElementMissing("%r is not an element" % (b,))
    if strict:
        check_blowup_order(S, list(blocks))
    P = S
    for b in blocks:
        P = blowup(P, b)
    if not certify:
        return P, None
    C = seminested_complex(S, blocks)
    iso = P.isomorphism(C.face_poset())
    if iso is None and strict:
        raise CertificationFailed("blow-up is not isomorphic to the face poset of the seminested complex")
    return P, iso


SEMI_TOP = "⊤+"


def add_top(S, top_label=SEMI_TOP):
    up = [m | (1 << S.n) for m in S.up] + [1 << S.n]
    return FiniteLattice(list(S.labels) + [top_label], up)


def seminested_complex(S, blocks):
    """Nested complex of ``blocks + {top}`` over ``S`` with a new top adjoined."""
    Lp = add_top(S)
    keys = {Lp.index[b] for b in blocks} | {Lp.top}
    Bp = BuildingSet(Lp, keys, check=True)
    return Bp.nested_complex()


def admissible_orders(S, blocks, rng, count=2):
    """Random orderings of ``blocks`` that list larger elements first."""
    sub = S.induced([S.index[b] for b in blocks])
    out = []
    for _ in range(count):
        ext = sub.linear_extension(rng)
        out.append([sub.labels[i] for i in reversed(ext)])
    return out


# ----------------------------------------------------------------------
# sums

def building_sum(B, C, mode):
    """Direct sum (over the product lattice) or free sum (over the free product)."""
    if mode == "direct":
        if B.is_boolean and C.is_boolean and not set(B.lattice.ground) & set(C.lattice.ground):
            L = BooleanLattice(B.lattice.ground + C.lattice.ground)
            blocks = [L.key(B.label(b)) for b in B.blocks] + [L.key(C.label(c)) for c in C.blocks]
            return BuildingSet(L, blocks, check=False)
        LB = B.lattice.to_finite() if B.is_boolean else B.lattice
        LC = C.lattice.to_finite() if C.is_boolean else C.lattice
        P = cartesian_product(LB, LC)
        zb, zc = LB.labels[LB.bottom], LC.labels[LC.bottom]
        blocks = [P.key((B.label(b), zc)) for b in B.blocks] + [P.key((zb, C.label(c))) for c in C.blocks]
        return BuildingSet(P, blocks, check=False)
    if mode == "free":
        if not B.is_connected() or not C.is_connected():
            raise NotConnected("free sums need connected building sets")
        LB = B.lattice.to_finite() if B.is_boolean else B.lattice
        LC = C.lattice.to_finite() if C.is_boolean else C.lattice
        P = free_product(LB, LC)
        zb, zc = LB.labels[LB.bottom], LC.labels[LC.bottom]
        blocks = [P.key((B.label(b), zc)) for b in B.blocks if b != B.lattice.top]
        blocks += [P.key((zb, C.label(c))) for c in C.blocks if c != C.lattice.top]
        blocks.append(P.key(TOP))
        return BuildingSet(P, blocks, check=False)
    raise ValueError("mode must be 'direct' or 'free'")


def random_building_set(L, rng, density=0.3):
    """Building closure of a random family of elements."""
    if isinstance(rng, int):
        rng = _random.Random(rng)
    seeds = [x for x in L.elements() if x != L.bottom and rng.random() < density]
    return BuildingSet(L, closure_keys(L, seeds), check=False)


def complete_building_set(L):
    return BuildingSet(L, [x for x in L.elements() if x != L.bottom], check=False)


def graphical_building_set(vertices, edges):
    """Tubes of a graph: vertex subsets inducing connected subgraphs."""
    vertices = list(vertices)
    L = BooleanLattice(vertices)
    idx = L.gindex
    adj = [0] * len(vertices)
    for a, b in edges:
        if a == b:
            continue
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    tubes = []
    for m in range(1, 1 << len(vertices)):
        start = m & -m
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            for i in bits(frontier):
                nxt |= adj[i]
            nxt &= m & ~seen
            seen |= nxt
            frontier = nxt
        if seen == m:
            tubes.append(m)
    return BuildingSet(L, tubes, check=False)


def building_from_json(data, ground=None):
    """Building set from ``{"lattice": <lattice json or "boolean:n">, "blocks": [...]}``.

    Over a boolean lattice each block is a list of ground labels; the ground
    of ``"boolean:n"`` is ``"1", ..., "n"`` unless ``ground`` is given.  Over
    other lattices a block is an element label (or a one-element list).
    """
    lat = data.get("lattice", "boolean")
    if isinstance(lat, str) and lat.startswith("boolean"):
        if ground is None:
            n = int(lat.split(":")[1])
            ground = [str(i) for i in range(1, n + 1)]
        return BuildingSet.boolean(ground, [frozenset(str(x) for x in b) for b in data["blocks"]])
    L = lattice_from_json(lat)
    labels = []
    for b in data["blocks"]:
        if isinstance(b, list):
            if len(b) != 1:
                raise ValueError("blocks of a non-boolean lattice are single element labels")
            b = b[0]
        labels.append(b)
    return BuildingSet.from_labels(L, labels)


def building_to_json(B):
    if B.is_boolean:
        blocks = [sorted(map(str, B.label(b)), key=label_key) for b in B.ordered_blocks()]
    else:
        blocks = [B.label(b) for b in B.ordered_blocks()]
    return {"lattice": lattice_to_json(B.lattice), "blocks": blocks}
