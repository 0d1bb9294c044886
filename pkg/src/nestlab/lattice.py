"""Finite posets and lattices.

Elements are addressed by integer index; the order is stored as one up-set
bitmask per element (``up[i]`` has bit ``j`` set iff ``i <= j``).  Labels are
arbitrary hashable objects and only matter for input and output.

Boolean lattices get their own light class, :class:`BooleanLattice`, whose
elements are subset bitmasks over a ground sequence; it never materializes
its ``2**n`` elements unless asked to.
"""
from functools import cached_property
from itertools import product
from math import prod
import random as _random

import networkx as nx
from networkx.algorithms.isomorphism import DiGraphMatcher

from .errors import (
    CycleInCovers, NoBottomOrTop, NotALattice, NotComparable, PartNotBelowY,
)


def bits(mask):
    """Indices of the set bits of ``mask``, increasing."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask):
    return bin(mask).count("1")


def label_key(x):
    """Sort key making mixed labels (sets, tuples, strings, ints) comparable."""
    if isinstance(x, (frozenset, set)):
        return (1, len(x), sorted((label_key(y) for y in x)))
    if isinstance(x, tuple):
        return (2, len(x), [label_key(y) for y in x])
    if isinstance(x, bool):
        return (0, 0, str(x))
    if isinstance(x, int):
        return (0, 0, "%020d" % x if x >= 0 else "-%020d" % -x)
    return (0, 1, str(x))


def set_label(s):
    """Compact string for a set label: ``{1,2,5}`` -> ``'125'`` when elements are single characters."""
    items = sorted(s, key=label_key)
    strs = [str(x) for x in items]
    if all(len(t) == 1 for t in strs):
        return "".join(strs) or "{}"
    return "{" + ",".join(strs) + "}"


class FinitePoset:
    """A finite partial order on ``range(n)`` with labels."""

    def __init__(self, labels, up):
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != self.n:
            raise ValueError("labels must be distinct")
        self.up = tuple(up)
        down = [0] * self.n
        for i in range(self.n):
            for j in bits(self.up[i]):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._by_up = {m: i for i, m in enumerate(self.up)}
        self._by_down = {m: i for i, m in enumerate(self.down)}

    # construction -----------------------------------------------------
    @classmethod
    def from_covers(cls, labels, covers):
        labels = list(labels)
        idx = {lab: i for i, lab in enumerate(labels)}
        n = len(labels)
        succ = [set() for _ in range(n)]
        for a, b in covers:
            if a not in idx or b not in idx:
                raise KeyError("cover (%r, %r) references an unknown label" % (a, b))
            if a == b:
                raise CycleInCovers("self-cover on %r" % (a,))
            succ[idx[a]].add(idx[b])
        indeg = [0] * n
        for i in range(n):
            for j in succ[i]:
                indeg[j] += 1
        order = [i for i in range(n) if indeg[i] == 0]
        k = 0
        while k < len(order):
            i = order[k]
            k += 1
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    order.append(j)
        if len(order) != n:
            raise CycleInCovers("the cover relation contains a directed cycle")
        up = [0] * n
        for i in reversed(order):
            m = 1 << i
            for j in succ[i]:
                m |= up[j]
            up[i] = m
        return cls(labels, up)

    @classmethod
    def from_order(cls, labels, leq):
        labels = list(labels)
        up = []
        for a in labels:
            m = 0
            for j, b in enumerate(labels):
                if a == b or leq(a, b):
                    m |= 1 << j
            up.append(m)
        poset = cls(labels, up)
        for i in range(poset.n):
            for j in bits(poset.up[i]):
                if j != i and poset.up[j] >> i & 1:
                    raise CycleInCovers("relation is not antisymmetric")
                if poset.up[j] & ~poset.up[i]:
                    raise ValueError("relation is not transitive")
        return poset

    @classmethod
    def from_sets(cls, sets):
        """Family of sets ordered by inclusion; labels are frozensets."""
        labs = sorted({frozenset(s) for s in sets}, key=label_key)
        return cls.from_order(labs, lambda a, b: a <= b)

    # queries ----------------------------------------------------------
    def __len__(self):
        return self.n

    def __repr__(self):
        return "%s(%d elements)" % (type(self).__name__, self.n)

    def elements(self):
        return range(self.n)

    def label(self, i):
        return self.labels[i]

    def key(self, label):
        return self.index[label]

    def leq(self, i, j):
        return bool(self.up[i] >> j & 1)

    def lt(self, i, j):
        return i != j and bool(self.up[i] >> j & 1)

    def comparable(self, i, j):
        return self.leq(i, j) or self.leq(j, i)

    def join(self, i, j):
        """Least upper bound, or None when it does not exist."""
        return self._by_up.get(self.up[i] & self.up[j])

    def meet(self, i, j):
        return self._by_down.get(self.down[i] & self.down[j])

    def join_all(self, items, default=None):
        acc = default
        for x in items:
            acc = x if acc is None else self.join(acc, x)
            if acc is None:
                return None
        return acc

    def below(self, i):
        return list(bits(self.down[i]))

    def above(self, i):
        return list(bits(self.up[i]))

    def size_below(self, i):
        return popcount(self.down[i])

    @cached_property
    def covers(self):
        out = []
        for i in range(self.n):
            strict = self.up[i] & ~(1 << i)
            for j in bits(strict):
                if self.down[j] & strict == 1 << j:
                    out.append((i, j))
        return tuple(out)

    def minimal(self):
        return [i for i in range(self.n) if self.down[i] == 1 << i]

    def maximal(self):
        return [i for i in range(self.n) if self.up[i] == 1 << i]

    def maxima_of(self, items):
        items = list(items)
        return [x for x in items if not any(y != x and self.leq(x, y) for y in items)]

    def linear_extension(self, rng=None):
        """Topological order of the elements; random tie-breaking when ``rng`` is given."""
        remaining = {i: 0 for i in range(self.n)}
        for _, j in self.covers:
            remaining[j] += 1
        ready = [i for i, d in remaining.items() if d == 0]
        out = []
        while ready:
            if rng is None:
                ready.sort()
                i = ready.pop(0)
            else:
                i = ready.pop(rng.randrange(len(ready)))
            out.append(i)
            for j in bits(self.up[i] & ~(1 << i)):
                if (i, j) in self._cover_set:
                    remaining[j] -= 1
                    if remaining[j] == 0:
                        ready.append(j)
        return out

    @cached_property
    def _cover_set(self):
        return frozenset(self.covers)

    def induced(self, indices):
        """Subposet on the given indices (order of ``indices`` kept)."""
        indices = list(indices)
        pos = {v: k for k, v in enumerate(indices)}
        up = []
        for v in indices:
            m = 0
            for w in bits(self.up[v]):
                if w in pos:
                    m |= 1 << pos[w]
            up.append(m)
        return FinitePoset([self.labels[v] for v in indices], up)

    def hasse_graph(self):
        g = nx.DiGraph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.covers)
        return g

    def isomorphism(self, other):
        """An order isomorphism ``self -> other`` as an index dict, or None."""
        if self.n != len(other) or len(self.covers) != len(other.covers):
            return None
        sig_a = sorted((popcount(self.down[i]), popcount(self.up[i])) for i in range(self.n))
        sig_b = sorted((popcount(other.down[i]), popcount(other.up[i])) for i in range(other.n))
        if sig_a != sig_b:
            return None
        ga, gb = self.hasse_graph(), other.hasse_graph()
        for g, p in ((ga, self), (gb, other)):
            for i in range(p.n):
                g.nodes[i]["sig"] = (popcount(p.down[i]), popcount(p.up[i]))
        m = DiGraphMatcher(ga, gb, node_match=lambda a, b: a["sig"] == b["sig"])
        for iso in m.isomorphisms_iter():
            return dict(iso)
        return None

    def is_isomorphic(self, other):
        return self.isomorphism(other) is not None

    def bottom_element(self):
        full = (1 << self.n) - 1
        for i in range(self.n):
            if self.up[i] == full:
                return i
        return None

    def top_element(self):
        full = (1 << self.n) - 1
        for i in range(self.n):
            if self.down[i] == full:
                return i
        return None

    def same_labeled_order(self, other):
        """True when both posets have the same label set and the same order on labels."""
        if set(self.labels) != set(other.labels):
            return False
        for i, a in enumerate(self.labels):
            mine = {self.labels[j] for j in bits(self.up[i])}
            theirs = {other.labels[j] for j in bits(other.up[other.index[a]])}
            if mine != theirs:
                return False
        return True


class FiniteLattice(FinitePoset):
    """A finite poset with bottom, top and all pairwise joins and meets."""

    is_boolean = False

    def __init__(self, labels, up):
        super().__init__(labels, up)
        self.bottom = self.bottom_element()
        self.top = self.top_element()
        if self.n == 0 or self.bottom is None or self.top is None:
            raise NoBottomOrTop("poset lacks a bottom or a top element")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.join(i, j) is None:
                    raise NotALattice("%r and %r have no least upper bound" % (self.labels[i], self.labels[j]))
                if self.meet(i, j) is None:
                    raise NotALattice("%r and %r have no greatest lower bound" % (self.labels[i], self.labels[j]))

    @classmethod
    def from_poset(cls, poset):
        return cls(poset.labels, poset.up)

    def atoms(self):
        return [j for (i, j) in self.covers if i == self.bottom]

    def atoms_below(self, x):
        return [a for a in self.atoms() if self.leq(a, x)]

    def is_atomic(self):
        atoms = self.atoms()
        for x in range(self.n):
            j = self.join_all([a for a in atoms if self.leq(a, x)], default=self.bottom)
            if j != x:
                return False
        return True

    def interval(self, x, y):
        if not self.leq(x, y):
            raise NotComparable("%r is not below %r" % (self.labels[x], self.labels[y]))
        members = [z for z in range(self.n) if self.leq(x, z) and self.leq(z, y)]
        sub = self.induced(members)
        return FiniteLattice(sub.labels, sub.up)

    def lower(self, y):
        return self.interval(self.bottom, y)

    def product_decomposes(self, y, parts):
        """Whether ``(x_1..x_k) -> x_1 v ... v x_k`` is an isomorphism from the product of the lower intervals of the parts onto ``[bottom, y]``."""
        parts = list(parts)
        for b in parts:
            if not self.leq(b, y):
                raise PartNotBelowY("%r is not below %r" % (self.labels[b], self.labels[y]))
        lowers = [self.below(b) for b in parts]
        if prod(len(lw) for lw in lowers) != self.size_below(y):
            return False
        for combo in product(*lowers):
            z = self.bottom
            for x in combo:
                z = self.join(z, x)
            for x, b in zip(combo, parts):
                if self.meet(z, b) != x:
                    return False
        return True

    def rank_function(self):
        """Length of the longest chain from bottom to each element."""
        r = [0] * self.n
        preds = {j: [] for j in range(self.n)}
        for a, b in self.covers:
            preds[b].append(a)
        for i in self.linear_extension():
            r[i] = max((r[a] + 1 for a in preds[i]), default=0)
        return r


class BooleanLattice:
    """The lattice of subsets of ``ground``; elements are bitmasks."""

    is_boolean = True

    def __init__(self, ground):
        self.ground = tuple(ground)
        self.gindex = {g: i for i, g in enumerate(self.ground)}
        if len(self.gindex) != len(self.ground):
            raise ValueError("ground elements must be distinct")
        self.rank = len(self.ground)
        self.bottom = 0
        self.top = (1 << self.rank) - 1

    def __repr__(self):
        return "BooleanLattice(%s)" % (list(self.ground),)

    def __eq__(self, other):
        return isinstance(other, BooleanLattice) and self.ground == other.ground

    def __hash__(self):
        return hash(self.ground)

    def __len__(self):
        return 1 << self.rank

    def elements(self):
        return range(1 << self.rank)

    def label(self, mask):
        return frozenset(self.ground[i] for i in bits(mask))

    def key(self, label):
        m = 0
        for g in label:
            m |= 1 << self.gindex[g]
        return m

    def leq(self, a, b):
        return a & ~b == 0

    def lt(self, a, b):
        return a != b and a & ~b == 0

    def comparable(self, a, b):
        return a & ~b == 0 or b & ~a == 0

    def join(self, a, b):
        return a | b

    def meet(self, a, b):
        return a & b

    def join_all(self, items, default=0):
        m = default or 0
        for x in items:
            m |= x
        return m

    def below(self, a):
        sub = a
        out = []
        while True:
            out.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & a
        return out

    def size_below(self, a):
        return 1 << popcount(a)

    def atoms(self):
        return [1 << i for i in range(self.rank)]

    def atoms_below(self, a):
        return [1 << i for i in bits(a)]

    def is_atomic(self):
        return True

    def maxima_of(self, items):
        items = list(items)
        return [x for x in items if not any(y != x and x & ~y == 0 for y in items)]

    def product_decomposes(self, y, parts):
        acc = 0
        for b in parts:
            if b & ~y:
                raise PartNotBelowY("part is not below y")
            if acc & b:
                return False
            acc |= b
        return acc == y

    def to_finite(self):
        labs = [self.label(m) for m in range(1 << self.rank)]
        up = []
        for a in range(1 << self.rank):
            mm = 0
            for b in range(1 << self.rank):
                if a & ~b == 0:
                    mm |= 1 << b
            up.append(mm)
        return FiniteLattice(labs, up)


# ----------------------------------------------------------------------
# label-level operations

def from_covers(labels, covers):
    """Validated lattice from a label list and cover pairs."""
    poset = FinitePoset.from_covers(labels, covers)
    return FiniteLattice(poset.labels, poset.up)


def lattice_from_sets(sets):
    poset = FinitePoset.from_sets(sets)
    return FiniteLattice(poset.labels, poset.up)


def boolean_lattice(ground, materialize=False):
    b = BooleanLattice(ground)
    return b.to_finite() if materialize else b


def lub_glb(L, x, y):
    i, j = L.key(x), L.key(y)
    return L.label(L.join(i, j)), L.label(L.meet(i, j))


def interval(L, x, y):
    if isinstance(L, BooleanLattice):
        L = L.to_finite()
    return L.interval(L.key(x), L.key(y))


def product_decomposes(L, y, parts):
    return L.product_decomposes(L.key(y), [L.key(p) for p in parts])


def atoms_below(L, x):
    return {L.label(a) for a in L.atoms_below(L.key(x))}


def cartesian_product(L, M):
    if isinstance(L, BooleanLattice):
        L = L.to_finite()
    if isinstance(M, BooleanLattice):
        M = M.to_finite()
    labels = [(a, b) for a in L.labels for b in M.labels]
    up = []
    for i in range(L.n):
        for j in range(M.n):
            m = 0
            for i2 in bits(L.up[i]):
                for j2 in bits(M.up[j]):
                    m |= 1 << (i2 * M.n + j2)
            up.append(m)
    return FiniteLattice(labels, up)


TOP = "⊤"


def free_product(L, M, top_label=TOP):
    """Product of the two lattices with their tops removed, plus a new top."""
    if isinstance(L, BooleanLattice):
        L = L.to_finite()
    if isinstance(M, BooleanLattice):
        M = M.to_finite()
    a_idx = [i for i in range(L.n) if i != L.top]
    b_idx = [j for j in range(M.n) if j != M.top]
    labels = [(L.labels[i], M.labels[j]) for i in a_idx for j in b_idx]
    if top_label in labels:
        raise ValueError("top label collides with an existing label")
    pos = {(i, j): k for k, (i, j) in enumerate((i, j) for i in a_idx for j in b_idx)}
    top = len(labels)
    up = []
    for i in a_idx:
        for j in b_idx:
            m = 1 << top
            for i2 in bits(L.up[i]):
                for j2 in bits(M.up[j]):
                    if (i2, j2) in pos:
                        m |= 1 << pos[(i2, j2)]
            up.append(m)
    up.append(1 << top)
    return FiniteLattice(labels + [top_label], up)


def chain(k):
    """Chain lattice with elements 0 < 1 < ... < k-1."""
    return from_covers(list(range(k)), [(i, i + 1) for i in range(k - 1)])


def random_lattice(rng, max_size=12, ground=5, attempts=50):
    """Random lattice realized as an intersection-closed family of subsets.

    Every finite lattice arises this way, which makes it a convenient
    generator for property tests.
    """
    if isinstance(rng, int):
        rng = _random.Random(rng)
    full = frozenset(range(ground))
    for _ in range(attempts):
        fam = {full}
        for _ in range(rng.randint(0, 2 * ground)):
            fam.add(frozenset(x for x in range(ground) if rng.random() < 0.5))
        changed = True
        while changed:
            changed = False
            for a in list(fam):
                for b in list(fam):
                    c = a & b
                    if c not in fam:
                        fam.add(c)
                        changed = True
        if len(fam) <= max_size:
            return lattice_from_sets(fam)
    return chain(rng.randint(2, max_size))


def lattice_from_json(data):
    """``{"elements": [...], "covers": [[a, b], ...]}`` -> validated lattice."""
    return from_covers(data["elements"], [tuple(c) for c in data["covers"]])


def lattice_to_json(L):
    if isinstance(L, BooleanLattice):
        return "boolean:%d" % L.rank
    return {"elements": list(L.labels), "covers": [[L.label(a), L.label(b)] for a, b in L.covers]}
