"""Oriented and facial building sets, acyclic nested complexes, and their
realization by iterated stellar subdivisions."""
from fractions import Fraction
from itertools import combinations

from .building import (
    BuildingSet, SimplicialComplex, closure_keys, graphical_building_set, is_building_set,
    restrict_contract,
)
from .errors import (
    BlockNotInNestedSet, CertificationFailed, GroundMismatch, HasLoops, NotABuildingSet,
    NotNested, NotOrientedBuildingSet,
)
from .lattice import BooleanLattice, label_key
from .om import (
    OrientedMatroid, VectorConfig, _contract_config, direct_sum_config, restrict_contract_om,
    stellar_subdivision,
)


def _on_ground(B, ground):
    """The same boolean building set re-indexed over ``ground`` (same labels)."""
    if tuple(B.lattice.ground) == tuple(ground):
        return B
    L = BooleanLattice(ground)
    return BuildingSet(L, [L.key(B.label(b)) for b in B.blocks], check=False)


def is_oriented_building_set(B, M):
    if set(B.lattice.ground) != set(M.ground) or len(B.lattice.ground) != M.n:
        raise GroundMismatch("building set and oriented matroid live on different ground sets")
    if not B.is_boolean:
        return False
    B = _on_ground(B, M.ground)
    if not is_building_set(B.lattice, B.blocks):
        return False
    return all((p | m) in B.blocks for p, m in M.circuit_masks)


class OrientedBuildingSet:
    """A boolean building set and an oriented matroid on the same ground set."""

    def __init__(self, building, om, check=True):
        if check and not is_oriented_building_set(building, om):
            raise NotOrientedBuildingSet("some circuit support is not a block")
        if set(building.lattice.ground) != set(om.ground):
            raise GroundMismatch("building set and oriented matroid live on different ground sets")
        self.building = _on_ground(building, om.ground)
        self.om = om

    def __repr__(self):
        return "OrientedBuildingSet(%d blocks, %r)" % (len(self.building), self.om)

    @property
    def ground(self):
        return self.om.ground

    def _keys(self, N):
        return {self.building.key_of(x) for x in N}

    # acyclicity of nested sets -------------------------------------------
    def _unions(self, keys):
        unions = {0}
        for b in keys:
            unions |= {u | b for u in unions}
        return unions

    def _acyclic_vi(self, keys):
        faces = self.om.face_masks
        return all(u in faces for u in self._unions(keys))

    def _acyclic_iii(self, keys):
        for u in self._unions(keys):
            for p, m in self.om.circuit_masks:
                if m & ~u == 0 and p & ~u:
                    return False
        return True

    def _acyclic_i(self, keys):
        om = OrientedMatroid(self.om.ground, self.om.circuit_masks)
        for b in keys:
            r = 0
            for c in keys:
                if c != b and c & ~b == 0:
                    r |= c
            inner = restrict_contract_om(om, om.labels_of(b), "restriction")
            contracted = restrict_contract_om(inner, om.labels_of(r), "contraction")
            if not contracted.is_acyclic():
                return False
        return True

    def is_acyclic_nested_keys(self, keys, debug=False):
        keys = set(keys)
        if not self.building.is_nested_keys(keys):
            raise NotNested("not a nested set")
        if not self.om.is_acyclic():
            return False
        ok = self._acyclic_vi(keys)
        if debug:
            if self._acyclic_iii(keys) != ok or self._acyclic_i(keys) != ok:
                raise AssertionError("acyclicity conditions disagree")
        return ok

    def acyclic_nested_complex(self):
        if not self.om.is_acyclic():
            return SimplicialComplex([])
        kappa = list(self.building.kappa)
        faces = self.om.face_masks
        base = self._unions(kappa)
        if not all(u in faces for u in base):
            return SimplicialComplex([])

        def accept(face):
            return all(u in faces for u in self._unions(kappa + list(face)))

        return self.building.nested_complex(accept=accept)

    def restriction_data(self, N, block):
        """Oriented building set ``((B|block)/R, (M|block)/R)`` with ``R`` the union of smaller members."""
        keys = self._keys(N) | self.building.kappa
        b = self.building.key_of(block)
        if b not in keys:
            raise BlockNotInNestedSet("block is not a member of the nested set")
        if not self.building.is_nested_keys(keys):
            raise NotNested("not a nested set")
        r = 0
        for c in keys:
            if c != b and c & ~b == 0:
                r |= c
        L = self.building.lattice
        B_lab, R_lab = L.label(b), L.label(r)
        restricted = restrict_contract(self.building, B_lab, "restriction")
        building = restrict_contract(restricted, R_lab, "contraction")
        om = restrict_contract_om(restrict_contract_om(self.om, B_lab, "restriction"), R_lab, "contraction")
        return OrientedBuildingSet(building, om, check=False)


def minimal_oriented_building_set(M):
    L = BooleanLattice(M.ground)
    return BuildingSet(L, closure_keys(L, {p | m for p, m in M.circuit_masks}), check=False)


def is_acyclic_nested(N, OB, debug=False):
    return OB.is_acyclic_nested_keys(OB._keys(N), debug=debug)


def acyclic_nested_complex(OB):
    return OB.acyclic_nested_complex()


def nested_restriction_data(OB, N, B):
    return OB.restriction_data(N, B)


def reduce_trivial_cases(OB):
    """Delete the element forced by a circuit with a single negative element."""
    om = OB.om
    while True:
        forced = [m for p, m in om.circuit_masks if bin(m).count("1") == 1]
        if not forced:
            return OB
        s = om.labels_of(forced[0])
        keep = [x for x in om.ground if x not in s]
        B = restrict_contract(OB.building, keep, "restriction")
        om = restrict_contract_om(om, keep, "restriction")
        OB = OrientedBuildingSet(B, om, check=False)


# ----------------------------------------------------------------------
# facial building sets

class FacialBuildingSet(BuildingSet):
    """A building set over the face lattice of an acyclic oriented matroid."""

    def __init__(self, om, blocks, check=True):
        om.require_acyclic()
        L = om.face_lattice()
        keys = [L.key(frozenset(b)) for b in blocks]
        super().__init__(L, keys, check=False)
        self.om = om
        if check:
            if not is_building_set(L, self.blocks):
                raise NotABuildingSet("not a building set over the face lattice")

    @classmethod
    def maximal(cls, om):
        return cls(om, [f for f in om.faces() if f], check=False)

    @classmethod
    def minimal(cls, om):
        L = om.face_lattice()
        return cls(om, [L.label(k) for k in closure_keys(L, [])], check=False)

    def preimage(self):
        """Smallest oriented building set whose facial part is this one."""
        L = BooleanLattice(self.om.ground)
        seeds = {L.key(self.label(b)) for b in self.blocks}
        seeds |= {p | m for p, m in self.om.circuit_masks}
        return OrientedBuildingSet(BuildingSet(L, closure_keys(L, seeds), check=False), self.om, check=False)


def facial_part(OB):
    if OB.om.loops():
        raise HasLoops("loops are not supported in acyclic pipelines")
    OB.om.require_acyclic()
    faces = OB.om.face_masks
    blocks = [OB.om.labels_of(b) for b in OB.building.blocks if b in faces]
    return FacialBuildingSet(OB.om, blocks, check=True)


def facial_nested_complex(FB):
    return FB.nested_complex()


# ----------------------------------------------------------------------
# cross-polytopes

def cross_polytope_config(n):
    """Homogenized cross-polytope: ``i -> e_i + e_{n+1}`` and ``-i -> -e_i + e_{n+1}``."""
    ground, cols = [], []
    for i in range(1, n + 1):
        for sign, lab in ((1, str(i)), (-1, "-%d" % i)):
            v = [Fraction(0)] * (n + 1)
            v[i - 1] = Fraction(sign)
            v[n] = Fraction(1)
            ground.append(lab)
            cols.append(v)
    return VectorConfig(ground, cols)


def cross_polytope_om(n):
    return OrientedMatroid.from_config(cross_polytope_config(n))


def _pairs(n):
    return [frozenset([str(i), "-%d" % i]) for i in range(1, n + 1)]


def is_hyperoctahedral(blocks, n):
    """The three-condition description of hyperoctahedral building sets."""
    blocks = {frozenset(b) for b in blocks}
    top = frozenset(str(i) for i in range(1, n + 1)) | frozenset("-%d" % i for i in range(1, n + 1))
    pairs = _pairs(n)

    def antipodal(x):
        return any(p <= x for p in pairs)

    if any(antipodal(b) for b in blocks if b != top):
        return False
    if top not in blocks or any(frozenset([x]) not in blocks for x in top):
        return False
    for F, G in combinations(blocks, 2):
        if F & G and not antipodal(F | G) and F | G not in blocks:
            return False
    return True


def design_building_set(B):
    """``B`` on ``1..n`` plus the singletons ``-i`` plus the top, over the cross-polytope."""
    ground = list(B.lattice.ground)
    n = len(ground)
    if [str(g) for g in ground] != [str(i) for i in range(1, n + 1)]:
        raise ValueError("design building sets expect the ground set 1..n")
    om = cross_polytope_om(n)
    blocks = [frozenset(str(x) for x in B.label(b)) for b in B.blocks]
    blocks += [frozenset(["-%d" % i]) for i in range(1, n + 1)]
    blocks.append(frozenset(om.ground))
    return FacialBuildingSet(om, blocks, check=True)


def design_nested_faces(B):
    """Faces predicted by the ``N + squares`` rule for design building sets."""
    n = len(B.lattice.ground)
    out = set()
    blocks = [b for b in B.ordered_blocks()]
    for k in range(len(blocks) + 1):
        for fam in combinations(blocks, k):
            if not B.is_nested_keys(set(fam) | B.kappa):
                continue
            used = set()
            for b in fam:
                used |= {str(x) for x in B.label(b)}
            free = [str(i) for i in range(1, n + 1) if str(i) not in used]
            base = frozenset(frozenset(str(x) for x in B.label(b)) for b in fam)
            for j in range(len(free) + 1):
                for sq in combinations(free, j):
                    out.add(base | frozenset(frozenset(["-" + i]) for i in sq))
    return out


# ----------------------------------------------------------------------
# realization by stellar subdivisions

def sd_realization(FB, A=None):
    """Realize the facial nested complex by iterated stellar subdivisions.

    Returns ``(config, certificate)``.  The configuration has one vector per
    block other than the top, labelled by the block; for connected inputs
    the certificate states that the face semilattice equals the facial
    nested complex label for label, together with the epsilons used.
    """
    om = FB.om
    A = A if A is not None else om.config
    if A is None:
        raise NotImplementedError("stellar realizations need a vector configuration")
    kappa = sorted((FB.label(k) for k in FB.kappa), key=label_key)
    if len(kappa) == 1 and kappa[0] == frozenset(om.ground):
        return _sd_connected(FB, A)
    # disconnected: free sum of the restrictions to the components
    parts = [A.sub([s for s in A.ground if s in K]) for K in kappa]
    config = parts[0]
    for k, P in enumerate(parts[1:], 1):
        label = "e%d" % k
        D = direct_sum_config(config, P)
        sd, _ = stellar_subdivision(D, config.ground, label=label)
        config = _contract_config(sd, [label])
    sum_om = OrientedMatroid.from_config(config)
    blocks = []
    for K in kappa:
        blocks += [FB.label(b) for b in FB.blocks if FB.label(b) <= K and FB.label(b) != K]
    blocks.append(frozenset(config.ground))
    connected = FacialBuildingSet(sum_om, blocks, check=True)
    out, cert = _sd_connected(connected, config)
    target = FB.nested_complex()
    got = SimplicialComplex([f for f in OrientedMatroid.from_config(out).faces()
                             if f != frozenset(out.ground)])
    if not got.is_isomorphic(target):
        raise CertificationFailed("free-sum realization does not match the facial nested complex")
    cert["isomorphic"] = True
    return out, cert


def _sd_connected(FB, A):
    top = frozenset(FB.om.ground)
    blocks = [FB.label(b) for b in FB.blocks if FB.label(b) != top]
    order = sorted(blocks, key=lambda F: (-len(F), label_key(F)))
    cur = A
    eps = []
    for F in order:
        cur, e = stellar_subdivision(cur, F, label=F)
        eps.append(e)
    new = cur.sub(order)
    res = OrientedMatroid.from_config(new)
    got = {f for f in res.faces() if f != frozenset(order)}
    want = set(FB.nested_complex().faces())
    if got != want:
        raise CertificationFailed("face semilattice differs from the facial nested complex")
    return new, {"order": order, "eps": eps, "faces_equal": True}


def line_graph(D):
    """Edges between arcs of ``D`` sharing an endpoint."""
    arcs = D.arcs
    edges = []
    for i, (a, t, h) in enumerate(arcs):
        for b, u, v in arcs[i + 1:]:
            if {t, h} & {u, v}:
                edges.append((a, b))
    return edges


def graphical_oriented_building_set(D):
    """Tubes of the line graph of ``D`` together with its graphical oriented matroid."""
    B = graphical_building_set(D.arc_labels, line_graph(D))
    A = D.incidence_config()
    return OrientedBuildingSet(B, OrientedMatroid.from_config(A)), A
