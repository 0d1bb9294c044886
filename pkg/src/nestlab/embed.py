"""Embeddings of nested complexes along order embeddings of lattices.

A map ``phi : L -> L'`` is stored as a dict from source keys to target keys.
Compatibility of a pair ``(B, B')`` is decided by brute force over the
maximal nested sets of ``B``: the antichain condition is hereditary, so
checking maximal ones suffices.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import random as _random

from .building import BuildingSet, SimplicialComplex, closure_keys, is_building_set
from .errors import (
    ElementNotAVertex, HasLoops, NotAtomic, NotOrderEmbedding, NotPullable, NotPushable,
    VerificationFailed,
)
from .facial import FacialBuildingSet
from .geom import Fan, _fan_from_vectors, lattice_nested_fan, nested_fan
from .lattice import BooleanLattice, label_key, lattice_from_sets, popcount
from .om import check_circuit_axioms, initial_om


@dataclass
class IntervalMap:
    """A map between two lattices, given on element keys."""
    source: object
    target: object
    mapping: dict

    @classmethod
    def from_labels(cls, source, target, label_map):
        def key(L, x):
            return L.key(frozenset(x)) if isinstance(L, BooleanLattice) else L.key(x)
        mapping = {}
        for x, y in label_map.items():
            mapping[key(source, x)] = key(target, y)
        return cls(source, target, mapping)

    @classmethod
    def identity(cls, L):
        return cls(L, L, {x: x for x in L.elements()})

    def __call__(self, x):
        return self.mapping[x]

    def image(self, keys):
        return frozenset(self.mapping[x] for x in keys)

    def preimage(self, keys):
        keys = set(keys)
        return frozenset(x for x, y in self.mapping.items() if y in keys)

    def as_labels(self):
        s, t = self.source, self.target
        return {s.label(x): t.label(y) for x, y in self.mapping.items()}


@dataclass(frozen=True)
class TameReport:
    is_order_embedding: bool
    atom_exhaustive: bool
    join_preserving: bool
    cover_preserving: bool

    @property
    def tame(self):
        return self.is_order_embedding and (
            self.atom_exhaustive or self.join_preserving or self.cover_preserving)


def _covers(L):
    if isinstance(L, BooleanLattice):
        return [(m, m | 1 << i) for m in L.elements() for i in range(L.rank) if not m >> i & 1]
    return list(L.covers)


def _is_cover(L, a, b):
    if isinstance(L, BooleanLattice):
        return a & ~b == 0 and popcount(b & ~a) == 1
    return (a, b) in L._cover_set


def is_order_embedding(phi):
    S, T = phi.source, phi.target
    elems = list(S.elements())
    if set(phi.mapping) != set(elems):
        return False
    return all(S.leq(x, y) == T.leq(phi(x), phi(y)) for x in elems for y in elems)


def analyze_embedding(phi):
    S, T = phi.source, phi.target
    elems = list(S.elements())
    emb = is_order_embedding(phi)
    image = set(phi.mapping.values())
    top = phi(S.top)
    atoms = [a for a in T.atoms() if T.leq(a, top)]
    atom_ex = all(a in image for a in atoms)
    join_ok = all(phi(S.join(x, y)) == T.join(phi(x), phi(y))
                  for x, y in combinations(elems, 2))
    cover_ok = all(_is_cover(T, phi(a), phi(b)) for a, b in _covers(S))
    return TameReport(emb, atom_ex, join_ok, cover_ok)


def _require_embedding(phi):
    if not is_order_embedding(phi):
        raise NotOrderEmbedding("the map is not an order embedding")


def _antichain_witness(Bp, keys):
    """An antichain of ``keys`` outside kappa whose join is a block, or None."""
    L = Bp.lattice
    rest = [b for b in keys if b not in Bp.kappa]
    for k in range(2, len(rest) + 1):
        for combo in combinations(rest, k):
            if any(L.comparable(a, b) for a, b in combinations(combo, 2)):
                continue
            if L.join_all(combo) in Bp.blocks:
                return combo
    return None


def compatibility_witness(phi, B, Bp):
    """None when ``(B, Bp)`` is phi-compatible, otherwise a short reason.

    A nested set ``N`` (connected components included) must be sent to a
    family ``phi(N)`` which is nested once completed by the connected
    components of ``Bp``.
    """
    _require_embedding(phi)
    lab_s, lab_t = B.lattice.label, Bp.lattice.label
    for b in B.blocks:
        if phi(b) not in Bp.blocks:
            return {"reason": "block not sent to a block", "block": lab_s(b)}
    for N in B.maximal_nested_sets():
        image = phi.image(N) | Bp.kappa
        bad = _antichain_witness(Bp, image)
        if bad is not None:
            return {"reason": "image of a nested set is not nested",
                    "nested": sorted((lab_s(x) for x in N), key=label_key),
                    "antichain": sorted((lab_t(x) for x in bad), key=label_key)}
    return None


def is_phi_compatible(phi, B, Bp):
    return compatibility_witness(phi, B, Bp) is None


def pull(phi, Bp):
    _require_embedding(phi)
    blocks = phi.preimage(Bp.blocks)
    if not is_building_set(phi.source, blocks):
        raise NotPullable("the preimage is not a building set")
    return BuildingSet(phi.source, blocks, check=False)


def push(phi, B):
    _require_embedding(phi)
    closed = closure_keys(phi.target, phi.image(B.blocks))
    if phi.preimage(closed) != B.blocks:
        raise NotPushable("the building closure of the image has a larger preimage")
    return BuildingSet(phi.target, closed, check=False)


def pull_push(phi, given, mode):
    if mode == "pull":
        return pull(phi, given)
    if mode == "push":
        return push(phi, given)
    raise ValueError("mode must be 'pull' or 'push'")


# ----------------------------------------------------------------------
# atomic lattices

def _fan_signature(F):
    lin = frozenset(F.lineality)
    return lin, frozenset(frozenset(F.rays[i] for i in c) for c in F.maximal_cones)


@dataclass
class AtomicEmbedding:
    phi: IntervalMap
    building: BuildingSet
    vertex_map: dict
    subcomplex: SimplicialComplex
    subfan: Fan
    matches_lattice_fan: bool


def atoms_below_map(L):
    """The map X -> atoms below X into the boolean lattice on the atoms."""
    if not L.is_atomic():
        raise NotAtomic("the lattice is not atomic")
    atoms = L.atoms()
    T = BooleanLattice([L.label(a) for a in atoms])
    pos = {a: i for i, a in enumerate(atoms)}
    mapping = {x: sum(1 << pos[a] for a in L.atoms_below(x)) for x in L.elements()}
    return IntervalMap(L, T, mapping)


def atomic_boolean_embedding(L, B):
    phi = atoms_below_map(L)
    Bp = push(phi, B)
    if not is_phi_compatible(phi, B, Bp):
        raise VerificationFailed("atomic embedding is not compatible", witness=compatibility_witness(phi, B, Bp))
    vertex_map = {B.label(b): Bp.label(phi(b)) for b in B.ordered_blocks() if b not in B.kappa}
    faces = [frozenset(vertex_map[B.label(k)] for k in f) for f in B.nested_faces()]
    sub = SimplicialComplex(faces)
    big = Bp.nested_complex()
    if not set(sub.faces()) <= set(big.faces()):
        raise VerificationFailed("image faces are not nested in the boolean building set")
    full = nested_fan(Bp)
    index = {frozenset(lab): i for i, lab in enumerate(full.ray_labels)}
    cones = []
    used = set()
    for N in B.maximal_nested_sets():
        c = frozenset(index[Bp.label(phi(x))] for x in N if phi(x) not in Bp.kappa)
        cones.append(c)
        used |= c
    used = sorted(used)
    renum = {i: k for k, i in enumerate(used)}
    subfan = Fan(rays=[full.rays[i] for i in used],
                 maximal_cones=[frozenset(renum[i] for i in c) for c in cones],
                 ray_labels=[full.ray_labels[i] for i in used],
                 lineality=list(full.lineality))
    same = _fan_signature(subfan) == _fan_signature(lattice_nested_fan(L, B))
    return AtomicEmbedding(phi, Bp, vertex_map, sub, subfan, same)


# ----------------------------------------------------------------------
# faces into flats

@dataclass
class BergmanEmbedding:
    phi: IntervalMap
    facial: FacialBuildingSet
    flatial: BuildingSet
    compatible: bool
    witness: dict = None


def face_flat_map(M):
    """Inclusion of the face lattice of an acyclic oriented matroid into its flat lattice."""
    M.require_acyclic()
    FL = M.face_lattice()
    flats = lattice_from_sets([M.labels_of(f) for f in M.flat_masks()])
    return IntervalMap(FL, flats, {x: flats.key(FL.label(x)) for x in FL.elements()})


def flatial_building_set(M, labels=None):
    """Building set over the flat lattice; all nonempty flats when ``labels`` is None."""
    flats = lattice_from_sets([M.labels_of(f) for f in M.flat_masks()])
    if labels is None:
        keys = [k for k in flats.elements() if k != flats.bottom]
    else:
        keys = [flats.key(frozenset(x)) for x in labels]
    return BuildingSet(flats, keys)


def _rekey(B, L):
    return BuildingSet(L, [L.key(frozenset(x)) for x in B.labels()], check=False)


def bergman_embedding(M, given, mode):
    """Pull a flatial building set to faces, or push a facial one to flats."""
    phi = face_flat_map(M)
    FL, flats = phi.source, phi.target
    if mode == "pull":
        Bp = _rekey(given, flats)
        B = pull(phi, Bp)
    elif mode == "push":
        faces = set(FL.labels)
        missing = [s for s in M.ground if frozenset([s]) not in faces]
        if missing:
            raise ElementNotAVertex("elements %s are not vertices" % sorted(missing, key=label_key))
        B = _rekey(given, FL)
        Bp = push(phi, B)
    else:
        raise ValueError("mode must be 'pull' or 'push'")
    facial = FacialBuildingSet(M, B.labels(), check=True)
    wit = compatibility_witness(phi, B, Bp)
    return BergmanEmbedding(phi, facial, Bp, wit is None, wit)


# ----------------------------------------------------------------------
# positive Bergman fan

def _weights(M, w):
    if isinstance(w, dict):
        return {s: Fraction(w[s]) for s in M.ground}
    return {s: Fraction(x) for s, x in zip(M.ground, w)}


def positive_bergman(M, w):
    """Whether the initial oriented matroid for the weight ``w`` is acyclic."""
    if M.loops():
        raise HasLoops("positive Bergman membership needs a loop-free oriented matroid")
    Mw = initial_om(M, _weights(M, w))
    if len(M.ground) <= 10:
        check_circuit_axioms(Mw.circuit_masks)
    return Mw.is_acyclic()


def facial_nested_fan(FB):
    """Nested fan of a facial building set, with rays the indicator vectors of faces in the ground."""
    M = FB.om
    ground = list(M.ground)

    def vec(k):
        lab = FB.label(k)
        return tuple(Fraction(1) if s in lab else Fraction(0) for s in ground)

    return _fan_from_vectors(FB, vec)


def atoms_cover_ground(M):
    """Whether every element lies in a minimal nonempty face.

    The ray of a block is the indicator of its ground elements, which is the
    lattice-nested construction only when the face lattice has the ground
    (up to parallel classes) as atoms.  Outside this case the minimal facial
    building set can leave the positive Bergman fan.
    """
    faces = [f for f in M.face_masks if f]
    covered = 0
    for f in faces:
        if not any(g != f and g & f == g for g in faces):
            covered |= f
    return covered == (1 << len(M.ground)) - 1


@dataclass
class BergmanCertificate:
    cones_checked: int
    samples_checked: int
    failures: list = field(default_factory=list)
    atoms_cover_ground: bool = True

    @property
    def ok(self):
        return not self.failures


def fan_in_positive_bergman(M, FB, samples=0, rng=None):
    """Check that every cone of the facial nested fan lies in the positive Bergman fan.

    The weight tested for a cone is minus the sum of its ray generators
    (largest weights select the elements off the faces).  ``samples`` extra
    random positive combinations are tried per cone.
    """
    if isinstance(rng, int) or rng is None:
        rng = _random.Random(rng)
    fan = facial_nested_fan(FB)
    cert = BergmanCertificate(0, 0, atoms_cover_ground=atoms_cover_ground(M))
    n = len(M.ground)
    for cone in fan.cones():
        gens = [fan.rays[i] for i in sorted(cone)]
        points = [[1] * len(gens)]
        for _ in range(samples):
            points.append([rng.randint(1, 9) for _ in gens])
        for coeffs in points:
            w = [-sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(n)]
            if not positive_bergman(M, w):
                cert.failures.append({"cone": [sorted(fan.ray_labels[i], key=label_key) for i in sorted(cone)],
                                      "weight": [str(x) for x in w]})
            cert.samples_checked += 1
        cert.cones_checked += 1
    return cert


# ----------------------------------------------------------------------
# random corpus

def _join_closed_sublattice(T, rng):
    """Inclusion of a random join-closed subset (with the bottom) of ``T``."""
    from .lattice import FiniteLattice
    elems = list(T.elements())
    picked = {T.bottom} | {x for x in elems if rng.random() < 0.4}
    changed = True
    while changed:
        changed = False
        for x, y in combinations(sorted(picked), 2):
            j = T.join(x, y)
            if j not in picked:
                picked.add(j)
                changed = True
    sub = T.induced(sorted(picked))
    S = FiniteLattice(sub.labels, sub.up)
    return IntervalMap(S, T, {S.key(T.label(x)): x for x in picked})


def random_tame_triple(rng, max_size=10, attempts=200):
    """A tame map ``phi`` and a pair ``(B, B')`` with ``B`` the preimage of ``B'``."""
    from .lattice import random_lattice
    for _ in range(attempts):
        T = random_lattice(rng, max_size=max_size, ground=rng.randint(2, 4))
        if rng.random() < 0.3 and T.is_atomic():
            phi = atoms_below_map(T)
        else:
            phi = _join_closed_sublattice(T, rng)
        if len(phi.mapping) == len(phi.target) and rng.random() < 0.8:
            continue
        if not analyze_embedding(phi).tame:
            continue
        target = phi.target
        seeds = [x for x in target.elements() if x != target.bottom and rng.random() < 0.3]
        Bp = BuildingSet(target, closure_keys(target, seeds), check=False)
        try:
            B = pull(phi, Bp)
        except NotPullable:
            continue
        return phi, B, Bp
    raise RuntimeError("no tame triple found")
