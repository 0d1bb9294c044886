"""``nestlab`` command line: om, complex, polytope and verify subcommands.

Every command reads one JSON file and writes one JSON document (stdout or
``--output``).  Output is sorted and indented so that identical inputs give
byte-identical files.
"""
import argparse
import json
import sys
from fractions import Fraction

from . import geom
from .building import BuildingSet, _fmt, building_from_json
from .corpus import CORPORA, run_corpus
from .errors import NestlabError, ParseError, VerificationFailed
from .facial import (
    FacialBuildingSet, OrientedBuildingSet, graphical_oriented_building_set,
    minimal_oriented_building_set,
)
from .lattice import BooleanLattice, label_key
from .om import Digraph, OrientedMatroid, SignedSet, VectorConfig, connected_components, om_from_digraph
from .posets import (
    AffinePoset, Poset, affine_oriented_building_set, poset_oriented_building_set, poset_weights,
)


# ----------------------------------------------------------------------
# input

def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as exc:
        raise ParseError("no such file: %s" % path) from exc
    except json.JSONDecodeError as exc:
        raise ParseError("%s: invalid JSON (%s)" % (path, exc)) from exc


def _om_input(data):
    """(OrientedMatroid, VectorConfig, Digraph or None) from a config, digraph or circuit description."""
    try:
        if "arcs" in data:
            D = Digraph.from_json(data)
            return om_from_digraph(D), D.incidence_config(), D
        if "columns" in data:
            A = VectorConfig.from_json(data)
            return OrientedMatroid.from_config(A), A, None
        if "circuits" in data:
            circ = [SignedSet(c[0], c[1]) for c in data["circuits"]]
            return OrientedMatroid.from_circuits(data["ground"], circ), None, None
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("malformed oriented matroid description: %s" % exc) from exc
    raise ParseError("expected a vector configuration, a digraph or a circuit list")


def _oriented(data):
    """Oriented building set and configuration from ``{"om": ..., "building": ...}``."""
    M, A, D = _om_input(data["om"])
    given = data.get("building")
    if given is None:
        if D is not None:
            OB, A = graphical_oriented_building_set(D)
            return OB, A
        return OrientedBuildingSet(minimal_oriented_building_set(M), M, check=False), A
    if given == "minimal":
        return OrientedBuildingSet(minimal_oriented_building_set(M), M, check=False), A
    if given == "maximal":
        L = BooleanLattice(M.ground)
        return OrientedBuildingSet(BuildingSet(L, [x for x in L.elements() if x]), M), A
    blocks = given["blocks"] if isinstance(given, dict) else given
    B = BuildingSet.boolean(M.ground, [frozenset(str(x) for x in b) for b in blocks])
    return OrientedBuildingSet(B, M), A


def _weights(data):
    raw = data.get("weights")
    if raw is None:
        return None
    try:
        return {frozenset(str(x) for x in item["block"]): Fraction(item["value"]) for item in raw}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("weights are a list of {\"block\": [...], \"value\": \"p/q\"}") from exc


def _poset(data):
    return Poset.from_json(data.get("poset", data))


def _affine(data):
    return AffinePoset.from_json(data.get("affine", data))


# ----------------------------------------------------------------------
# output helpers

def _signed(x):
    return {"+": sorted((str(s) for s in x.plus), key=label_key),
            "-": sorted((str(s) for s in x.minus), key=label_key)}


def _set(X):
    return sorted((str(s) for s in X), key=label_key)


def _complex_report(C):
    out = C.to_json()
    out["f_vector"] = list(C.f_vector())
    out["dimension"] = C.dimension()
    out["pure"] = C.is_pure()
    out["pseudomanifold"] = C.is_pseudomanifold()
    out["sphere_euler_characteristic"] = C.has_sphere_euler_characteristic()
    return out


def _vec(v):
    return [str(x) for x in v]


# ----------------------------------------------------------------------
# commands

def cmd_om(data):
    M, A, _ = _om_input(data)
    report = {
        "ground": [str(s) for s in M.ground],
        "rank": M.rank,
        "circuits": [_signed(c) for c in M.circuits()],
        "cocircuits": [_signed(c) for c in M.cocircuits()],
        "counts": {"circuits": len(M.circuits()), "cocircuits": len(M.cocircuits()),
                   "vectors": len(M.vector_masks), "covectors": len(M.covector_masks)},
        "acyclic": M.is_acyclic(),
        "loops": [str(s) for s in M.loops()],
        "connected_components": [_set(c) for c in connected_components(M)],
    }
    if M.is_acyclic():
        FL = M.face_lattice()
        report["faces"] = [_set(f) for f in FL.labels]
        report["face_covers"] = [[_set(FL.label(a)), _set(FL.label(b))] for a, b in FL.covers]
    return report


def cmd_complex(data):
    if "poset" in data:
        OB, _ = poset_oriented_building_set(_poset(data))
        return dict(kind="piping", **_complex_report(OB.acyclic_nested_complex()))
    if "affine" in data:
        OB, _ = affine_oriented_building_set(_affine(data))
        return dict(kind="affine piping", **_complex_report(OB.acyclic_nested_complex()))
    if "om" in data and "facial" in data:
        M, _, _ = _om_input(data["om"])
        given = data["facial"]
        if given == "maximal":
            FB = FacialBuildingSet.maximal(M)
        elif given == "minimal":
            FB = FacialBuildingSet.minimal(M)
        else:
            FB = FacialBuildingSet(M, [frozenset(str(x) for x in b) for b in given])
        return dict(kind="facial nested", blocks=FB.block_strings(), **_complex_report(FB.nested_complex()))
    if "om" in data:
        OB, _ = _oriented(data)
        return dict(kind="acyclic nested", blocks=OB.building.block_strings(),
                    **_complex_report(OB.acyclic_nested_complex()))
    if "building" in data:
        try:
            B = building_from_json(data["building"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("malformed building set: %s" % exc) from exc
        return dict(kind="nested", blocks=B.block_strings(), **_complex_report(B.nested_complex()))
    raise ParseError("expected one of the keys: building, om, poset, affine")


def _tight_certificate(P, V, C, kappa):
    """Check that tight block sets at the vertices are exactly the facets of ``C``."""
    tight = []
    for v in V:
        T = frozenset(P.labels[i] for i in P.tight(v)) - kappa
        tight.append(T)
    dim = geom._affine_dim(V)
    if any(len(T) != dim for T in tight):
        raise VerificationFailed("the polytope is not simple")
    got = {frozenset(T) for T in tight}
    want = {frozenset(f) for f in C.facets}
    if got != want:
        raise VerificationFailed("vertex tight sets differ from the nested complex facets")
    return {_fmt(X): sorted(j for j, T in enumerate(tight) if X in T)
            for X in sorted(C.vertices, key=label_key)}


def _facets_3d(P, V):
    _, faces = geom.polytope_faces(P, V)
    return sorted((f for f in faces if len(f) >= 3 and geom._affine_dim([V[i] for i in f]) == 2), key=sorted)


def cmd_polytope(data, mode, verify=True, off_path=None):
    out = {"mode": mode}
    if mode == "nestohedron":
        try:
            B = building_from_json(data["building"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("malformed building set: %s" % exc) from exc
        if not B.is_boolean:
            raise ParseError("nestohedra need a boolean building set")
        lam = _weights(data) or (lambda X: Fraction(1))
        P = geom.nestohedron_hrep(B, lam)
        V = geom.vertex_enumeration(P)
        if verify:
            kappa = frozenset(frozenset(K) for K in B.connected_components())
            out["facet_of_block"] = _tight_certificate(P, V, B.nested_complex(), kappa)
            formula = {geom.nestohedron_vertex(B, lam, [B.label(k) for k in N])
                       for N in B.maximal_nested_sets()}
            if formula != set(V):
                raise VerificationFailed("enumerated vertices differ from the vertex formula")
    elif mode in ("acyclonestohedron-rs", "acyclonestohedron-ra", "poset-assoc", "affine-cyclo"):
        if mode == "poset-assoc":
            OB, A = poset_oriented_building_set(_poset(data))
            w = poset_weights(OB.building)
        elif mode == "affine-cyclo":
            OB, A = affine_oriented_building_set(_affine(data))
            w = poset_weights(OB.building)
        else:
            OB, A = _oriented(data)
            if A is None:
                raise ParseError("polytopes need a realization (vector configuration or digraph)")
            w = _weights(data)
        space = "RS" if mode == "acyclonestohedron-rs" else "RA"
        P, phi = geom.acyclonestohedron(OB.building, A, space, weights=w, with_map=True)
        V = geom.vertex_enumeration(P)
        if verify:
            cert = geom.verify_acyclonestohedron(OB.building, A, weights=w)
            if space == "RA":
                mapped = sorted(phi(v) for v in cert.vertices)
                if mapped != sorted(V):
                    raise VerificationFailed("RS and RA vertices do not correspond under the linear map")
                index = {v: i for i, v in enumerate(V)}
                remap = [index[phi(v)] for v in cert.vertices]
                facets = {X: frozenset(remap[j] for j in f) for X, f in cert.facet_of_block.items()}
            else:
                index = {v: i for i, v in enumerate(V)}
                facets = {X: frozenset(index[cert.vertices[j]] for j in f)
                          for X, f in cert.facet_of_block.items()}
            out["facet_of_block"] = {_fmt(X): sorted(f) for X, f in sorted(facets.items(), key=lambda kv: label_key(kv[0]))}
            out["nonacyclic_sets_checked"] = cert.checked_nonacyclic
        out["blocks"] = OB.building.block_strings()
    else:
        raise ParseError("unknown polytope mode %r" % mode)
    out["hrep"] = P.to_json()
    out["vertices"] = [_vec(v) for v in V]
    dim = geom._affine_dim(V) if V else -1
    out["dimension"] = dim
    out["verified"] = bool(verify)
    if off_path and dim == 3:
        coords = geom.affine_coordinates(V)
        facets = [geom.cyclic_facet_order(coords, f) for f in _facets_3d(P, V)]
        with open(off_path, "w") as fh:
            fh.write(geom.to_off(coords, facets))
        out["off"] = {"path": off_path, "lossy": True}
    return out


def cmd_verify(corpus="default", seed=0):
    entries = run_corpus(corpus, seed)
    failed = [e for e in entries if not e["ok"]]
    return {"corpus": corpus, "seed": seed, "total": len(entries),
            "passed": len(entries) - len(failed), "failed": len(failed),
            "all_passed": not failed, "entries": entries}


# ----------------------------------------------------------------------
# entry point

MODES = ("nestohedron", "acyclonestohedron-rs", "acyclonestohedron-ra", "poset-assoc", "affine-cyclo")


def build_parser():
    p = argparse.ArgumentParser(prog="nestlab", description="Nested complexes, acyclonestohedra and friends.")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("om", help="oriented matroid report")
    s.add_argument("input")
    s = sub.add_parser("complex", help="nested, facial, acyclic or piping complex")
    s.add_argument("input")
    s = sub.add_parser("polytope", help="exact H- and V-representation with verification")
    s.add_argument("input")
    s.add_argument("--mode", choices=MODES, required=True)
    s.add_argument("--skip-verify", action="store_true", help="emit without checking (marked unverified)")
    s.add_argument("--off", metavar="PATH", help="also write an OFF file when the polytope is 3-dimensional")
    s = sub.add_parser("verify", help="run the invariant suites on a corpus")
    s.add_argument("--corpus", default="default", choices=CORPORA)
    s.add_argument("--seed", type=int, default=0)
    for name in ("om", "complex", "polytope", "verify"):
        sub.choices[name].add_argument("-o", "--output", help="output file (default: stdout)")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            result = cmd_verify(args.corpus, args.seed)
        else:
            data = _load(args.input)
            if args.command == "om":
                result = cmd_om(data)
            elif args.command == "complex":
                result = cmd_complex(data)
            else:
                result = cmd_polytope(data, args.mode, verify=not args.skip_verify, off_path=args.off)
    except NestlabError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2
    text = json.dumps(result, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not result["all_passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
