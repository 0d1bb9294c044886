"""Exact combinatorics of building sets, nested complexes and oriented matroids."""
from .errors import NestlabError
from .lattice import BooleanLattice, FiniteLattice, FinitePoset, boolean_lattice, from_covers, lattice_from_sets
from .building import BuildingSet, SimplicialComplex, building_closure, is_building_set, iterated_blowup
from .om import Digraph, OrientedMatroid, SignedSet, VectorConfig, om_from_digraph
from .facial import (
    FacialBuildingSet, OrientedBuildingSet, acyclic_nested_complex, facial_nested_complex, facial_part,
    minimal_oriented_building_set,
)
from .geom import acyclonestohedron, nestohedron_hrep, vertex_enumeration, verify_acyclonestohedron
from .posets import AffinePoset, Poset, piping_complex, poset_associahedron
from .embed import IntervalMap, analyze_embedding, is_phi_compatible, pull, push

__version__ = "0.1.0"
