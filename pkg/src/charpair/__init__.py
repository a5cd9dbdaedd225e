"""Characteristic pairs of quasitoric manifolds and their automorphism groups."""

from .constructors import (
    bott_pair,
    example_m2,
    interval_pair,
    product_pair,
    simplex_pair,
    blowup_references,
    vertex_cut,
)
from .explorer import classify_facets, enumerate_characteristic_functions
from .lattice import det, normalize, saturated_span, solve_against_basis
from .pair import CharPair, face_subtorus, gl_equivalent, validate_nonsingular
from .polytope import Polytope, build_face_lattice, f_vector, facet_subpolytope, validate_polytope
from .symmetry import (
    AutReport,
    PairAut,
    PosetAut,
    check_condition,
    combinatorial_isomorphism,
    pair_automorphisms,
    poset_automorphisms,
)

__all__ = [
    "AutReport",
    "CharPair",
    "PairAut",
    "Polytope",
    "PosetAut",
    "bott_pair",
    "build_face_lattice",
    "check_condition",
    "classify_facets",
    "combinatorial_isomorphism",
    "det",
    "enumerate_characteristic_functions",
    "example_m2",
    "f_vector",
    "face_subtorus",
    "facet_subpolytope",
    "gl_equivalent",
    "interval_pair",
    "normalize",
    "pair_automorphisms",
    "poset_automorphisms",
    "product_pair",
    "saturated_span",
    "simplex_pair",
    "solve_against_basis",
    "blowup_references",
    "validate_nonsingular",
    "validate_polytope",
    "vertex_cut",
]
