"""Combinatorial toolkit for systolic simplicial complexes."""
from .complex import (
    SimplicialComplex,
    clique_complex,
    closure,
    induced_cycles_up_to,
    is_flag,
    is_k_large,
    is_locally_k_large,
    link,
    star,
)
from .disc import (
    DefectVector,
    TriangulatedDisc,
    TriangulatedSphere,
    defects,
    embed_in_hex_plane,
    gauss_bonnet,
    is_flat,
)
from .errors import InvalidInput, NoPath, SearchLimit
from .filling import SurfaceMap, fill_cycle_minimal
from .gen import Instance, hex_disc, random_disc, seven_systolic_disc, simplex_with_facets
from .helly import (
    ConvexFamily,
    HellyWitness,
    find_witness,
    reduce_triangle,
    search_counterexample,
    verify_theorem_A,
    verify_theorem_B,
)
from .metric import (
    Subcomplex,
    convex_hull,
    distance,
    interval,
    is_3_convex,
    is_convex,
    is_geodesically_convex,
    is_locally_3_convex,
)
from .surfaces import build_sphere, digonal_surface, extend_digon_to_disc, triangular_surface
from .topology import Verdict, is_k_systolic, is_simply_connected

__version__ = "0.1.0"
