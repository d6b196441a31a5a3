"""Balanced simplicial complexes and basic cross-flips."""
from .balance import Coloring, find_coloring, is_proper
from .core import (Complex, barycentric_subdivision, cross_polytope_boundary, link, make_complex,
                   standard_sphere, star)
from .flips import apply_flip, find_embeddings, flip, flip_catalog
from .isomorphism import is_isomorphic
from .search import explore_flip_graph, is_irreducible, reduce
from .topology import betti_f2, classify_surface, verify_shelling

__version__ = "0.1.0"
