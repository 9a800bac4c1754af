"""crystalframes: exact crystallographic tight frames, standard crystal
nets, and graph Jacobians.

The package is organized by subject:

- ``graph_core``     finite multigraphs, chains, boundary operators, homology
- ``exact_lattice``  HNF/SNF, direct summands, complements, enumeration
- ``tight_frames``   frames, frame operators, Naimark, the catalog
- ``crystal_nets``   standard/harmonic realizations, energy, quadric points
- ``graph_jacobian`` Jacobian, Picard group, Abel-Jacobi/Albanese maps
- ``diophantine``    three squares, Q3 points, rational rotations
- ``suites``         reproducible verification suites (also via the CLI)
"""

from .exact_lattice import (
    AbelianInvariants,
    IntLattice,
    covolume_squared,
    dual_quotient,
    enumerate_summands,
    hnf,
    orth_complement_int,
    saturate,
    snf,
    square_free_part,
)
from .graph_core import FiniteGraph, build_graph, homology_basis
from .graph_jacobian import abel_jacobi, albanese, jacobian, tree_number
from .crystal_nets import (
    VanishingSummand,
    cubic_projection,
    quadric_point_2d,
    standard_realization,
)
from .tight_frames import Frame, catalog_frame, frame_from_summand, is_tight

__version__ = "0.1.0"

__all__ = [
    "AbelianInvariants",
    "Frame",
    "FiniteGraph",
    "IntLattice",
    "VanishingSummand",
    "abel_jacobi",
    "albanese",
    "build_graph",
    "catalog_frame",
    "covolume_squared",
    "cubic_projection",
    "dual_quotient",
    "enumerate_summands",
    "frame_from_summand",
    "hnf",
    "homology_basis",
    "is_tight",
    "jacobian",
    "orth_complement_int",
    "quadric_point_2d",
    "saturate",
    "snf",
    "square_free_part",
    "standard_realization",
    "tree_number",
]
