"""
nbcube - neighbor connectivity of k-ary n-cubes and abelian Cayley graphs.
"""

from nbcube.cayley import (
    AbelianGroupSpec,
    CayleyGraph,
    GeneratorSet,
    build_cayley,
    find_valid_ordering,
    theorem3_witness,
)
from nbcube.cube import CubeSpec, SubcubePartition, VertexCode, build_cube
from nbcube.graph_core import (
    Fan,
    Graph,
    PathFamily,
    classify,
    components,
    disjoint_paths,
    disjoint_set_paths,
    fan,
    vertex_connectivity,
)
from nbcube.survival import (
    FaultSet,
    NbcResult,
    kappa_nb_formula,
    neighbor_connectivity_exact,
    survival_subgraph,
)

__version__ = "0.1.0"

__all__ = [
    "AbelianGroupSpec",
    "CayleyGraph",
    "GeneratorSet",
    "build_cayley",
    "find_valid_ordering",
    "theorem3_witness",
    "CubeSpec",
    "SubcubePartition",
    "VertexCode",
    "build_cube",
    "Fan",
    "Graph",
    "PathFamily",
    "classify",
    "components",
    "disjoint_paths",
    "disjoint_set_paths",
    "fan",
    "vertex_connectivity",
    "FaultSet",
    "NbcResult",
    "kappa_nb_formula",
    "neighbor_connectivity_exact",
    "survival_subgraph",
]
