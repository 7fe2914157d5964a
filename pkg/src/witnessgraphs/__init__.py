"""Witness proximity graphs: exact algorithms, realizations, constructions.

The package computes witness Delaunay graphs (an open disk through two
vertices must avoid every witness) and witness square graphs (the same game
played with axis-parallel squares), realizes combinatorial graphs as such
graphs, and builds witness sets that discriminate a point set.  All geometry
is exact over the rationals.
"""

__version__ = "0.1.0"

from .errors import (
    CollinearBaseError,
    DegenerateInputError,
    NotConvexError,
    NotPermutationError,
    PerturbationFailedError,
    WitnessGraphError,
)
from .geometry import (
    Disk,
    PointConfig,
    PositionClass,
    Point2,
    Square,
    certify_position,
    point,
)
from .order_graph import is_permutation_graph, sg_realize
from .square_graph import SquareGraphs, sg_pos_naive, sg_pos_sensitive
from .stabbing import (
    EpsilonPolicy,
    StabbingResult,
    gen_necklace,
    gen_square_rows,
    stab_disks,
    stab_disks_convex,
    stab_squares,
    verify_discrimination,
)
from .tree_realization import (
    Tree,
    TreeDrawing,
    perturb_general_position,
    realize_tree,
)
from .witness_delaunay import (
    ProximityGraph,
    VoronoiCell,
    check_not_realizable_bipartite,
    compute_cell,
    wdg_naive,
    wdg_sweep,
)

__all__ = [
    "CollinearBaseError",
    "DegenerateInputError",
    "Disk",
    "EpsilonPolicy",
    "NotConvexError",
    "NotPermutationError",
    "PerturbationFailedError",
    "Point2",
    "PointConfig",
    "PositionClass",
    "ProximityGraph",
    "Square",
    "SquareGraphs",
    "StabbingResult",
    "Tree",
    "TreeDrawing",
    "VoronoiCell",
    "WitnessGraphError",
    "__version__",
    "certify_position",
    "check_not_realizable_bipartite",
    "compute_cell",
    "gen_necklace",
    "gen_square_rows",
    "is_permutation_graph",
    "perturb_general_position",
    "point",
    "realize_tree",
    "sg_pos_naive",
    "sg_pos_sensitive",
    "sg_realize",
    "stab_disks",
    "stab_disks_convex",
    "stab_squares",
    "verify_discrimination",
    "wdg_naive",
    "wdg_sweep",
]
