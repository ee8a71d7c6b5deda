"""Track layouts of graphs and their leveled planar drawings."""

from .classes import (
    HalinInput,
    WiringDiagram,
    bipartite_outerplanar_leveled,
    halin_weak_leveled,
    monotone_arrangement_dual,
    outerplanar_weak_leveled,
    squaregraph_leveled,
    tree_leveled_drawing,
)
from .exact import (
    SolverBudget,
    layered_pathwidth_exact,
    leveled_planar_exact,
    pathwidth_exact,
    realize_layering,
    track_layout_exists,
    track_number_exact,
)
from .graph import Graph, Layering, Report, Violation, bfs_layering, bipartition, validate_layering
from .layout import (
    LayeredPathDecomposition,
    LayeredTreeDecomposition,
    LeveledDrawing,
    PathDecomposition,
    TrackLayout,
    TreeDecomposition,
    validate_layered_path,
    validate_layered_tree,
    validate_leveled_drawing,
    validate_path_decomposition,
    validate_track_layout,
    validate_tree_decomposition,
)
from .transforms import (
    add_apex_track,
    greedy_layered_path,
    layered_path_to_drawing,
    layered_path_to_tracks,
    layered_tree_to_layered_path,
    next_sweep_vertex,
    spiral_wrap,
    tree_path_decomposition,
    unwrap_three_track,
    winding,
)

__version__ = "0.1.0"
