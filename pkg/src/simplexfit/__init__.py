"""simplexfit: fit a linearly mapped simplicial complex to a point cloud,
prune redundant simplices, and represent points by barycentric codes."""

from .complexes import (
    EPS_LAMBDA,
    BarycentricPoint,
    SimplicialComplex,
    boundary_faces,
    build_complex,
    compact_complex,
    smallest_containing_simplex,
)
from .nearest import (
    SV_CUTOFF,
    TIE_TOL,
    LinearMap,
    ProjectionResult,
    nearest_on_complex,
    nearest_on_simplex,
    pseudoinverse,
)
from .fitting import FitConfig, FitResult, build_neighborhoods, fit, vertex_update
from .pruning import PruneConfig, PruneResult, prune, reduced_representation
from .meshgen import (
    boundary_complex,
    build_mesh,
    cycle_complex,
    disjoint_union,
    freudenthal_mesh,
    grid1d_complex,
    line_complex,
    pad_ambient,
    place_in_bbox,
    transform_map,
)
from .sampling import SampleSpec, sample
from .metrics import hausdorff, mean_ssd

__version__ = "0.1.0"

__all__ = [
    "EPS_LAMBDA",
    "SV_CUTOFF",
    "TIE_TOL",
    "BarycentricPoint",
    "SimplicialComplex",
    "LinearMap",
    "ProjectionResult",
    "FitConfig",
    "FitResult",
    "PruneConfig",
    "PruneResult",
    "SampleSpec",
    "boundary_complex",
    "boundary_faces",
    "build_complex",
    "build_mesh",
    "build_neighborhoods",
    "compact_complex",
    "cycle_complex",
    "disjoint_union",
    "fit",
    "freudenthal_mesh",
    "grid1d_complex",
    "hausdorff",
    "line_complex",
    "mean_ssd",
    "nearest_on_complex",
    "nearest_on_simplex",
    "pad_ambient",
    "place_in_bbox",
    "prune",
    "pseudoinverse",
    "reduced_representation",
    "sample",
    "smallest_containing_simplex",
    "transform_map",
    "vertex_update",
    "__version__",
]
