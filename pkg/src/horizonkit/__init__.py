"""Cauchy horizons of planar regions in flat 2+1 spacetime.

The horizon over an open planar set is the graph of its
distance-to-complement function.  This package provides exact causal
primitives, region kernels with full nearest-point enumeration, null
generator tracing, pointwise differentiability classification along
generators, the curvature toolbox for slice curves, and a
curvature-comparison harness, with a batch CLI on top.
"""

from .minkowski import (
    SpacetimePoint,
    SphereSlice,
    causally_precedes,
    chronologically_precedes,
    past_cone_slice,
)
from .region import (
    AntiDisk,
    BumpBoundary,
    ConvexPolygon,
    CreaseSet,
    Disk,
    EllipseRegion,
    GraphDomain,
    HalfPlane,
    NearestSet,
    Region,
)
from .horizon import (
    Generator,
    HorizonPoint,
    Multiplicity,
    development_oracle,
    generator_multiplicity,
    generators_through,
    horizon_point,
    in_development,
    trace_generator,
)
from .curvature import (
    PlaneGraph,
    formal_curvature,
    graph_from_callable,
    graph_from_samples,
    high_curvature_point,
    meusnier_section_curvature,
    separation_point,
    tangent_circle_curvature,
)
from .classify import (
    BumpFamilyParams,
    DiffClass,
    GeneratorProfile,
    classify_generator,
    classify_point,
    locate_jump,
    search_jump_scene,
    verify_structure,
)
from .harness import (
    HarnessParams,
    HarnessReport,
    contradiction_summary,
    lmodel_reconstruct,
    lmodel_verify,
    run_harness,
    select_params,
)
from .scenes import Scene, builtin_scene, load_scene, parse_scene_file

__version__ = "0.1.0"
