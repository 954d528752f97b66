"""toristack: exact invariants of toric algebraic stacks.

Validate stacky fans (simplicial fans with positive integer levels on rays),
compute minimal and admissible free resolutions of the associated toric
monoids, present each chart as a finite abelian quotient of affine space,
and read off stabilizers, tameness/Deligne-Mumford and completeness flags,
and torus-invariant cycle data. All arithmetic is exact.
"""

from .linalg import (
    FiniteAbelianGroup,
    IntegerMatrix,
    cokernel_invariants,
    hermite_normal_form,
    lattice_index,
    saturate,
    smith_normal_form,
)
from .cones import (
    Cone,
    contains,
    dual_cone,
    intersect,
    is_face,
    is_full_dimensional,
    is_simplicial,
    multiplicity,
    ray_star,
    rays,
    relative_interior_point,
)
from .monoids import (
    AffineMonoid,
    FreeResolution,
    NotCloseError,
    NotSaturatedError,
    admissible_resolution,
    hilbert_basis,
    irreducible_ray_correspondence,
    is_simplicially_toric,
    minimal_free_resolution,
    monoid_from_cone,
    quotient_group,
    resolution_cokernel,
    restrict_resolution,
    saturation_intersection_check,
)
from .stackyfan import (
    DuplicateRay,
    Fan,
    FanError,
    IntersectionNotFace,
    InvalidLevel,
    NonPrimitiveRay,
    NonSimplicial,
    StackyFan,
    cycle_ideal_classical,
    free_net_points,
    is_complete,
    is_tame,
    stacky_multiplicity,
    validate_fan,
)
from .charts import (
    LocalChart,
    boundary_divisors,
    chart_resolution,
    cycle_ideal_in_chart,
    is_deligne_mumford,
    is_kummer_etale_chart,
    local_chart,
    split_cone,
    stabilizer,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMonoid",
    "Cone",
    "DuplicateRay",
    "Fan",
    "FanError",
    "FiniteAbelianGroup",
    "FreeResolution",
    "IntegerMatrix",
    "IntersectionNotFace",
    "InvalidLevel",
    "LocalChart",
    "NonPrimitiveRay",
    "NonSimplicial",
    "NotCloseError",
    "NotSaturatedError",
    "StackyFan",
    "admissible_resolution",
    "boundary_divisors",
    "chart_resolution",
    "cokernel_invariants",
    "contains",
    "cycle_ideal_classical",
    "cycle_ideal_in_chart",
    "dual_cone",
    "free_net_points",
    "hermite_normal_form",
    "hilbert_basis",
    "intersect",
    "irreducible_ray_correspondence",
    "is_complete",
    "is_deligne_mumford",
    "is_face",
    "is_full_dimensional",
    "is_kummer_etale_chart",
    "is_simplicial",
    "is_simplicially_toric",
    "is_tame",
    "lattice_index",
    "local_chart",
    "minimal_free_resolution",
    "monoid_from_cone",
    "multiplicity",
    "quotient_group",
    "ray_star",
    "rays",
    "relative_interior_point",
    "resolution_cokernel",
    "restrict_resolution",
    "saturate",
    "saturation_intersection_check",
    "smith_normal_form",
    "split_cone",
    "stabilizer",
    "stacky_multiplicity",
    "validate_fan",
]
