"""Coordinate charts, curvature, Killing residuals, and chart transforms."""

from .charts import (
    Constant,
    DomainError,
    PowerLaw,
    RosenChart,
    inverse_metric_at,
    metric_at,
    metric_partials,
)
from .curvature import (
    CurvatureReport,
    DegeneratePlane,
    christoffels,
    covariant_R_derivative,
    curvature_report,
    is_flat,
    nabla_riemann,
    ricci,
    riemann_symmetry_residual,
    riemann_tensor,
    scalar_curvature,
    sectional_curvature,
)
from .killing import (
    VectorField,
    boost_field,
    commutator_values,
    coordinate_field,
    heis_killing_fields,
    killing_residual,
    rosen_shear_flow,
)
from .transforms import (
    CoordinateMap,
    general_rosen_to_brinkmann,
    pullback_residual,
    rosen_to_brinkmann,
    roundtrip_residual,
)

__all__ = [
    "Constant",
    "CoordinateMap",
    "CurvatureReport",
    "DegeneratePlane",
    "DomainError",
    "PowerLaw",
    "RosenChart",
    "VectorField",
    "boost_field",
    "christoffels",
    "commutator_values",
    "coordinate_field",
    "covariant_R_derivative",
    "curvature_report",
    "general_rosen_to_brinkmann",
    "heis_killing_fields",
    "inverse_metric_at",
    "is_flat",
    "killing_residual",
    "metric_at",
    "metric_partials",
    "nabla_riemann",
    "pullback_residual",
    "ricci",
    "riemann_symmetry_residual",
    "riemann_tensor",
    "rosen_shear_flow",
    "rosen_to_brinkmann",
    "roundtrip_residual",
    "scalar_curvature",
    "sectional_curvature",
]
