"""Bounded and pattern-equivariant mass transport on substitution tilings."""
from .casebook import (
    CaseReport,
    chair_case,
    chair_h2_table,
    fibonacci_case,
    run_case,
    strong_pe_obstruction,
)
from .cochain import (
    DiscrepancyPoint,
    FluxCochain,
    TopCochain,
    coboundary,
    discrepancy_series,
    indicator,
    integrate,
    mass_cochain,
    primitive_1d,
)
from .geometry import (
    CHAIR,
    FIBONACCI,
    CollarError,
    GeometryError,
    Patch,
    RegionSpec,
    Tile,
    adjacency,
    boundary_measure,
    chair_partial_region,
    collar_signature,
    supertile,
)
from .scalar import PHI, Scalar
from .transport import (
    TransportPlan,
    TransportProblem,
    flux_from_plan,
    hall_feasible,
    min_transport_radius,
    point_discrepancy_series,
    solve_pe_coboundary,
    stepwise_plan_from_flux,
    verify_plan,
)

__version__ = "0.1.0"
