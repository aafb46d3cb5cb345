"""Steklov eigenvalues of S^1-invariant metrics on the annulus and Mobius band.

Closed-form normalized eigenvalue branches on flat cylinders and their
half-turn quotients, the crossing lattice of increasing and decreasing
branches, suprema and critical metrics of the normalized eigenvalues,
explicit free boundary minimal immersions into the unit ball with their
certification identities, mesh export, and an independent finite-difference
Dirichlet-to-Neumann oracle.
"""

from .branches import (
    Branch,
    BranchKind,
    EigenvalueEntry,
    SurfaceKind,
    branch_value,
    lambda_bar,
    mobius_crossing_modulus,
    mu_bar,
    nu_bar,
    sigma_bar,
    sigma_bar_grid,
    sigma_bar_piecewise_mobius,
    spectrum,
)
from .crossings import (
    AuxInequalities,
    CrossingPartials,
    CrossingPoint,
    aux_inequalities,
    crossing_partials,
    solve_crossing,
    solve_t10,
)
from .dtn import (
    ConvergenceReport,
    DtNMatrix,
    OracleProblem,
    assemble_dtn,
    closed_form_sigma,
    convergence_study,
    oracle_spectrum,
    rayleigh_quotient,
)
from .exceptions import (
    ConstraintError,
    DomainError,
    NoCrossingError,
    ParameterError,
    SteklovError,
    UnsupportedBranchError,
)
from .extrema import (
    Character,
    CriticalMetric,
    SupremumResult,
    annulus_even_supremum_report,
    critical_set,
    grid_supremum,
    mobius_supremum_consistency,
    sup_sigma_annulus,
    sup_sigma_mobius,
    verify_first_intersection_max,
    verify_no_asymptote,
)
from .jacobi import jacobi_eigenvalues
from .mesh import MeshFormat, SurfaceMesh, build_mesh, export_mesh
from .surfaces import (
    FamilyKind,
    IdentityReport,
    ImmersionFamily,
    InjectivityReport,
    QFormSample,
    annulus_b4,
    boundary_eigenvalue_factor,
    catenoid_b3,
    covering_degree,
    evaluate,
    injectivity_scan,
    make_admissible,
    make_family,
    mobius_b4,
    q_form_components,
    q_form_sum,
    radial_monotonicity_margin,
    verify_identities,
)

__all__ = [
    "AuxInequalities",
    "Branch",
    "BranchKind",
    "Character",
    "ConstraintError",
    "ConvergenceReport",
    "CriticalMetric",
    "CrossingPartials",
    "CrossingPoint",
    "DomainError",
    "DtNMatrix",
    "EigenvalueEntry",
    "FamilyKind",
    "IdentityReport",
    "ImmersionFamily",
    "InjectivityReport",
    "MeshFormat",
    "NoCrossingError",
    "OracleProblem",
    "ParameterError",
    "QFormSample",
    "SteklovError",
    "SupremumResult",
    "SurfaceKind",
    "SurfaceMesh",
    "UnsupportedBranchError",
    "annulus_b4",
    "annulus_even_supremum_report",
    "assemble_dtn",
    "aux_inequalities",
    "boundary_eigenvalue_factor",
    "branch_value",
    "build_mesh",
    "catenoid_b3",
    "closed_form_sigma",
    "convergence_study",
    "covering_degree",
    "critical_set",
    "crossing_partials",
    "evaluate",
    "export_mesh",
    "grid_supremum",
    "injectivity_scan",
    "jacobi_eigenvalues",
    "lambda_bar",
    "make_admissible",
    "make_family",
    "mobius_b4",
    "mobius_crossing_modulus",
    "mobius_supremum_consistency",
    "mu_bar",
    "nu_bar",
    "oracle_spectrum",
    "q_form_components",
    "q_form_sum",
    "radial_monotonicity_margin",
    "rayleigh_quotient",
    "sigma_bar",
    "sigma_bar_grid",
    "sigma_bar_piecewise_mobius",
    "solve_crossing",
    "solve_t10",
    "spectrum",
    "sup_sigma_annulus",
    "sup_sigma_mobius",
    "verify_first_intersection_max",
    "verify_identities",
    "verify_no_asymptote",
]

__version__ = "1.0.0"
