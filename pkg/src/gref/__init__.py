"""Jacobi-seed solutions and Darboux partners of rational potentials on the line."""

from .charexp import (
    EnumerationResult,
    MergeEvent,
    SeedSolution,
    classify_type,
    enumerate_solutions,
    enumerate_with_events,
    lam0_quartic,
    lam1_quartic,
    lambda0_from_lambda1,
    lambda1_from_lambda0,
    real_roots,
)
from .liouville import (
    PotentialProfile,
    bose_invariant,
    density,
    map_variable,
    potential,
    sample_profile,
    schwarzian,
)
from .params import PotentialSpec, RayIdentifiers, TangentPoly, canonicalize, tp_eval
from .regions import (
    RegionReport,
    area_of,
    bound_count,
    drt_curves,
    near_separatrix_root,
    nodeless_predict,
    region_report,
    separatrices,
    threshold_curves,
)
from .seedsol import (
    SeedWavefunction,
    count_interior_zeros,
    jacobi_eval,
    rcsle_residual,
    seed_wavefunction,
)
from .susy import (
    IsospectralReport,
    PartnerResult,
    SeedFF,
    build_partner,
    crum_partner,
    darboux_partner,
    isospectral_report,
    schrodinger_spectrum,
    spectral_grid,
)

__all__ = [
    "EnumerationResult",
    "IsospectralReport",
    "MergeEvent",
    "PartnerResult",
    "PotentialProfile",
    "PotentialSpec",
    "RayIdentifiers",
    "RegionReport",
    "SeedFF",
    "SeedSolution",
    "SeedWavefunction",
    "TangentPoly",
    "area_of",
    "bose_invariant",
    "bound_count",
    "build_partner",
    "canonicalize",
    "classify_type",
    "count_interior_zeros",
    "crum_partner",
    "darboux_partner",
    "density",
    "drt_curves",
    "enumerate_solutions",
    "enumerate_with_events",
    "isospectral_report",
    "jacobi_eval",
    "lam0_quartic",
    "lam1_quartic",
    "lambda0_from_lambda1",
    "lambda1_from_lambda0",
    "map_variable",
    "near_separatrix_root",
    "nodeless_predict",
    "potential",
    "rcsle_residual",
    "real_roots",
    "region_report",
    "sample_profile",
    "schrodinger_spectrum",
    "schwarzian",
    "seed_wavefunction",
    "separatrices",
    "spectral_grid",
    "threshold_curves",
    "tp_eval",
]

__version__ = "0.1.0"
