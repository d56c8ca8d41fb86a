"""Admissibility conditions: universal sequences, numeric instances, checkers, equivalence."""

from .checks import (
    AdmissibilityReport,
    Failure,
    Verdict,
    check_all,
    check_ground_ring,
    check_u_admissible,
    check_weak_admissible,
    check_wy_admissible,
    format_rational,
)
from .equivalence import EquivalenceReport, FamilyResult, SampleResult, symbolic_suite, verify_equivalence
from .instance import (
    ExcludedConfigurationError,
    GroundRingInstance,
    apply_morphism,
    default_neg_depth,
    default_truncation,
    delta_negative,
    generate_instance,
    sample_parameters,
    validate_u,
)
from .universal import (
    RHO_CHOICES,
    EtaTable,
    GammaTable,
    NotLaurentError,
    corollary_identity_residual,
    eta_closed_form,
    eta_from_gamma,
    eta_table_from_series,
    eta_weak_residual,
    gamma_closed_form,
    gamma_system_residual,
    eta_identity_residual,
    rho_value,
    z_series,
)

__all__ = [name for name in dir() if not name.startswith("_")]
