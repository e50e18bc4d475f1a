"""Eigenvalue and resonance enclosures for 1D Dirac operators with complex potentials."""

__version__ = "0.1.0"

from .complexmaps import branch_sqrt, branch_values, eta, mobius_inverse, rho_of_v1
from .enclosures import (
    Criterion,
    ExclusionVerdict,
    gap_interval,
    nonrelativistic_disks,
    resolvent_bound,
    theorem1_disks,
)
from .errors import (
    AnalyticityViolation,
    BranchCut,
    ConditionViolated,
    DiracSpecError,
    DomainError,
    NoIntersection,
    NonIntegrable,
    NumericalFailure,
    PoleAtOne,
    WindingUnresolved,
)
from .potentials import l1_norm, lp_norm, potential_from_dict, v_theta

__all__ = [
    "__version__",
    "branch_sqrt",
    "branch_values",
    "eta",
    "mobius_inverse",
    "rho_of_v1",
    "Criterion",
    "ExclusionVerdict",
    "gap_interval",
    "nonrelativistic_disks",
    "resolvent_bound",
    "theorem1_disks",
    "AnalyticityViolation",
    "BranchCut",
    "ConditionViolated",
    "DiracSpecError",
    "DomainError",
    "NoIntersection",
    "NonIntegrable",
    "NumericalFailure",
    "PoleAtOne",
    "WindingUnresolved",
    "l1_norm",
    "lp_norm",
    "potential_from_dict",
    "v_theta",
]
