"""Branch-correct complex primitives for the free Dirac operator.

Units are hbar = c = 1.  The free operator ``H0 = -i d/dx sigma_1 + m sigma_3``
has spectrum ``(-inf, -m] U [m, inf)``.  Everything here is expressed through
the momentum ``k(z) = sqrt(z**2 - m**2)`` taken on the sheet ``Im k > 0``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import BranchCut, DomainError, PoleAtOne

__all__ = [
    "BranchValues",
    "AnnulusSpec",
    "DiskRegion",
    "branch_root",
    "branch_sqrt",
    "branch_values",
    "eta",
    "rho_of_v1",
    "mobius_inverse",
    "annulus_complement_disks",
    "disk_parameters",
    "dist_to_spectrum",
]

BRANCH_TOL = 1e-14


def branch_root(radicand: complex, tol: float = BRANCH_TOL) -> complex:
    """Square root of ``radicand`` with strictly positive imaginary part.

    Raises BranchCut when the radicand lies on ``[0, inf)`` (within ``tol``
    in the imaginary direction), where no such root exists.
    """
    radicand = complex(radicand)
    if abs(radicand.imag) <= tol * max(1.0, abs(radicand)) and radicand.real >= 0.0:
        raise BranchCut(f"radicand {radicand!r} lies on the cut [0, inf)")
    root = cmath.sqrt(radicand)
    if root.imag <= 0.0:
        root = -root
    return root


def branch_sqrt(z: complex, m: float, tol: float = BRANCH_TOL) -> complex:
    """k(z) = sqrt(z^2 - m^2) with Im k > 0.

    Points with ``|Im z| < tol`` and ``|Re z| >= m`` sit on the essential
    spectrum and are rejected instead of being assigned to a side.
    """
    z = complex(z)
    if m < 0:
        raise DomainError("mass must be nonnegative")
    if abs(z.imag) < tol and abs(z.real) >= m:
        raise BranchCut(f"z = {z!r} lies on the essential spectrum for m = {m}")
    # (z-m)(z+m) is better conditioned than z*z - m*m near z = +-m
    radicand = (z - m) * (z + m)
    root = cmath.sqrt(radicand)
    if root.imag <= 0.0:
        root = -root
    return root


def eta(s: float) -> float:
    """eta(s) = sqrt(1/2 + (s + 1/s)/4) for s > 0; symmetric under s -> 1/s."""
    if not s > 0:
        raise DomainError("eta is defined for s > 0 only")
    t = s if s >= 1.0 else 1.0 / s
    return math.sqrt(0.5 + 0.25 * (t + 1.0 / t))


@dataclass(frozen=True)
class BranchValues:
    """The quadruple (k, zeta, Phi, eta(|Phi|)) at a spectral point."""

    z: complex
    m: float
    k: complex
    zeta: complex
    phi: complex
    eta: float


def branch_values(z: complex, m: float, tol: float = BRANCH_TOL) -> BranchValues:
    k = branch_sqrt(z, m, tol)
    z = complex(z)
    zeta = (z + m) / k
    phi = zeta * zeta
    return BranchValues(z=z, m=float(m), k=k, zeta=zeta, phi=phi, eta=eta(abs(phi)))


@dataclass(frozen=True)
class AnnulusSpec:
    """Annulus rho^-2 < |w| < rho^2 on which the Birman-Schwinger bound is < 1."""

    rho: float
    inner: float = field(init=False)
    outer: float = field(init=False)

    def __post_init__(self):
        if not self.rho > 1.0:
            raise DomainError("annulus radius rho must exceed 1")
        object.__setattr__(self, "inner", self.rho ** -2)
        object.__setattr__(self, "outer", self.rho ** 2)

    def contains(self, w: complex) -> bool:
        return self.inner < abs(w) < self.outer


def rho_of_v1(v1: float) -> AnnulusSpec:
    """Annulus parameter for a potential of L1 norm ``v1`` in (0, 1)."""
    if not 0.0 < v1 < 1.0:
        raise DomainError(f"v1 must lie in (0, 1), got {v1}")
    return AnnulusSpec((1.0 + math.sqrt(1.0 - v1 * v1)) / v1)


def mobius_inverse(w: complex, m: float) -> complex:
    """Inverse of Phi(z) = (z + m)/(z - m), i.e. m (w + 1)/(w - 1)."""
    w = complex(w)
    if w == 1:
        raise PoleAtOne("Phi^-1 maps w = 1 to infinity")
    return m * (w + 1.0) / (w - 1.0)


@dataclass(frozen=True)
class DiskRegion:
    """Finite union of closed disks; a zero radius encodes the empty disk."""

    disks: tuple[tuple[complex, float], ...] = ()

    def __post_init__(self):
        for _, r in self.disks:
            if r < 0:
                raise DomainError("disk radius must be nonnegative")

    @property
    def is_empty(self) -> bool:
        return all(r == 0.0 for _, r in self.disks)

    def contains(self, z: complex) -> bool:
        return any(r > 0.0 and abs(z - c) <= r for c, r in self.disks)

    def distance_outside(self, z: complex) -> float:
        """Smallest ``|z - c| - r`` over the nonempty disks (inf if none)."""
        gaps = [abs(z - c) - r for c, r in self.disks if r > 0.0]
        return min(gaps) if gaps else math.inf


def disk_parameters(v: float) -> tuple[float, float, float]:
    """Return (x0, r0, x0 - 1) for a norm ``v`` in [0, 1).

    Uses x0 = (2 - v^2)/(2 s), r0 = v^2/(2 s), s = sqrt(1 - v^2), which are
    algebraically identical to the nested-root expressions but keep full
    relative accuracy as v -> 0.
    """
    if not 0.0 <= v < 1.0:
        raise DomainError(f"norm must lie in [0, 1), got {v}")
    v2 = v * v
    s = math.sqrt(1.0 - v2)
    x0 = (2.0 - v2) / (2.0 * s)
    r0 = v2 / (2.0 * s)
    x0m1 = v2 * v2 / (2.0 * s * (1.0 + s) ** 2)
    return x0, r0, x0m1


def annulus_complement_disks(spec: AnnulusSpec, m: float) -> DiskRegion:
    """Image under Phi^-1 of the complement of the annulus: two disks."""
    rho4 = spec.rho ** 4
    x0 = (rho4 + 1.0) / (rho4 - 1.0)
    r0 = 2.0 * spec.rho ** 2 / (rho4 - 1.0)
    if m == 0:
        return DiskRegion(((0j, 0.0), (0j, 0.0)))
    return DiskRegion(((complex(m * x0), m * r0), (complex(-m * x0), m * r0)))


def dist_to_spectrum(z: complex, m: float) -> float:
    """Distance from z to (-inf, -m] U [m, inf)."""
    z = complex(z)
    if abs(z.real) >= m:
        return abs(z.imag)
    return min(abs(z - m), abs(z + m))
