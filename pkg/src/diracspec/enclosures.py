"""Closed-form eigenvalue enclosures and point-exclusion tests.

Every exclusion test returns an :class:`ExclusionVerdict` carrying a signed
margin: the amount by which the relevant strict inequality holds.  A margin
of zero or less means the point is not excluded, so enclosures stay closed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .complexmaps import (
    DiskRegion,
    branch_values,
    disk_parameters,
    dist_to_spectrum,
)
from .errors import ConditionViolated, DomainError
from .potentials import QUAD_TOL, ClippedDecomposition, Potential, diagonal_l1_norms, f_v

__all__ = [
    "EnclosureResult",
    "Criterion",
    "ExclusionVerdict",
    "theorem1_disks",
    "nonrelativistic_disks",
    "resolvent_bound",
    "l1_excluded",
    "imaginary_potential_excluded",
    "imaginary_diagonal_norms",
    "ceps_excluded",
    "fv_excluded",
    "gap_interval",
    "lp_excluded",
    "blockdiag_threshold",
]


@dataclass(frozen=True)
class EnclosureResult:
    disks: DiskRegion
    x0: float
    r0: float
    v1: float
    mass: float

    def contains(self, z: complex) -> bool:
        return self.disks.contains(z)


class Criterion(str, enum.Enum):
    L1_DISKS = "L1_disks"
    IMAGINARY = "IMAGINARY"
    CEPS = "CEPS"
    FV = "FV"
    LP = "LP"
    NONE = "NONE"


@dataclass(frozen=True)
class ExclusionVerdict:
    z: complex
    excluded: bool
    criterion: Criterion
    margin: float


def _verdict(z, criterion, margin) -> ExclusionVerdict:
    return ExclusionVerdict(complex(z), bool(margin > 0), criterion, float(margin))


def _disks(center: float, radius: float) -> DiskRegion:
    return DiskRegion(((complex(center), radius), (complex(-center), radius)))


def theorem1_disks(v1: float, m: float) -> EnclosureResult:
    """Two disks K_{m r0}(+-m x0) containing every non-embedded eigenvalue.

    Requires ||V||_1 = v1 < 1.  For m = 0 both radii vanish: no nonreal
    eigenvalues at all.
    """
    if m < 0:
        raise DomainError("mass must be nonnegative")
    if v1 < 0:
        raise DomainError("v1 must be nonnegative")
    if v1 >= 1.0:
        raise ConditionViolated(f"||V||_1 = {v1} is not below 1")
    x0, r0, _ = disk_parameters(v1)
    return EnclosureResult(_disks(m * x0, m * r0), x0, r0, float(v1), float(m))


def nonrelativistic_disks(v1_physical: float, m: float, c: float) -> EnclosureResult:
    """Enclosure for H(c) - m c^2 with the speed of light restored.

    The right disk has centre m c^2 (x0 - 1) and the left one -m c^2 (x0 + 1),
    both with radius m c^2 r0, where x0, r0 are evaluated at v1/c.  As c grows
    the right disk tends to the Schroedinger disk of radius m v1^2 / 2 about 0.
    """
    if not (m > 0 and c > 0):
        raise DomainError("mass and c must be positive")
    v = v1_physical / c
    if v >= 1.0:
        raise ConditionViolated(f"||V||_1 = {v1_physical} is not below c = {c}")
    if v < 0:
        raise DomainError("v1 must be nonnegative")
    x0, r0, x0m1 = disk_parameters(v)
    mc2 = m * c * c
    disks = DiskRegion(((complex(mc2 * x0m1), mc2 * r0), (complex(-mc2 * (x0 + 1.0)), mc2 * r0)))
    return EnclosureResult(disks, x0, r0, float(v), float(mc2))


def l1_excluded(z: complex, v1: float, m: float) -> ExclusionVerdict:
    """eta(|Phi(z)|) ||V||_1 < 1 excludes z (outside the two disks)."""
    bv = branch_values(z, m)
    return _verdict(z, Criterion.L1_DISKS, 1.0 - bv.eta * v1)


def resolvent_bound(z: complex, v1: float, m: float) -> float:
    """Upper bound for ||(H - z)^-1|| outside the enclosure disks."""
    enc = theorem1_disks(v1, m)
    if enc.contains(z):
        raise ConditionViolated(f"z = {z} lies inside an enclosure disk")
    bv = branch_values(z, m)
    q = bv.eta * v1
    if q >= 1.0:
        raise ConditionViolated(f"eta * ||V||_1 = {q} >= 1 at z = {z}")
    return 1.0 / dist_to_spectrum(z, m) + bv.eta ** 2 / bv.k.imag * v1 / (1.0 - q)


def imaginary_potential_excluded(z: complex, l1_v11: float, l1_v22: float, m: float) -> ExclusionVerdict:
    """Exclusion test for V = i W with W >= 0 (caller guarantees the sign).

    The closed lower half plane is always free of eigenvalues (margin +inf);
    above the axis z is excluded when
    Re(zeta) ||W11||_1 + Re(1/zeta) ||W22||_1 < 2.
    """
    bv = branch_values(z, m)
    if bv.z.imag <= 0:
        return ExclusionVerdict(bv.z, True, Criterion.IMAGINARY, math.inf)
    lhs = bv.zeta.real * l1_v11 + (1.0 / bv.zeta).real * l1_v22
    return _verdict(z, Criterion.IMAGINARY, 2.0 - lhs)


def imaginary_diagonal_norms(V: Potential, samples: int = 2001, tol: float = QUAD_TOL) -> tuple[float, float]:
    """L1 norms of the diagonal of W = -i V after checking W >= 0 on a grid.

    Raises ConditionViolated when -i V is visibly not a nonnegative
    Hermitian matrix at some sample point.
    """
    L = V.truncation(tol)
    x = np.union1d(np.linspace(-L, L, samples), [b for b in V.breakpoints if -L <= b <= L])
    W = -1j * V.matrix(x)
    scale = max(float(np.max(np.abs(W))), 1e-300)
    if np.max(np.abs(W - np.conj(np.swapaxes(W, -1, -2)))) > 1e-12 * scale:
        raise ConditionViolated("-i V is not Hermitian")
    if np.min(np.linalg.eigvalsh(W)) < -1e-12 * scale:
        raise ConditionViolated("-i V is not positive semidefinite")
    return diagonal_l1_norms(V, tol)


def ceps_excluded(z: complex, dec: ClippedDecomposition, m: float) -> ExclusionVerdict:
    """Exclusion for L1 + L^inf_0 potentials from a clipped decomposition.

    Both conditions must hold:  eta C < 1  and
    1/dist + eta^2/Im k * C/(1 - eta C) < 1/eps,
    with C the L1 norm of the unbounded part.  The margin is the smaller of
    the two normalised slacks ``1 - eta C`` and ``1 - eps * lhs``.
    """
    bv = branch_values(z, m)
    C, eps = dec.l1_of_W, dec.epsilon
    slack1 = 1.0 - bv.eta * C
    if slack1 <= 0:
        return _verdict(z, Criterion.CEPS, slack1)
    lhs = 1.0 / dist_to_spectrum(z, m) + bv.eta ** 2 / bv.k.imag * C / slack1
    slack2 = 1.0 - eps * lhs
    return _verdict(z, Criterion.CEPS, min(slack1, slack2))


def fv_excluded(z: complex, V: Potential, m: float) -> ExclusionVerdict:
    """eta(|Phi(z)|) F_V(Im k(z)) < 1 excludes z."""
    bv = branch_values(z, m)
    return _verdict(z, Criterion.FV, 1.0 - bv.eta * f_v(V, bv.k.imag))


def gap_interval(V: Potential, m: float, tol: float = 1e-12) -> tuple[float, float] | None:
    """Spectrum-free interval (-sqrt(m^2 - mu0^2), sqrt(m^2 - mu0^2)).

    mu0 solves F_V(mu) = mu/m.  Only mu in (0, m) can be a root, because
    F_V > 0 while mu/m <= 0 for mu <= 0.  Returns None when F_V(m) >= 1,
    i.e. F_V stays above the line on the whole gap.
    """
    if not m > 0:
        raise DomainError("gap interval needs m > 0")
    if V.is_zero:
        return (-m, m)

    def g(mu):
        return f_v(V, mu) - mu / m

    if g(m) >= 0:
        return None
    lo = m * 1e-6
    if g(lo) <= 0:
        mu0 = 0.0
    else:
        mu0 = optimize.brentq(g, lo, m, xtol=tol * m)
    half = math.sqrt(m * m - mu0 * mu0)
    return (-half, half)


def lp_excluded(z: complex, vp: float, p: float, m: float) -> ExclusionVerdict:
    """L^p criterion: eta (2(p-1)/p)^((p-1)/p) (Im k)^(-(p-1)/p) ||V||_p < 1."""
    if not 1.0 < p < math.inf:
        raise DomainError("p must lie in (1, inf)")
    bv = branch_values(z, m)
    e = (p - 1.0) / p
    lhs = bv.eta * (2.0 * e) ** e * bv.k.imag ** (-e) * vp
    return _verdict(z, Criterion.LP, 1.0 - lhs)


def blockdiag_threshold(p: float, m: float) -> float:
    """Smallness threshold (m p / (2(p-1)))^((p-1)/p) for ||V||_p."""
    if not (2.0 <= p < math.inf and m > 0):
        raise DomainError("need p in [2, inf) and m > 0")
    return (m * p / (2.0 * (p - 1.0))) ** ((p - 1.0) / p)
