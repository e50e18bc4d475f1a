"""Exactly solvable point interactions V = i kappa delta_0 W_tau.

With W_tau = diag(e^{i tau}, e^{-i tau}) the eigenvalue condition reduces to
a quadratic in zeta(z) whose roots are

    zeta_pm = e^{-i tau} (1 +- sqrt(1 - kappa^2)) / kappa.

A root yields an eigenvalue only when Im zeta < 0, which is the image of the
physical sheet under z -> zeta(z).  For kappa < 1 the eigenvalues sit exactly
on the boundary circles of the L1 enclosure disks, so the enclosure is sharp.
"""
from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .complexmaps import mobius_inverse
from .enclosures import theorem1_disks
from .errors import ConditionViolated, DomainError
from .potentials import Profile, SeparablePotential

__all__ = [
    "DeltaPotential",
    "Regime",
    "HalfPlane",
    "DeltaSpectrum",
    "delta_zetas",
    "delta_spectrum",
    "delta_on_disk_boundary",
    "delta_dense_halfplane",
    "BumpProfile",
    "delta_bump_potential",
]

ANGLE_TOL = 1e-12


class Regime(str, enum.Enum):
    SUBCRITICAL = "SUBCRITICAL"
    CRITICAL_DENSE = "CRITICAL_DENSE"
    SUPERCRITICAL = "SUPERCRITICAL"


class HalfPlane(str, enum.Enum):
    UPPER = "UPPER"
    LOWER = "LOWER"


@dataclass(frozen=True)
class DeltaPotential:
    kappa: float
    tau: float
    mass: float = 1.0

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError("kappa must be positive")
        if not -math.pi <= self.tau < math.pi:
            raise DomainError("tau must lie in [-pi, pi)")
        if self.mass < 0:
            raise DomainError("mass must be nonnegative")

    @property
    def W(self) -> np.ndarray:
        return np.diag([cmath.exp(1j * self.tau), cmath.exp(-1j * self.tau)])


@dataclass(frozen=True)
class DeltaSpectrum:
    eigenvalues: tuple[complex, ...]
    zetas: tuple[complex, ...]
    regime: Regime
    double_root: bool = False


def delta_zetas(kappa: float, tau: float) -> tuple[complex, complex]:
    """Both roots (zeta_+, zeta_-) of the determinant condition."""
    s = cmath.sqrt(1.0 - kappa * kappa)
    phase = cmath.exp(-1j * tau)
    return phase * (1.0 + s) / kappa, phase * (1.0 - s) / kappa


def _regime(P: DeltaPotential) -> Regime:
    if P.kappa < 1.0:
        return Regime.SUBCRITICAL
    return Regime.CRITICAL_DENSE if P.mass == 0 else Regime.SUPERCRITICAL


def delta_spectrum(P: DeltaPotential) -> DeltaSpectrum:
    """Nonreal-or-gap eigenvalues of the point interaction.

    For m = 0 the map z -> zeta(z) is constant (zeta = 1 on the upper and
    -1 on the lower half plane), so no isolated eigenvalues exist; the
    dense cases are flagged through ``regime`` and
    :func:`delta_dense_halfplane`.
    """
    zp, zm = delta_zetas(P.kappa, P.tau)
    double = P.kappa == 1.0
    roots = (zp,) if double else (zp, zm)
    kept = tuple(z for z in roots if z.imag < 0)
    eigs: tuple[complex, ...] = ()
    if P.mass > 0:
        eigs = tuple(mobius_inverse(z * z, P.mass) for z in kept)
    return DeltaSpectrum(eigs, kept, _regime(P), double)


def delta_on_disk_boundary(P: DeltaPotential) -> float:
    """Largest distance of an eigenvalue from the nearer enclosure circle."""
    if not (P.kappa < 1.0 and 0.0 < P.tau < math.pi and P.mass > 0):
        raise ConditionViolated("needs kappa < 1, tau in (0, pi) and m > 0")
    enc = theorem1_disks(P.kappa, P.mass)
    c, r = P.mass * enc.x0, P.mass * enc.r0
    spec = delta_spectrum(P)
    res = 0.0
    for z in spec.eigenvalues:
        res = max(res, min(abs(abs(z - c) - r), abs(abs(z + c) - r)))
    return res


def _same_angle(a: float, b: float) -> bool:
    d = (a - b + math.pi) % (2.0 * math.pi) - math.pi
    return abs(d) <= ANGLE_TOL


def delta_dense_halfplane(P: DeltaPotential) -> HalfPlane | None:
    """Half plane filled with eigenvalues for kappa >= 1, m = 0 (or None)."""
    if P.kappa < 1.0 or P.mass > 0:
        raise ConditionViolated("dense spectrum occurs only for kappa >= 1 and m = 0")
    t = math.acos(1.0 / P.kappa)
    if _same_angle(P.tau, t):
        return HalfPlane.UPPER
    if _same_angle(P.tau, math.pi - t):
        return HalfPlane.LOWER
    return None


# --------------------------------------------------------------------------
# regularised point interaction for the numerical engine

@dataclass(frozen=True)
class BumpProfile(Profile):
    """Unit-mass bump 15/(16 w) (1 - (x/w)^2)^2 supported on [-w, w]."""

    width: float
    alpha = None

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError("bump width must be positive")

    @property
    def breakpoints(self):
        return (-self.width, self.width)

    def __call__(self, x):
        t = np.asarray(x, dtype=float) / self.width
        return np.where(np.abs(t) < 1.0, 15.0 / (16.0 * self.width) * (1.0 - t * t) ** 2, 0.0)

    def tail_bound(self, L, p=1.0, phi=0.0):
        if L >= self.width:
            return 0.0
        return (15.0 / (16.0 * self.width)) ** p * 2.0 * (self.width - L)

    def sup_beyond(self, R):
        return float(self(np.array(R)))


def delta_bump_potential(P: DeltaPotential, width: float, renormalize: bool = True) -> SeparablePotential:
    """Smooth potential i kappa' g_w(x) W_tau approximating the point interaction.

    A thin bump of strength kappa' transfers f(0-) to f(0+) through
    exp(kappa' sigma_1 W_tau), while the point interaction's jump condition
    gives (I - kappa sigma_1 W_tau)^(-1).  Because (sigma_1 W_tau)^2 = I these
    agree up to a scalar exactly when tanh(kappa') = kappa, so by default the
    bump strength is artanh(kappa).  Without renormalisation the bumps
    converge to the point interaction with coupling tanh(kappa).
    """
    if renormalize:
        if P.kappa >= 1.0:
            raise ConditionViolated("renormalised bump needs kappa < 1")
        strength = math.atanh(P.kappa)
    else:
        strength = P.kappa
    return SeparablePotential(1j * strength * P.W, BumpProfile(width), name="delta_bump")
