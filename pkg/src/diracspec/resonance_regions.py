"""Geometry of complex scaling: uncovered regions, resonance disks, curves.

Under the dilation x -> e^theta x with theta = i phi the essential spectrum
of the free operator turns into the curves +-sqrt(m^2 + e^{-2 i phi} p^2),
p real.  Sweeping the dilation angle over [0, phi] uncovers

    D_theta = { z : z^2 - m^2 = e^{-2 omega} p^2,  Im omega in [0, phi] },

and the L1 enclosure argument applied to the dilated operator confines the
resonances in D_theta to disks built from the dilated norm v_theta.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import optimize

from .enclosures import EnclosureResult, theorem1_disks
from .errors import ConditionViolated, DomainError, NoIntersection, NumericalFailure
from .potentials import Potential, l1_norm, v_theta

# the disk radius amplifies errors in v_theta by ~ v / (1 - v^2)^(3/2)
DISK_TOL = 1e-13

__all__ = [
    "ResonanceContext",
    "in_d_theta",
    "d_theta_boundary",
    "resonance_disks",
    "embedded_eigenvalue_intervals",
    "phi0_massless",
    "ExclusionCurves",
    "exclusion_curves",
    "write_curves_csv",
]


@dataclass(frozen=True)
class ResonanceContext:
    V: Potential
    m: float
    phi: float

    def __post_init__(self):
        if self.m < 0:
            raise DomainError("mass must be nonnegative")
        if not self.V.hermitian_on_axis:
            raise ConditionViolated("resonance enclosures need a Hermitian potential on the real axis")
        if self.V.alpha is None:
            raise ConditionViolated(f"{self.V.name} is not dilation analytic")
        if not 0.0 <= self.phi < self.V.alpha:
            raise ConditionViolated(f"phi = {self.phi} outside [0, alpha = {self.V.alpha})")

    @property
    def alpha(self) -> float:
        return float(self.V.alpha)


def in_d_theta(z: complex, phi: float, m: float, mirror: bool = False) -> bool:
    """Membership in the region uncovered by dilation angles in [0, phi].

    Equivalent to arg(z^2 - m^2) in [-2 phi, 0]; this contains the lower
    right and upper left sheets.  ``mirror=True`` also admits the complex
    conjugate region (arg in [0, 2 phi]).
    """
    if not 0.0 <= phi < math.pi / 2:
        raise DomainError("phi must lie in [0, pi/2)")
    z = complex(z)
    w = (z - m) * (z + m)
    if w == 0:
        return True
    a = math.atan2(w.imag, w.real)
    if w.imag == 0 and w.real > 0:
        a = 0.0
    if -2.0 * phi <= a <= 0.0:
        return True
    return bool(mirror and 0.0 <= a <= 2.0 * phi)


def d_theta_boundary(phi: float, m: float, p_max: float, samples: int = 200) -> tuple[np.ndarray, np.ndarray]:
    """The rotated essential spectrum sqrt(m^2 + e^{-2 i phi} p^2), p in [0, p_max], and its negative."""
    p = np.linspace(0.0, p_max, samples)
    right = np.sqrt(m * m + np.exp(-2j * phi) * p * p)
    return right, -right


def resonance_disks(ctx: ResonanceContext) -> EnclosureResult:
    """Disks K_{m r_theta}(+-m x_theta) with the dilated norm in place of ||V||_1."""
    v = v_theta(ctx.V, ctx.phi, tol=DISK_TOL)
    if v >= 1.0:
        raise ConditionViolated(f"v_theta = {v} is not below 1")
    return theorem1_disks(v, ctx.m)


def embedded_eigenvalue_intervals(v1: float, m: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Open intervals (-m(x0+r0), -m(x0-r0)) and (m(x0-r0), m(x0+r0)).

    Only here can embedded eigenvalues of a Hermitian dilation-analytic
    potential with ||V||_1 = v1 < 1 occur.  x0 - r0 = sqrt(1 - v1^2) and
    x0 + r0 = 1/sqrt(1 - v1^2).
    """
    if not m > 0:
        raise DomainError("mass must be positive")
    enc = theorem1_disks(v1, m)
    lo, hi = m * (enc.x0 - enc.r0), m * (enc.x0 + enc.r0)
    return (-hi, -lo), (lo, hi)


def phi0_massless(V: Potential, tol: float = 1e-12, delta: float = 1e-9) -> float:
    """sup{ phi in [0, alpha) : v_theta(V, phi) < 1 }.

    v_theta is nondecreasing in phi, so the crossing of 1 is bracketed and
    found by bisection followed by Brent's method.  If it never reaches 1
    the result is alpha - delta.
    """
    if V.alpha is None:
        raise ConditionViolated(f"{V.name} is not dilation analytic")
    if l1_norm(V) >= 1.0:
        raise ConditionViolated("||V||_1 must be below 1")
    top = V.alpha * (1.0 - delta)

    def g(phi):
        # near alpha the dilated norm may diverge; treat that as "above 1"
        try:
            val = v_theta(V, phi) - 1.0
        except (ArithmeticError, NumericalFailure):
            return math.inf
        return val if math.isfinite(val) else math.inf

    lo, hi = 0.0, top
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm < 0:
            lo = mid
        elif math.isfinite(gm):
            return optimize.brentq(g, lo, mid, xtol=tol)
        else:
            hi = mid
    return top if hi == top else lo


@dataclass(frozen=True)
class ExclusionCurves:
    phi: np.ndarray
    right: np.ndarray
    left: np.ndarray

    def rows(self):
        for p, z in zip(self.phi, self.right):
            yield float(p), float(z.real), float(z.imag), "right"
        for p, z in zip(self.phi, self.left):
            yield float(p), float(z.real), float(z.imag), "left"


def _intersection(m: float, x: float, r: float, phi: float, samples: int = 512) -> complex:
    """Unique point of the lower boundary circle of K_{mr}(mx) on arg(z^2 - m^2) = -2 phi."""

    def z_of(t):
        return m * x + m * r * np.exp(1j * t)

    def g(t):
        z = z_of(t)
        w = (z - m) * (z + m)
        return np.arctan2(w.imag, w.real) + 2.0 * phi

    if phi == 0.0:
        return complex(m * (x + r))
    # open parameter interval (-pi, 0): the endpoints are real points
    t = np.linspace(-math.pi, 0.0, samples + 1)[1:-1]
    vals = g(t)
    idx = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
    if len(idx) != 1:
        raise NoIntersection(f"found {len(idx)} intersections at phi = {phi}")
    i = idx[0]
    root = optimize.brentq(lambda s: float(g(s)), t[i], t[i + 1], xtol=1e-15)
    return complex(z_of(root))


def exclusion_curves(V: Potential, m: float, phis) -> ExclusionCurves:
    """Intersections of the resonance disk boundaries with the rotated spectrum.

    For each angle the right disk boundary meets arg(z^2 - m^2) = -2 phi in
    the lower half plane; the left family is the point reflection -z.
    m = 0 gives empty polylines.
    """
    phis = np.asarray(phis, dtype=float)
    if m == 0:
        empty = np.array([], dtype=complex)
        return ExclusionCurves(np.array([]), empty, empty)
    pts = []
    for phi in phis:
        enc = resonance_disks(ResonanceContext(V, m, float(phi)))
        pts.append(_intersection(m, enc.x0, enc.r0, float(phi)))
    right = np.array(pts, dtype=complex)
    return ExclusionCurves(phis, right, -right)


def write_curves_csv(curves: ExclusionCurves, path) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["phi", "re_z", "im_z", "family"])
        for row in curves.rows():
            w.writerow([repr(row[0]), repr(row[1]), repr(row[2]), row[3]])
