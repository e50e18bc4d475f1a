"""Nystrom discretisation of Q(z) = A R0(z) B and determinant root search.

The free resolvent kernel is M(x, y; z) exp(i k |x - y|) with

    M = (i/2) [[zeta, sgn(x - y)], [sgn(x - y), 1/zeta]],

and z is an eigenvalue of H0 + V exactly when det(I + Q(z)) = 0.  For the
complex-scaled operator H0(theta) + V(e^theta x) the kernel becomes
e^theta M exp(i kappa |x - y|) with kappa^2 = e^(2 theta) (z^2 - m^2),
Im kappa > 0, and zeta = (z + m) e^theta / kappa.

Quadrature uses composite Gauss-Legendre panels.  Off-diagonal panel pairs
use the plain product rule.  Inside a panel the kernel has a kink on the
diagonal, so each row is integrated with a Gauss rule split at the row node,
interpolating the unknown from the panel nodes.  The matrix is symmetrised
with square-root weights, so its spectral norm is the L2 operator norm of the
discrete operator.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import linalg

from .complexmaps import branch_root
from .errors import BranchCut, DomainError, NumericalFailure, WindingUnresolved
from .potentials import QUAD_TOL, Potential, polar_factors

__all__ = [
    "Rectangle",
    "NystromSystem",
    "BirmanSchwingerDiscretization",
    "FoundRoot",
    "SpectrumSearchReport",
    "SearchOptions",
    "assemble",
    "dilated_assemble",
    "det_root_search",
    "resonance_search",
    "refine_root",
]

PANEL_ORDER = 16
DEFAULT_NODES = 200


@dataclass(frozen=True)
class Rectangle:
    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise DomainError("rectangle needs re_min < re_max and im_min < im_max")

    @classmethod
    def parse(cls, text: str) -> "Rectangle":
        parts = [float(t) for t in text.split(",")]
        if len(parts) != 4:
            raise DomainError("region must be 're_min,re_max,im_min,im_max'")
        return cls(*parts)

    @property
    def scale(self) -> float:
        return max(self.re_max - self.re_min, self.im_max - self.im_min)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))

    def contains(self, z: complex, strict: bool = True) -> bool:
        if strict:
            return self.re_min < z.real < self.re_max and self.im_min < z.imag < self.im_max
        return self.re_min <= z.real <= self.re_max and self.im_min <= z.imag <= self.im_max

    def corners(self) -> list[complex]:
        return [
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        ]

    def split(self, fx: float = 0.5, fy: float = 0.5) -> list["Rectangle"]:
        xm = self.re_min + fx * (self.re_max - self.re_min)
        ym = self.im_min + fy * (self.im_max - self.im_min)
        return [
            Rectangle(self.re_min, xm, self.im_min, ym),
            Rectangle(xm, self.re_max, self.im_min, ym),
            Rectangle(xm, self.re_max, ym, self.im_max),
            Rectangle(self.re_min, xm, ym, self.im_max),
        ]

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.re_min, self.re_max, self.im_min, self.im_max)


# --------------------------------------------------------------------------
# quadrature layout

GRADING_POWER = 0.25
GRADING_FLOOR = 0.2


def _panel_edges(L: float, n_panels: int, breakpoints, norm=None) -> np.ndarray:
    """Panel edges on [-L, L], honouring interior breakpoints when affordable.

    Panels are graded by the density ||V||^(1/4) / max + floor, so they are
    finer where the potential is large.  The polar factors |V|^(1/2) are
    typically less regular than V itself (branch points where V is small in
    the complex plane), and their size weights the local quadrature error.
    """
    cuts = sorted({float(b) for b in breakpoints if -L < b < L})
    if len(cuts) > n_panels // 2:
        cuts = []
    bounds = np.array([-L] + cuts + [L])
    x = np.linspace(-L, L, 40 * n_panels + 1)
    x = np.union1d(x, bounds)
    dens = np.ones_like(x)
    if norm is not None:
        g = np.asarray(norm(x), dtype=float) ** GRADING_POWER
        if g.max() > 0:
            dens = g / g.max() + GRADING_FLOOR
    cum = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * np.diff(x))])
    mass = np.diff(np.interp(bounds, x, cum))
    counts = np.maximum(1, np.round(n_panels * mass / mass.sum()).astype(int))
    # keep the total fixed by trimming or padding the heaviest interval
    while counts.sum() > n_panels and counts.max() > 1:
        counts[np.argmax(mass / counts * (counts > 1))] -= 1
    while counts.sum() < n_panels:
        counts[np.argmax(mass / counts)] += 1
    edges = []
    for a, b, c in zip(bounds[:-1], bounds[1:], counts):
        ca, cb = np.interp([a, b], x, cum)
        edges.append(np.interp(np.linspace(ca, cb, c + 1)[:-1], cum, x))
    return np.concatenate(edges + [np.array([L])])


def _lagrange_matrix(t: np.ndarray, s: np.ndarray) -> np.ndarray:
    """ell_j(s) for the Lagrange basis on nodes t; shape s.shape + (len(t),)."""
    diff = t[:, None] - t[None, :]
    np.fill_diagonal(diff, 1.0)
    denom = diff.prod(axis=1)
    sd = s[..., None] - t
    out = np.empty(s.shape + (len(t),))
    for j in range(len(t)):
        others = np.delete(sd, j, axis=-1)
        out[..., j] = others.prod(axis=-1) / denom[j]
    return out


@dataclass(frozen=True)
class _SplitRule:
    """Reference-panel subrule: for each node t_i, Gauss rules on [-1, t_i] and [t_i, 1]."""

    t: np.ndarray          # (q,)
    w: np.ndarray          # (q,)
    sub_t: np.ndarray      # (q, 2q)
    sub_w: np.ndarray      # (q, 2q)
    interp: np.ndarray     # (q, 2q, q)


def _split_rule(q: int) -> _SplitRule:
    t, w = leggauss(q)
    sub_t = np.empty((q, 2 * q))
    sub_w = np.empty((q, 2 * q))
    for i, ti in enumerate(t):
        for side, (a, b) in enumerate(((-1.0, ti), (ti, 1.0))):
            h = 0.5 * (b - a)
            sub_t[i, side * q:(side + 1) * q] = a + h * (t + 1.0)
            sub_w[i, side * q:(side + 1) * q] = h * w
    return _SplitRule(t, w, sub_t, sub_w, _lagrange_matrix(t, sub_t))


_RULES: dict[int, _SplitRule] = {}


def _get_rule(q: int) -> _SplitRule:
    if q not in _RULES:
        _RULES[q] = _split_rule(q)
    return _RULES[q]


# --------------------------------------------------------------------------
# discretisation

def _kernel_parts(z: complex, m: float, theta: complex) -> tuple[complex, complex, complex]:
    """Return (prefactor, zeta, kappa) of the (possibly dilated) kernel."""
    e = cmath.exp(theta)
    z = complex(z)
    if theta == 0:
        if abs(z.imag) < 1e-14 and abs(z.real) >= m:
            raise BranchCut(f"z = {z!r} lies on the essential spectrum for m = {m}")
    kappa = branch_root(e * e * (z - m) * (z + m))
    k = kappa / e
    if k == 0:
        raise BranchCut("kernel momentum vanishes")
    return 0.5j * e, (z + m) / k, kappa


class BirmanSchwingerDiscretization:
    """z-independent part of the Nystrom system for one (V, m, theta, N, L).

    Evaluating :meth:`matrix` or :meth:`logdet` at many z reuses the node
    layout and the polar factors of V, which are independent of z.
    """

    def __init__(self, V: Potential, m: float, nodes: int = DEFAULT_NODES,
                 truncation: float | None = None, theta: complex = 0.0,
                 order: int = PANEL_ORDER, tail_tol: float = QUAD_TOL):
        if m < 0:
            raise DomainError("mass must be nonnegative")
        if nodes < 8:
            raise DomainError("need at least 8 nodes")
        theta = complex(theta)
        if theta.real != 0:
            raise DomainError("only purely imaginary dilations are supported")
        phi = theta.imag
        V.check_dilation(phi)
        if truncation is None:
            truncation = V.truncation(tail_tol, 1.0, phi)
        L = float(truncation)
        if not L > 0:
            raise DomainError("truncation radius must be positive")
        q = min(order, nodes)
        n_panels = max(1, int(math.ceil(nodes / q)))
        rule = _get_rule(q)
        edges = _panel_edges(L, n_panels, V.breakpoints, None if V.is_zero else V.norm)
        a, b = edges[:-1], edges[1:]
        h = 0.5 * (b - a)
        mid = 0.5 * (a + b)

        self.V, self.m, self.theta, self.L, self.order = V, float(m), theta, L, q
        self.n_panels = len(a)
        self.nodes = (mid[:, None] + h[:, None] * rule.t).ravel()
        self.weights = (h[:, None] * rule.w).ravel()
        self.sub_x = mid[:, None, None] + h[:, None, None] * rule.sub_t        # (P, q, 2q)
        self.sub_w = h[:, None, None] * rule.sub_w
        self.interp = rule.interp

        scale = cmath.exp(theta)
        A, B = polar_factors(V.matrix(scale * self.nodes) if phi else V.matrix(self.nodes))
        sub_pts = scale * self.sub_x if phi else self.sub_x
        _, Bsub = polar_factors(V.matrix(sub_pts))
        self.A, self.B, self.B_sub = A, B, Bsub
        self.zero = bool(V.is_zero)

        self._sqw = np.sqrt(self.weights)
        self._dx = np.abs(self.nodes[:, None] - self.nodes[None, :])
        self._sgn = np.where(self.nodes[:, None] >= self.nodes[None, :], 1.0, -1.0)
        self._panel = np.repeat(np.arange(self.n_panels), q)
        self._sub_dx = self.nodes.reshape(self.n_panels, q)[:, :, None] - self.sub_x
        self._sub_sgn = np.where(self._sub_dx >= 0, 1.0, -1.0)
        self._cache: dict[complex, complex] = {}

    @property
    def size(self) -> int:
        return len(self.nodes)

    def q_matrix(self, z: complex) -> np.ndarray:
        """Symmetrised 2N x 2N Nystrom matrix of Q(z)."""
        n = self.size
        if self.zero:
            return np.zeros((2 * n, 2 * n), dtype=complex)
        pref, zeta, kappa = _kernel_parts(z, self.m, self.theta)
        E = pref * np.exp(1j * kappa * self._dx)
        S = self._sgn * E
        # K = [[zeta E, S], [S, E / zeta]]  per node pair
        K = np.empty((n, n, 2, 2), dtype=complex)
        K[..., 0, 0] = zeta * E
        K[..., 0, 1] = S
        K[..., 1, 0] = S
        K[..., 1, 1] = E / zeta
        Q = np.einsum("iac,ijcd,jdb->iajb", self.A, K, self.B, optimize=True)
        Q *= (self._sqw[:, None] * self._sqw[None, :])[:, None, :, None]

        # same-panel blocks: kink-split subrule
        q, P = self.order, self.n_panels
        Es = pref * np.exp(1j * kappa * np.abs(self._sub_dx))           # (P, q, 2q)
        Ss = self._sub_sgn * Es
        Ks = np.empty(Es.shape + (2, 2), dtype=complex)
        Ks[..., 0, 0] = zeta * Es
        Ks[..., 0, 1] = Ss
        Ks[..., 1, 0] = Ss
        Ks[..., 1, 1] = Es / zeta
        KB = np.einsum("piscd,pisdb->piscb", Ks, self.B_sub, optimize=True)
        KB *= self.sub_w[..., None, None]
        blocks = np.einsum("piscb,isj->pijcb", KB, self.interp, optimize=True)  # (P, q, q, 2, 2)
        A = self.A.reshape(P, q, 2, 2)
        blocks = np.einsum("piac,pijcb->piajb", A, blocks, optimize=True)
        sw = self._sqw.reshape(P, q)
        blocks *= (sw[:, :, None] / sw[:, None, :])[:, :, None, :, None]
        Q4 = Q.reshape(P, q, 2, P, q, 2)
        idx = np.arange(P)
        Q4[idx, :, :, idx, :, :] = blocks
        return Q4.reshape(2 * n, 2 * n)

    def hs_norms(self, z: complex) -> tuple[float, float]:
        """Frobenius norms of the discretised A R0(z) and R0(z) B.

        Plain product Gauss rule on the node grid; enough for bound checks.
        """
        if self.zero:
            return 0.0, 0.0
        pref, zeta, kappa = _kernel_parts(z, self.m, self.theta)
        E = pref * np.exp(1j * kappa * self._dx)
        S = self._sgn * E
        K = np.empty(E.shape + (2, 2), dtype=complex)
        K[..., 0, 0] = zeta * E
        K[..., 0, 1] = S
        K[..., 1, 0] = S
        K[..., 1, 1] = E / zeta
        ww = self.weights[:, None] * self.weights[None, :]
        AK = np.einsum("iac,ijcb->ijab", self.A, K, optimize=True)
        KB = np.einsum("ijac,jcb->ijab", K, self.B, optimize=True)
        fa = np.sum(ww * np.sum(np.abs(AK) ** 2, axis=(-2, -1)))
        fb = np.sum(ww * np.sum(np.abs(KB) ** 2, axis=(-2, -1)))
        return float(np.sqrt(fa)), float(np.sqrt(fb))

    def matrix(self, z: complex) -> np.ndarray:
        """I + Q_N(z)."""
        M = self.q_matrix(z)
        M[np.diag_indices_from(M)] += 1.0
        return M

    def logdet(self, z: complex) -> complex:
        """log det(I + Q_N(z)) from a pivoted LU factorisation (cached by z)."""
        z = complex(z)
        if z in self._cache:
            return self._cache[z]
        val = _logdet(self.matrix(z))
        self._cache[z] = val
        return val

    def system(self, z: complex) -> "NystromSystem":
        M = self.matrix(z)
        return NystromSystem(
            z=complex(z), m=self.m, theta=self.theta, truncation=self.L,
            nodes=self.nodes.copy(), weights=self.weights.copy(),
            matrix=M, logdet=_logdet(M),
        )


def _logdet(M: np.ndarray) -> complex:
    lu, piv = linalg.lu_factor(M, check_finite=False)
    d = np.diag(lu)
    if np.any(d == 0):
        return complex(-math.inf, 0.0)
    swaps = int(np.count_nonzero(piv != np.arange(len(piv))))
    val = complex(np.sum(np.log(d.astype(complex))))
    return complex(val.real, (val.imag + math.pi * swaps + math.pi) % (2.0 * math.pi) - math.pi)


@dataclass
class NystromSystem:
    """Assembled I + Q_N(z) with its nodes, weights and log-determinant."""

    z: complex
    m: float
    theta: complex
    truncation: float
    nodes: np.ndarray
    weights: np.ndarray
    matrix: np.ndarray
    logdet: complex

    @property
    def q_matrix(self) -> np.ndarray:
        return self.matrix - np.eye(len(self.matrix))

    def q_norm(self) -> float:
        return float(np.linalg.norm(self.q_matrix, 2))

    def det(self) -> complex:
        return cmath.exp(self.logdet) if math.isfinite(self.logdet.real) else 0j

    def smallest_singular_value(self) -> float:
        return float(np.linalg.svd(self.matrix, compute_uv=False)[-1])


def assemble(V: Potential, z: complex, m: float, N: int = DEFAULT_NODES,
             L: float | None = None) -> NystromSystem:
    """Nystrom system for the undilated Birman-Schwinger operator."""
    return BirmanSchwingerDiscretization(V, m, N, L).system(z)


def dilated_assemble(V: Potential, z: complex, m: float, theta: complex,
                     N: int = DEFAULT_NODES, L: float | None = None) -> NystromSystem:
    """Nystrom system for the complex-scaled operator; theta = 0 gives :func:`assemble`."""
    return BirmanSchwingerDiscretization(V, m, N, L, theta=theta).system(z)


# --------------------------------------------------------------------------
# root search

@dataclass(frozen=True)
class SearchOptions:
    nodes: int = DEFAULT_NODES
    truncation: float | None = None
    det_tol: float = 1e-8
    newton_tol: float = 1e-12
    newton_maxiter: int = 30
    fd_step: float = 1e-6
    max_depth: int = 8
    edge_samples: int = 8
    max_arg_step: float = math.pi / 4
    min_segment: float = 1e-7
    branch_margin: float = 1e-3


@dataclass(frozen=True)
class FoundRoot:
    z: complex
    abs_det: float
    residual: float
    winding: int


@dataclass
class SpectrumSearchReport:
    region: Rectangle
    eigenvalues: list[FoundRoot]
    grid_size: int
    truncation: float
    mass: float
    theta: complex
    contour_windings: list[tuple[tuple[float, float, float, float], int]] = field(default_factory=list)
    options: SearchOptions = field(default_factory=SearchOptions)

    @property
    def roots(self) -> list[complex]:
        return [r.z for r in self.eigenvalues]


def _wrap(a: float) -> float:
    return (a + math.pi) % (2.0 * math.pi) - math.pi


def _cut_points(m: float, phi: float, radius: float, samples: int = 4000) -> np.ndarray:
    """Samples of the rotated essential spectrum +-sqrt(m^2 + e^{-2 i phi} p^2)."""
    p = np.concatenate([[0.0], np.geomspace(1e-6, radius + 1.0, samples)])
    r = np.sqrt(m * m + np.exp(-2j * phi) * p * p)
    return np.concatenate([r, -r])


def _check_region(region: Rectangle, m: float, phi: float, margin: float) -> None:
    R = max(abs(c) for c in region.corners()) + margin
    pts = _cut_points(m, phi, R)
    inside = (
        (pts.real > region.re_min - margin) & (pts.real < region.re_max + margin)
        & (pts.imag > region.im_min - margin) & (pts.imag < region.im_max + margin)
    )
    if np.any(inside):
        raise BranchCut("search region meets the essential spectrum of the (dilated) free operator")


class _RootFinder:
    def __init__(self, disc: BirmanSchwingerDiscretization, opts: SearchOptions, region: Rectangle):
        self.disc, self.opts, self.region = disc, opts, region
        self.scale = region.scale
        self.windings: list[tuple[tuple[float, float, float, float], int]] = []

    def _edge_arg(self, a: complex, b: complex) -> float:
        n = self.opts.edge_samples
        ts = np.linspace(0.0, 1.0, n + 1)
        pts = [a + (b - a) * t for t in ts]
        total = 0.0
        stack = [(pts[i], pts[i + 1]) for i in range(n)][::-1]
        while stack:
            p, q = stack.pop()
            lp, lq = self.disc.logdet(p), self.disc.logdet(q)
            if not (math.isfinite(lp.real) and math.isfinite(lq.real)):
                raise WindingUnresolved(f"determinant vanishes on the contour near {p}")
            d = _wrap(lq.imag - lp.imag)
            if abs(d) > self.opts.max_arg_step:
                if abs(q - p) < self.opts.min_segment * self.scale:
                    raise WindingUnresolved(f"argument jumps by {d:.3g} over a tiny step near {p}")
                mid = 0.5 * (p + q)
                stack.append((mid, q))
                stack.append((p, mid))
                continue
            total += d
        return total

    def winding(self, box: Rectangle) -> int:
        c = box.corners()
        total = sum(self._edge_arg(c[i], c[(i + 1) % 4]) for i in range(4))
        w = total / (2.0 * math.pi)
        n = int(round(w))
        if abs(w - n) > 0.1:
            raise WindingUnresolved(f"non-integer winding {w:.3f} on {box.as_tuple()}")
        if n < 0:
            raise WindingUnresolved(f"negative winding {n}: the determinant has a pole in {box.as_tuple()}")
        self.windings.append((box.as_tuple(), n))
        return n

    def newton(self, z0: complex, box: Rectangle) -> complex | None:
        return refine_root(self.disc, z0, self.opts, self.scale, box)

    def search(self, box: Rectangle, depth: int = 0) -> list[tuple[complex, int]]:
        n = self.winding(box)
        if n == 0:
            return []
        if n == 1:
            z = self.newton(box.center, box)
            if z is not None and box.contains(z, strict=False):
                return [(z, 1)]
        if depth >= self.opts.max_depth:
            if n == 1:
                raise NumericalFailure(f"Newton failed to converge inside {box.as_tuple()}")
            # unresolved cluster: refine from the centre and report multiplicity
            z = self.newton(box.center, box)
            if z is None:
                raise NumericalFailure(f"cannot isolate {n} roots in {box.as_tuple()}")
            return [(z, n)]
        # off-centre split fractions keep new edges away from symmetric roots
        fracs = [(0.5 + 0.0137, 0.5 - 0.0091), (0.5 - 0.0613, 0.5 + 0.0471), (0.5 + 0.1031, 0.5 + 0.0877)]
        last: Exception | None = None
        for fx, fy in fracs:
            try:
                out: list[tuple[complex, int]] = []
                for child in box.split(fx, fy):
                    out.extend(self.search(child, depth + 1))
                return out
            except WindingUnresolved as exc:
                last = exc
        raise last  # type: ignore[misc]


def refine_root(disc: BirmanSchwingerDiscretization, z0: complex, opts: SearchOptions | None = None,
                scale: float = 1.0, box: Rectangle | None = None) -> complex | None:
    """Newton iteration on det(I + Q_N(z)) using centred differences of logdet.

    The derivative of f/f(z) = exp(logdet(w) - logdet(z)) is taken with a
    step proportional to ``scale``, which stays finite at a root.  Returns
    None when the iteration does not settle.
    """
    opts = opts or SearchOptions()
    z = complex(z0)
    h = opts.fd_step * scale
    limit = 4.0 * scale
    for _ in range(opts.newton_maxiter):
        try:
            L0 = disc.logdet(z)
            gp = cmath.exp(disc.logdet(z + h) - L0)
            gm = cmath.exp(disc.logdet(z - h) - L0)
        except (BranchCut, OverflowError):
            return None
        deriv = (gp - gm) / (2.0 * h)
        if deriv == 0 or not cmath.isfinite(deriv):
            return None
        step = -1.0 / deriv
        if abs(step) > limit:
            step *= limit / abs(step)
        z = z + step
        if box is not None and abs(z - box.center) > 2.0 * box.scale:
            return None
        if abs(step) <= opts.newton_tol * max(1.0, abs(z)):
            return z
    return None


def _finish(disc, region, opts, raw, theta, windings) -> SpectrumSearchReport:
    found: list[FoundRoot] = []
    for z, wind in raw:
        if not region.contains(z):
            continue
        if any(abs(z - r.z) < 1e-8 * max(1.0, abs(z)) for r in found):
            continue
        M = disc.matrix(z)
        ld = _logdet(M)
        absdet = math.exp(ld.real) if math.isfinite(ld.real) else 0.0
        if absdet > opts.det_tol:
            continue
        sv = float(np.linalg.svd(M, compute_uv=False)[-1])
        found.append(FoundRoot(z, absdet, sv, wind))
    found.sort(key=lambda r: (r.z.real, r.z.imag))
    return SpectrumSearchReport(region, found, disc.size, disc.L, disc.m, theta, windings, opts)


def det_root_search(V: Potential, m: float, region: Rectangle, opts: SearchOptions | None = None,
                    disc: BirmanSchwingerDiscretization | None = None) -> SpectrumSearchReport:
    """Zeros of det(I + Q_N(z)) inside ``region`` by winding numbers plus Newton."""
    opts = opts or SearchOptions()
    return _search(V, m, region, 0j, opts, disc)


def resonance_search(V: Potential, m: float, theta: complex, region: Rectangle,
                     opts: SearchOptions | None = None,
                     disc: BirmanSchwingerDiscretization | None = None) -> SpectrumSearchReport:
    """Zeros of the complex-scaled determinant; theta must be purely imaginary."""
    theta = complex(theta)
    if theta.real != 0:
        raise DomainError("theta must be purely imaginary")
    opts = opts or SearchOptions()
    return _search(V, m, region, theta, opts, disc)


def _search(V, m, region, theta, opts, disc):
    _check_region(region, m, theta.imag, opts.branch_margin)
    if disc is None:
        disc = BirmanSchwingerDiscretization(V, m, opts.nodes, opts.truncation, theta=theta)
    finder = _RootFinder(disc, opts, region)
    raw = finder.search(region)
    return _finish(disc, region, opts, raw, theta, finder.windings)
