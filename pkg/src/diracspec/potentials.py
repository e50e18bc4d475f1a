"""2x2 matrix potentials, their norms, factorizations and decompositions.

A potential is a map ``x -> V(x)`` into complex 2x2 matrices.  Catalog
potentials are *separable*, ``V(x) = M g(x)`` with a constant matrix ``M`` and
a scalar profile ``g``; the profile knows how fast it decays (also along the
rotated rays ``e^{i phi} R`` used for complex scaling), which lets every norm
be computed with a certified truncation.  Tabulated potentials are sampled on
a grid and are taken to vanish outside it.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import integrate, optimize, special

from .errors import AnalyticityViolation, DomainError, NonIntegrable

__all__ = [
    "opnorm2",
    "hsnorm2",
    "polar_factors",
    "Profile",
    "GaussianProfile",
    "ExponentialProfile",
    "PowerProfile",
    "SinhProfile",
    "Potential",
    "SeparablePotential",
    "TabulatedPotential",
    "gaussian_scalar",
    "imaginary_gaussian",
    "matrix_gaussian",
    "exponential_scalar",
    "power_scalar",
    "sinh_potential",
    "zero_potential",
    "potential_from_dict",
    "Factorization",
    "ClippedDecomposition",
    "l1_norm",
    "lp_norm",
    "hs_l1_norm",
    "diagonal_l1_norms",
    "polar_factorize",
    "clip_decompose",
    "f_v",
    "dilated_l1_norm",
    "v_theta",
]

QUAD_TOL = 1e-10
MAX_TRUNCATION = 1e6


def opnorm2(a: np.ndarray) -> np.ndarray:
    """Spectral norm of a stack of 2x2 matrices, in closed form.

    sigma_max^2 = (|A|_F^2 + sqrt(|A|_F^4 - 4 |det A|^2)) / 2
    """
    a = np.asarray(a, dtype=complex)
    fro2 = np.sum(np.abs(a) ** 2, axis=(-2, -1))
    det = a[..., 0, 0] * a[..., 1, 1] - a[..., 0, 1] * a[..., 1, 0]
    disc = np.maximum(fro2 * fro2 - 4.0 * np.abs(det) ** 2, 0.0)
    return np.sqrt(0.5 * (fro2 + np.sqrt(disc)))


def hsnorm2(a: np.ndarray) -> np.ndarray:
    return np.sqrt(np.sum(np.abs(np.asarray(a)) ** 2, axis=(-2, -1)))


def polar_factors(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise factors A = |V|^(1/2), B = U |V|^(1/2) with V = B A.

    From the SVD V = W S Y^*: |V|^(1/2) = Y S^(1/2) Y^* and
    U |V|^(1/2) = W S^(1/2) Y^*.  Zero singular values drop out, so the
    partial isometry only acts on the range.
    """
    values = np.asarray(values, dtype=complex)
    w, s, yh = np.linalg.svd(values)
    root = np.sqrt(s)[..., :, None]
    a = np.conj(np.swapaxes(yh, -1, -2)) @ (root * yh)
    b = w @ (root * yh)
    return a, b


# --------------------------------------------------------------------------
# scalar profiles

class Profile:
    """Scalar profile g with decay certificates along rays r e^{i phi}."""

    #: half-angle of the sector where g is analytic and integrable on rays
    alpha: float | None = None
    #: real and of one sign on the real axis
    real_on_axis: bool = True
    sign_definite: bool = True
    #: L1 in the strict sense (False for slowly decaying profiles)
    integrable: bool = True
    breakpoints: tuple[float, ...] = ()

    def __call__(self, x):
        raise NotImplementedError

    def tail_bound(self, L: float, p: float = 1.0, phi: float = 0.0) -> float:
        """Upper bound for the integral of |g(r e^{i phi})|^p over |r| > L."""
        raise NotImplementedError

    def sup_beyond(self, R: float) -> float:
        """Upper bound for |g(x)| over real |x| >= R."""
        raise NotImplementedError


@dataclass(frozen=True)
class GaussianProfile(Profile):
    """g(x) = exp(-b (x - center)^2)."""

    b: float
    center: float = 0.0
    alpha = math.pi / 4

    def __post_init__(self):
        if not self.b > 0:
            raise DomainError("Gaussian width parameter b must be positive")

    def __call__(self, x):
        return np.exp(-self.b * (x - self.center) ** 2)

    def _ray(self, phi):
        # |g(r e^{i phi})| = K exp(-beta (r - r0)^2)
        c2 = math.cos(2 * phi)
        if c2 <= 0:
            return None
        beta = self.b * c2
        r0 = self.center * math.cos(phi) / c2
        logk = self.b * self.center ** 2 * math.sin(phi) ** 2 / c2
        return beta, r0, logk

    def tail_bound(self, L, p=1.0, phi=0.0):
        ray = self._ray(phi)
        if ray is None:
            return math.inf
        beta, r0, logk = ray
        if L <= abs(r0):
            return math.inf
        pb = p * beta
        return math.exp(p * logk) * math.sqrt(math.pi / pb) * special.erfc(math.sqrt(pb) * (L - abs(r0)))

    def sup_beyond(self, R):
        if R <= abs(self.center):
            return 1.0
        return math.exp(-self.b * (R - abs(self.center)) ** 2)


@dataclass(frozen=True)
class ExponentialProfile(Profile):
    """g(x) = exp(-b |x|); not analytic, so no dilation."""

    b: float
    breakpoints = (0.0,)

    def __call__(self, x):
        return np.exp(-self.b * np.abs(x))

    def tail_bound(self, L, p=1.0, phi=0.0):
        if phi != 0.0:
            return math.inf
        return 2.0 * math.exp(-p * self.b * L) / (p * self.b)

    def sup_beyond(self, R):
        return math.exp(-self.b * max(R, 0.0))


@dataclass(frozen=True)
class PowerProfile(Profile):
    """g(x) = (1 + x^2)^(-gamma/2); in L1 only for gamma > 1."""

    gamma: float

    @property
    def integrable(self):
        return self.gamma > 1.0

    def __call__(self, x):
        return (1.0 + np.abs(x) ** 2) ** (-0.5 * self.gamma)

    def tail_bound(self, L, p=1.0, phi=0.0):
        q = self.gamma * p
        if phi != 0.0 or q <= 1.0 or L <= 0:
            return math.inf
        return 2.0 * L ** (1.0 - q) / (q - 1.0)

    def sup_beyond(self, R):
        return (1.0 + max(R, 0.0) ** 2) ** (-0.5 * self.gamma)


@dataclass(frozen=True)
class SinhProfile(Profile):
    """g(x) = 2 mu / sinh(2 mu x + i), complex mu with Re mu != 0."""

    mu: complex
    real_on_axis = False
    sign_definite = False

    def __post_init__(self):
        if complex(self.mu).real == 0:
            raise DomainError("sinh potential needs Re mu != 0")

    @property
    def _arg(self):
        mu = complex(self.mu)
        return math.atan2(abs(mu.imag), abs(mu.real))

    @property
    def alpha(self):
        return math.pi / 2 - self._arg

    def __call__(self, x):
        mu = complex(self.mu)
        return 2.0 * mu / np.sinh(2.0 * mu * np.asarray(x) + 1j)

    def _nu(self, phi):
        mu = complex(self.mu)
        if mu.real < 0:
            mu = -mu
        return (mu * complex(math.cos(phi), math.sin(phi))).real

    def tail_bound(self, L, p=1.0, phi=0.0):
        # |sinh(a + ib)| >= sinh|a| >= e^|a| / 4 once |a| >= ln(2)/2
        nu = self._nu(phi)
        if nu <= 0:
            return math.inf
        if 2.0 * nu * L < 0.5 * math.log(2.0):
            return math.inf
        amp = 8.0 * abs(self.mu)
        return 2.0 * amp ** p * math.exp(-2.0 * nu * p * L) / (2.0 * nu * p)

    def sup_beyond(self, R):
        # |sinh(a + ib)| >= |sinh a|; exact envelope when mu is real (b = 1)
        sh = math.sinh(2.0 * self._nu(0.0) * max(R, 0.0))
        if complex(self.mu).imag == 0:
            return 2.0 * abs(self.mu) / math.hypot(sh, math.sin(1.0))
        return 2.0 * abs(self.mu) / max(sh, 1e-300)


# --------------------------------------------------------------------------
# potentials

class Potential:
    """Base class; subclasses provide ``matrix`` and a truncation rule."""

    name = "potential"
    alpha: float | None = None
    hermitian_on_axis = False
    sign_definite_scalar = False
    decay_class = "L1"

    def matrix(self, x) -> np.ndarray:
        """V at the points ``x`` (real or complex), shape ``x.shape + (2, 2)``."""
        raise NotImplementedError

    def __call__(self, x):
        return self.matrix(x)

    def norm(self, x) -> np.ndarray:
        return opnorm2(self.matrix(x))

    def truncation(self, tol: float = QUAD_TOL, p: float = 1.0, phi: float = 0.0) -> float:
        raise NotImplementedError

    def sup_radius(self, eps: float) -> float:
        """Radius beyond which ||V(x)|| <= eps on the real axis."""
        raise NotImplementedError

    @property
    def breakpoints(self) -> tuple[float, ...]:
        return ()

    @property
    def is_zero(self) -> bool:
        return False

    def check_dilation(self, phi: float) -> None:
        if phi == 0.0:
            return
        if self.alpha is None:
            raise AnalyticityViolation(f"{self.name} is not dilation analytic")
        if abs(phi) >= self.alpha:
            raise AnalyticityViolation(f"|phi| = {abs(phi)} >= alpha = {self.alpha}")


class SeparablePotential(Potential):
    """V(x) = M g(x) with a constant 2x2 matrix M and a catalog profile g."""

    def __init__(self, matrix, profile: Profile, name: str = "separable"):
        self.M = np.array(matrix, dtype=complex).reshape(2, 2)
        self.profile = profile
        self.name = name
        self._mnorm = float(opnorm2(self.M))
        self.alpha = profile.alpha
        herm = np.allclose(self.M, self.M.conj().T, rtol=0, atol=1e-15)
        self.hermitian_on_axis = bool(herm and profile.real_on_axis)
        # scalar multiple of the identity with a real sign-definite profile
        scalar = abs(self.M[0, 1]) == 0 and abs(self.M[1, 0]) == 0 and self.M[0, 0] == self.M[1, 1]
        self.sign_definite_scalar = bool(
            scalar and self.M[0, 0].imag == 0 and profile.real_on_axis and profile.sign_definite
        )
        self.decay_class = "L1" if profile.integrable else "L1_plus_Linf0"

    def __repr__(self):
        return f"SeparablePotential(name={self.name!r}, M={self.M.tolist()}, profile={self.profile!r})"

    def matrix(self, x):
        g = np.asarray(self.profile(np.asarray(x)), dtype=complex)
        return g[..., None, None] * self.M

    def norm(self, x):
        return self._mnorm * np.abs(self.profile(np.asarray(x)))

    @property
    def is_zero(self):
        return self._mnorm == 0.0

    @property
    def breakpoints(self):
        return self.profile.breakpoints

    def scaled(self, factor: complex) -> "SeparablePotential":
        return SeparablePotential(factor * self.M, self.profile, name=self.name)

    def truncation(self, tol=QUAD_TOL, p=1.0, phi=0.0):
        if self.is_zero:
            return 1.0
        if not self.profile.integrable and p == 1.0:
            raise NonIntegrable(f"{self.name} is not in L1")
        scale = self._mnorm ** p

        def excess(L):
            return scale * self.profile.tail_bound(L, p, phi) - tol

        L = 1.0
        while excess(L) > 0:
            L *= 2.0
            if L > MAX_TRUNCATION:
                raise NonIntegrable(f"tail of {self.name} does not drop below {tol}")
        lo = L / 2.0
        if excess(lo) <= 0:
            return L
        return optimize.brentq(lambda t: excess(t) if math.isfinite(excess(t)) else 1.0, lo, L, xtol=1e-9 * L)

    def sup_radius(self, eps):
        if self._mnorm <= eps:
            return 0.0
        R = 1.0
        while self._mnorm * self.profile.sup_beyond(R) > eps:
            R *= 2.0
            if R > MAX_TRUNCATION:
                raise NonIntegrable(f"{self.name} does not decay below {eps}")
        return R


class TabulatedPotential(Potential):
    """Potential sampled on a grid, linearly interpolated, zero outside."""

    name = "matrix_table"

    def __init__(self, x, values):
        x = np.asarray(x, dtype=float)
        values = np.asarray(values, dtype=complex).reshape(-1, 2, 2)
        if x.ndim != 1 or len(x) != len(values) or len(x) < 2:
            raise DomainError("table needs matching x and 2x2 values, at least two rows")
        order = np.argsort(x)
        self.x = x[order]
        self.values = values[order]
        self.hermitian_on_axis = bool(np.allclose(self.values, np.conj(np.swapaxes(self.values, 1, 2))))

    def matrix(self, x):
        x = np.asarray(x)
        if np.iscomplexobj(x) and np.any(np.imag(x) != 0):
            raise AnalyticityViolation("tabulated potentials cannot be dilated")
        x = np.real(x)
        flat = self.values.reshape(len(self.x), 4)
        out = np.empty(x.shape + (4,), dtype=complex)
        for j in range(4):
            re = np.interp(x, self.x, flat[:, j].real, left=0.0, right=0.0)
            im = np.interp(x, self.x, flat[:, j].imag, left=0.0, right=0.0)
            out[..., j] = re + 1j * im
        return out.reshape(x.shape + (2, 2))

    def truncation(self, tol=QUAD_TOL, p=1.0, phi=0.0):
        self.check_dilation(phi)
        return float(max(abs(self.x[0]), abs(self.x[-1])))

    def sup_radius(self, eps):
        return self.truncation()

    @property
    def breakpoints(self):
        return tuple(self.x)

    @classmethod
    def from_csv(cls, path) -> "TabulatedPotential":
        """Read columns x, Re/Im of V11, V12, V21, V22 (header optional)."""
        rows = []
        with open(path, newline="") as fh:
            for row in csv.reader(fh):
                if not row or row[0].strip().startswith("#"):
                    continue
                try:
                    rows.append([float(v) for v in row])
                except ValueError:
                    if rows:
                        raise DomainError(f"non-numeric row in {path}: {row}")
                    continue  # header
        data = np.array(rows, dtype=float)
        if data.ndim != 2 or data.shape[1] != 9:
            raise DomainError(f"{path}: expected 9 columns, got shape {data.shape}")
        vals = data[:, 1::2] + 1j * data[:, 2::2]
        return cls(data[:, 0], vals.reshape(-1, 2, 2))


# --------------------------------------------------------------------------
# catalog

_I2 = np.eye(2)
_SIGMA3 = np.diag([1.0, -1.0])


def gaussian_scalar(a: float, b: float) -> SeparablePotential:
    """a exp(-b x^2) I."""
    return SeparablePotential(a * _I2, GaussianProfile(b), name="gaussian_scalar")


def imaginary_gaussian(a: float, b: float) -> SeparablePotential:
    """i a exp(-b x^2) I."""
    return SeparablePotential(1j * a * _I2, GaussianProfile(b), name="imaginary_gaussian")


def matrix_gaussian(matrix, b: float, center: float = 0.0) -> SeparablePotential:
    return SeparablePotential(matrix, GaussianProfile(b, center), name="matrix_gaussian")


def exponential_scalar(a: float, b: float = 1.0) -> SeparablePotential:
    """a exp(-b |x|) I."""
    return SeparablePotential(a * _I2, ExponentialProfile(b), name="exponential_scalar")


def power_scalar(a: float, gamma: float) -> SeparablePotential:
    """a (1 + x^2)^(-gamma/2) I; gamma <= 1 gives an L1 + L^inf_0 potential."""
    return SeparablePotential(a * _I2, PowerProfile(gamma), name="power_scalar")


def sinh_potential(mu: complex) -> SeparablePotential:
    """2 mu / sinh(2 mu x + i) diag(1, -1); massless eigenvalue at i mu."""
    return SeparablePotential(_SIGMA3, SinhProfile(complex(mu)), name="sinh")


def zero_potential() -> SeparablePotential:
    return SeparablePotential(np.zeros((2, 2)), GaussianProfile(1.0), name="zero")


def potential_from_dict(spec: dict, base_dir: str | Path | None = None) -> Potential:
    """Build a potential from its JSON description.

    Recognised ``type`` values: gaussian_scalar, sinh, imaginary_gaussian,
    matrix_table, matrix_gaussian, exponential_scalar, power_scalar, zero.
    An optional ``scale`` multiplies the result.
    """
    kind = spec.get("type")
    try:
        if kind == "gaussian_scalar":
            pot = gaussian_scalar(float(spec["a"]), float(spec["b"]))
        elif kind == "imaginary_gaussian":
            pot = imaginary_gaussian(float(spec["a"]), float(spec["b"]))
        elif kind == "sinh":
            pot = sinh_potential(complex(float(spec["mu_re"]), float(spec.get("mu_im", 0.0))))
        elif kind == "matrix_gaussian":
            m = np.array(spec["matrix"], dtype=float)
            if m.shape != (2, 2, 2):
                raise DomainError("matrix must be [[[re, im], [re, im]], [[re, im], [re, im]]]")
            pot = matrix_gaussian(m[..., 0] + 1j * m[..., 1], float(spec["b"]), float(spec.get("center", 0.0)))
        elif kind == "exponential_scalar":
            pot = exponential_scalar(float(spec["a"]), float(spec.get("b", 1.0)))
        elif kind == "power_scalar":
            pot = power_scalar(float(spec["a"]), float(spec["gamma"]))
        elif kind == "zero":
            pot = zero_potential()
        elif kind == "matrix_table":
            path = Path(spec["file"])
            if base_dir is not None and not path.is_absolute():
                path = Path(base_dir) / path
            pot = TabulatedPotential.from_csv(path)
        else:
            raise DomainError(f"unknown potential type {kind!r}")
    except KeyError as exc:
        raise DomainError(f"potential description {spec!r} is missing {exc}") from None
    if "scale" in spec:
        if not isinstance(pot, SeparablePotential):
            raise DomainError("scale is only supported for catalog potentials")
        pot = pot.scaled(float(spec["scale"]))
    return pot


# --------------------------------------------------------------------------
# norms

def _integrate(func, a, b, points=(), tol=QUAD_TOL):
    """Adaptive Gauss-Kronrod on [a, b], split at the interior points."""
    # width-4 panels out to |x| = 64 keep QUADPACK from missing narrow
    # features; beyond that the panels double, so long tails stay cheap
    grid = [4.0 * j for j in range(-16, 17)]
    r = 128.0
    while r < max(abs(a), abs(b)):
        grid += [r, -r]
        r *= 2.0
    edges = sorted({a, b, *[p for p in (*points, *grid) if a < p < b]})
    per = tol / max(1, len(edges) - 1)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(func, lo, hi, epsabs=per, epsrel=1e-12, limit=200)
        total += val
    return total


def _tabulated_integral(V: TabulatedPotential, p: float = 1.0) -> float:
    return float(np.trapezoid(V.norm(V.x) ** p, V.x))


def l1_norm(V: Potential, tol: float = QUAD_TOL) -> float:
    """Integral of the pointwise operator norm of V."""
    if V.is_zero:
        return 0.0
    if isinstance(V, TabulatedPotential):
        return _tabulated_integral(V)
    L = V.truncation(tol / 2)
    return _integrate(lambda x: float(V.norm(x)), -L, L, V.breakpoints, tol / 2)


def lp_norm(V: Potential, p: float, tol: float = QUAD_TOL) -> float:
    if not 1.0 < p < math.inf:
        raise DomainError("p must lie in (1, inf)")
    if V.is_zero:
        return 0.0
    if isinstance(V, TabulatedPotential):
        return _tabulated_integral(V, p) ** (1.0 / p)
    L = V.truncation(tol / 2, p=p)
    return _integrate(lambda x: float(V.norm(x)) ** p, -L, L, V.breakpoints, tol / 2) ** (1.0 / p)


def hs_l1_norm(V: Potential, tol: float = QUAD_TOL) -> float:
    """Integral of the pointwise Hilbert-Schmidt norm (an upper bound for l1_norm)."""
    if V.is_zero:
        return 0.0
    L = V.truncation(tol / 4) * 1.0
    return _integrate(lambda x: float(hsnorm2(V.matrix(x))), -L, L, V.breakpoints, tol / 2)


def diagonal_l1_norms(V: Potential, tol: float = QUAD_TOL) -> tuple[float, float]:
    """L1 norms of the diagonal entries V11 and V22."""
    if V.is_zero:
        return 0.0, 0.0
    if isinstance(V, TabulatedPotential):
        vals = np.abs(V.values)
        return float(np.trapezoid(vals[:, 0, 0], V.x)), float(np.trapezoid(vals[:, 1, 1], V.x))
    L = V.truncation(tol / 2)
    out = []
    for i in range(2):
        out.append(_integrate(lambda x, i=i: float(abs(V.matrix(x)[i, i])), -L, L, V.breakpoints, tol / 2))
    return out[0], out[1]


@dataclass(frozen=True)
class Factorization:
    """Pointwise V = B A with A = |V|^(1/2), B = U |V|^(1/2)."""

    V: Potential

    def A(self, x) -> np.ndarray:
        return polar_factors(self.V.matrix(x))[0]

    def B(self, x) -> np.ndarray:
        return polar_factors(self.V.matrix(x))[1]

    def both(self, x) -> tuple[np.ndarray, np.ndarray]:
        return polar_factors(self.V.matrix(x))


def polar_factorize(V: Potential) -> Factorization:
    return Factorization(V)


@dataclass(frozen=True)
class ClippedDecomposition:
    """V = W + X where X is V clipped to operator norm epsilon."""

    V: Potential
    epsilon: float
    l1_of_W: float

    def _factor(self, x):
        n = self.V.norm(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            f = np.where(n > self.epsilon, self.epsilon / n, 1.0)
        return f[..., None, None]

    def X(self, x) -> np.ndarray:
        return self.V.matrix(x) * self._factor(x)

    def W(self, x) -> np.ndarray:
        return self.V.matrix(x) * (1.0 - self._factor(x))


def clip_decompose(V: Potential, epsilon: float, tol: float = QUAD_TOL) -> ClippedDecomposition:
    """Split off the part of V above norm epsilon.

    ``l1_of_W`` is the integral of (||V|| - eps)_+, an upper bound for the
    optimal L1 constant over all decompositions with ||X|| <= eps.
    """
    if not epsilon > 0:
        raise DomainError("epsilon must be positive")
    if V.is_zero:
        return ClippedDecomposition(V, epsilon, 0.0)
    R = V.sup_radius(epsilon)
    if R == 0.0:
        return ClippedDecomposition(V, epsilon, 0.0)

    def excess(x):
        return float(V.norm(x)) - epsilon

    grid = np.linspace(-R, R, 4001)
    vals = V.norm(grid) - epsilon
    if np.all(vals <= 0):
        return ClippedDecomposition(V, epsilon, 0.0)
    kinks = list(V.breakpoints)
    for i in np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]:
        if vals[i] == 0.0:
            kinks.append(float(grid[i]))
        else:
            kinks.append(optimize.brentq(excess, grid[i], grid[i + 1], xtol=1e-14))
    value = _integrate(lambda x: max(excess(x), 0.0), -R, R, kinks, tol)
    return ClippedDecomposition(V, epsilon, value)


def f_v(V: Potential, s: float, tol: float = QUAD_TOL, ngrid: int = 81) -> float:
    """F_V(s) = sup_y  int ||V(x)|| exp(-s |x - y|) dx.

    The supremum is taken over a uniform y-grid covering the bulk of ||V||,
    then refined by a bounded Brent search around the best node.
    """
    if not s > 0:
        raise DomainError("F_V is defined for s > 0")
    if V.is_zero:
        return 0.0
    if V.decay_class == "L1":
        L = V.truncation(tol / 2)
        Y = V.truncation(1e-3 * l1_norm(V))
    else:
        L = math.inf
        Y = V.sup_radius(1e-2 * float(np.max(V.norm(np.linspace(-50, 50, 2001)))))
    Y = max(Y, 1e-6)
    vmax = float(np.max(V.norm(np.linspace(-Y, Y, 2001))))
    # beyond distance T from y the kernel weight cannot contribute tol
    T = max(math.log(max(4.0 * vmax / (s * tol), 1.0)) / s, 1.0)

    def inner(y):
        lo, hi = max(-L, y - T), min(L, y + T)
        if hi <= lo:
            return 0.0
        return _integrate(lambda x: float(V.norm(x)) * math.exp(-s * abs(x - y)), lo, hi,
                          (y, *V.breakpoints), tol / 2)

    ys = np.linspace(-Y, Y, ngrid)
    vals = np.array([inner(y) for y in ys])
    i = int(np.argmax(vals))
    lo, hi = ys[max(i - 1, 0)], ys[min(i + 1, ngrid - 1)]
    res = optimize.minimize_scalar(lambda y: -inner(y), bounds=(lo, hi), method="bounded",
                                   options={"xatol": 1e-10 * max(1.0, Y)})
    return float(max(vals[i], -res.fun))


def dilated_l1_norm(V: Potential, phi: float, tol: float = QUAD_TOL) -> float:
    """Integral over real r of ||V(e^{i phi} r)||."""
    V.check_dilation(phi)
    if V.is_zero:
        return 0.0
    if phi == 0.0:
        return l1_norm(V, tol)
    L = V.truncation(tol / 2, phi=phi)
    ray = complex(math.cos(phi), math.sin(phi))
    return _integrate(lambda r: float(V.norm(ray * r)), -L, L, V.breakpoints, tol / 2)


def v_theta(V: Potential, phi0: float, tol: float = QUAD_TOL) -> float:
    """Infimum of ||V(e^{i phi} .)||_1 over phi in [phi0, alpha).

    For a scalar sign-definite potential the dilated norm is minimal at
    phi = 0 and increasing in |phi|, so the infimum sits at phi0.  Otherwise
    log-convexity makes the bounded Brent search reliable.
    """
    if V.alpha is None:
        raise AnalyticityViolation(f"{V.name} is not dilation analytic")
    if not 0.0 <= phi0 < V.alpha:
        raise AnalyticityViolation(f"phi0 = {phi0} outside [0, {V.alpha})")
    here = dilated_l1_norm(V, phi0, tol)
    if V.sign_definite_scalar:
        return here
    upper = V.alpha * (1.0 - 1e-3)
    if upper <= phi0:
        return here
    res = optimize.minimize_scalar(lambda p: dilated_l1_norm(V, p, tol), bounds=(phi0, upper),
                                   method="bounded", options={"xatol": 1e-8})
    return float(min(here, res.fun, dilated_l1_norm(V, upper, tol)))

