import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diracspec.errors import AnalyticityViolation, DomainError
from diracspec.potentials import (
    QUAD_TOL,
    TabulatedPotential,
    clip_decompose,
    dilated_l1_norm,
    exponential_scalar,
    f_v,
    gaussian_scalar,
    hs_l1_norm,
    imaginary_gaussian,
    l1_norm,
    lp_norm,
    matrix_gaussian,
    opnorm2,
    polar_factorize,
    polar_factors,
    potential_from_dict,
    power_scalar,
    sinh_potential,
    v_theta,
    zero_potential,
)


def random_matrices(rng, n):
    return rng.normal(size=(n, 2, 2)) + 1j * rng.normal(size=(n, 2, 2))


class TestNorms:
    def test_gaussian_l1(self):
        assert l1_norm(gaussian_scalar(0.3, 1.0)) == pytest.approx(0.3 * math.sqrt(math.pi), abs=QUAD_TOL)

    def test_zero(self):
        assert l1_norm(zero_potential()) == 0.0
        assert lp_norm(zero_potential(), 2.0) == 0.0

    def test_sinh_l1(self):
        assert l1_norm(sinh_potential(1.0)) == pytest.approx(3.4184, abs=1e-3)

    def test_sinh_l1_scale_invariant(self):
        # substitution x -> mu x leaves the integral unchanged
        assert l1_norm(sinh_potential(2.5)) == pytest.approx(l1_norm(sinh_potential(1.0)), rel=1e-10)

    def test_exponential_l1(self):
        assert l1_norm(exponential_scalar(0.4)) == pytest.approx(0.8, abs=QUAD_TOL)

    def test_gaussian_l2(self):
        assert lp_norm(gaussian_scalar(1.0, 1.0), 2.0) == pytest.approx((math.pi / 2) ** 0.25, abs=QUAD_TOL)

    @pytest.mark.parametrize("p", [1.5, 2.0, 4.0])
    @pytest.mark.parametrize("lam", [0.5, 3.0])
    def test_lp_scaling(self, p, lam):
        # lam V(lam x) has Lp norm lam^(1 - 1/p) ||V||_p
        base = lp_norm(gaussian_scalar(0.7, 1.3), p)
        scaled = lp_norm(gaussian_scalar(0.7 * lam, 1.3 * lam * lam), p)
        assert scaled == pytest.approx(lam ** (1 - 1 / p) * base, abs=10 * QUAD_TOL)

    def test_lp_domain(self):
        with pytest.raises(DomainError):
            lp_norm(gaussian_scalar(1.0, 1.0), 1.0)

    def test_operator_norm_closed_form(self):
        rng = np.random.default_rng(3)
        a = random_matrices(rng, 500)
        assert np.allclose(opnorm2(a), np.linalg.norm(a, ord=2, axis=(1, 2)), rtol=1e-12)

    def test_l1_below_hs_integral(self):
        rng = np.random.default_rng(11)
        for M in random_matrices(rng, 10):
            V = matrix_gaussian(M, 0.8)
            assert l1_norm(V) <= hs_l1_norm(V) * (1 + 1e-12)

    def test_non_integrable_power(self):
        V = power_scalar(0.5, 0.8)
        assert V.decay_class != "L1"


class TestPolarFactors:
    def test_hermitian_positive(self):
        rng = np.random.default_rng(0)
        g = rng.normal(size=(50, 2, 2)) + 1j * rng.normal(size=(50, 2, 2))
        v = g @ np.conj(np.swapaxes(g, 1, 2))
        a, b = polar_factors(v)
        assert np.allclose(a, b, atol=1e-12)
        assert np.allclose(a @ a, v, atol=1e-12)

    def test_imaginary_scalar(self):
        g = np.linspace(0.01, 2.0, 20)
        v = 1j * g[:, None, None] * np.eye(2)
        a, b = polar_factors(v)
        assert np.allclose(a, np.sqrt(g)[:, None, None] * np.eye(2), atol=1e-14)
        assert np.allclose(b, 1j * a, atol=1e-14)

    def test_reconstruction_non_normal(self):
        rng = np.random.default_rng(5)
        v = random_matrices(rng, 1000)
        a, b = polar_factors(v)
        assert np.max(np.abs(b @ a - v)) <= 1e-12 * max(1.0, np.max(np.abs(v)))

    def test_rank_deficient(self):
        v = np.array([[[0, 1], [0, 0]], [[0, 0], [0, 0]]], dtype=complex)
        a, b = polar_factors(v)
        assert np.allclose(b @ a, v, atol=1e-15)

    def test_factorization_object(self):
        V = sinh_potential(1.0)
        x = np.linspace(-3, 3, 41)
        A, B = polar_factorize(V).both(x)
        assert np.allclose(B @ A, V.matrix(x), atol=1e-12)


class TestClipDecompose:
    def test_exponential(self):
        dec = clip_decompose(exponential_scalar(1.0), 0.5)
        assert dec.l1_of_W == pytest.approx(1 - math.log(2), abs=1e-10)

    def test_eps_above_sup(self):
        dec = clip_decompose(exponential_scalar(1.0), 1.0)
        assert dec.l1_of_W == 0.0
        assert np.all(dec.W(np.linspace(-5, 5, 101)) == 0)

    def test_eps_to_zero(self):
        V = gaussian_scalar(0.3, 1.0)
        assert clip_decompose(V, 1e-6).l1_of_W == pytest.approx(l1_norm(V), abs=1e-4)

    def test_exact_split_and_clip(self):
        V = matrix_gaussian(np.array([[0.5, 1j], [0.2, -0.3]]), 0.7)
        dec = clip_decompose(V, 0.4)
        x = np.linspace(-4, 4, 1001)
        assert np.max(np.abs(dec.W(x) + dec.X(x) - V.matrix(x))) <= 1e-13
        assert np.max(opnorm2(dec.X(x))) <= 0.4 * (1 + 1e-12)

    def test_bad_epsilon(self):
        with pytest.raises(DomainError):
            clip_decompose(gaussian_scalar(1.0, 1.0), 0.0)


class TestFV:
    def test_exponential_closed_form(self):
        assert f_v(exponential_scalar(1.0), 1.0) == pytest.approx(1.0, abs=1e-9)
        for s in (0.3, 2.0, 5.0):
            assert f_v(exponential_scalar(0.4), s) == pytest.approx(0.8 / (1 + s), abs=1e-9)

    def test_decay_in_s(self):
        V = gaussian_scalar(0.3, 1.0)
        assert f_v(V, 1e3) < f_v(V, 1.0)

    def test_bounded_by_l1(self):
        for V in (gaussian_scalar(0.3, 1.0), sinh_potential(1.0), exponential_scalar(0.4, 2.0)):
            assert f_v(V, 0.5) <= l1_norm(V) * (1 + 1e-9)

    def test_monotone_convex(self):
        V = matrix_gaussian(np.array([[0.3, 0.1], [0.0, -0.2]]), 1.0, center=0.5)
        s = np.linspace(0.2, 3.0, 9)
        vals = np.array([f_v(V, si) for si in s])
        assert np.all(np.diff(vals) < 1e-12)
        assert np.all(vals[:-2] + vals[2:] - 2 * vals[1:-1] >= -1e-9)

    def test_zero(self):
        assert f_v(zero_potential(), 1.0) == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            f_v(gaussian_scalar(0.3, 1.0), 0.0)


class TestDilation:
    def test_gaussian_closed_form(self):
        V = gaussian_scalar(0.3, 1.0)
        for phi in (0.1, 0.4, 0.7):
            expected = 0.3 * math.sqrt(math.pi) / math.sqrt(math.cos(2 * phi))
            assert dilated_l1_norm(V, phi) == pytest.approx(expected, rel=1e-10)

    def test_gaussian_pi_over_six(self):
        V = gaussian_scalar(0.3, 1.0)
        assert dilated_l1_norm(V, math.pi / 6) == pytest.approx(0.3 * math.sqrt(2 * math.pi), abs=1e-8)

    def test_phi_zero(self):
        V = gaussian_scalar(0.3, 1.0)
        assert dilated_l1_norm(V, 0.0) == l1_norm(V)

    def test_log_convex(self):
        for V in (gaussian_scalar(0.3, 1.0), sinh_potential(1.0)):
            phis = np.linspace(-0.4, 0.4, 9)
            logs = np.log([dilated_l1_norm(V, p) for p in phis])
            assert np.all(logs[:-2] + logs[2:] - 2 * logs[1:-1] >= -1e-9)

    def test_outside_sector(self):
        with pytest.raises(AnalyticityViolation):
            dilated_l1_norm(gaussian_scalar(0.3, 1.0), math.pi / 4)
        with pytest.raises(AnalyticityViolation):
            dilated_l1_norm(TabulatedPotential([0, 1], np.zeros((2, 2, 2))), 0.1)

    def test_v_theta_sign_definite(self):
        V = gaussian_scalar(0.3, 1.0)
        assert v_theta(V, math.pi / 6) == pytest.approx(dilated_l1_norm(V, math.pi / 6), rel=1e-14)
        assert v_theta(V, 0.0) == pytest.approx(l1_norm(V), rel=1e-14)

    def test_v_theta_general(self):
        V = matrix_gaussian(np.diag([0.3, -0.2]), 1.0)
        assert v_theta(V, 0.2) <= dilated_l1_norm(V, 0.2) * (1 + 1e-12)

    def test_v_theta_needs_analyticity(self):
        with pytest.raises(AnalyticityViolation):
            v_theta(power_scalar(0.5, 2.0), 0.0)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(0.05, 0.5), st.floats(0.3, 3.0), st.floats(0.0, 0.7))
    def test_gaussian_sweep(self, a, b, phi):
        V = gaussian_scalar(a, b)
        expected = a * math.sqrt(math.pi / (b * math.cos(2 * phi)))
        assert dilated_l1_norm(V, phi) == pytest.approx(expected, rel=1e-9)


class TestParsing:
    def test_catalog(self):
        V = potential_from_dict({"type": "gaussian_scalar", "a": 0.3, "b": 1.0})
        assert l1_norm(V) == pytest.approx(0.3 * math.sqrt(math.pi), abs=QUAD_TOL)
        V = potential_from_dict({"type": "sinh", "mu_re": 1.0})
        assert V.name == "sinh"
        V = potential_from_dict({"type": "imaginary_gaussian", "a": 0.5, "b": 1.0, "scale": 2.0})
        assert np.allclose(V.matrix(0.0), 1j * np.eye(2))
        assert imaginary_gaussian(1.0, 1.0).hermitian_on_axis is False

    def test_unknown_and_missing(self):
        with pytest.raises(DomainError):
            potential_from_dict({"type": "nope"})
        with pytest.raises(DomainError):
            potential_from_dict({"type": "gaussian_scalar", "a": 1.0})

    def test_table(self, tmp_path):
        x = np.linspace(-1, 1, 201)
        g = 1 - np.abs(x)
        path = tmp_path / "tri.csv"
        with path.open("w") as fh:
            fh.write("x,re11,im11,re12,im12,re21,im21,re22,im22\n")
            for xi, gi in zip(x, g):
                fh.write(f"{xi},{gi},0,0,0,0,0,{gi},0\n")
        V = potential_from_dict({"type": "matrix_table", "file": "tri.csv"}, base_dir=tmp_path)
        assert l1_norm(V) == pytest.approx(1.0, abs=1e-12)
        assert V.hermitian_on_axis
