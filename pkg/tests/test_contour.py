from fractions import Fraction

import numpy as np
import pytest

from jacobiflow.contour import (
    ContourSpec,
    NoAdmissibleContourError,
    admissible_contour,
    circle_quadrature,
    contour_nodes,
    geom_ratio_check,
    jacobi_gen_check,
    laguerre_gen_check,
    m_integral,
    m_integral_detailed,
    nonvanishing_check,
    pkm_residue,
)
from jacobiflow.flow import FlowParams, m_series_coeffs, pnm_poly
from jacobiflow.maps import DomainError, herglotz_k, m_zero, y_func


class TestContourSpec:
    def test_validation(self):
        with pytest.raises(ValueError):
            ContourSpec(0.5 + 0j, -0.1)
        with pytest.raises(ValueError):
            ContourSpec(0.5 + 0j, 0.1, samples=48)  # not a power of two
        with pytest.raises(ValueError):
            ContourSpec(0.5 + 0j, 0.1, samples=8)  # too few

    def test_nodes(self):
        spec = ContourSpec(1j, 0.25, 16)
        w = contour_nodes(spec)
        assert w.shape == (16,)
        assert np.allclose(np.abs(w - 1j), 0.25)


class TestCircleQuadrature:
    def test_simple_pole(self):
        spec = ContourSpec(0.4 + 0j, 0.2, 64)
        assert circle_quadrature(lambda w: 1 / (w - 0.4), spec) == pytest.approx(1, abs=1e-13)

    def test_no_residue(self):
        spec = ContourSpec(0.4 + 0j, 0.2, 64)
        assert abs(circle_quadrature(lambda w: np.ones_like(w), spec)) < 1e-13

    def test_double_pole(self):
        spec = ContourSpec(0.4 + 0j, 0.2, 64)
        assert abs(circle_quadrature(lambda w: (w - 0.4) ** -2.0, spec)) < 1e-13

    def test_geometric_convergence(self):
        # trapezoid residual decays at least tenfold per doubling until floor
        spec = ContourSpec(0j, 1.0, 16)
        pole = 0.62

        def raw(n):
            w = contour_nodes(spec, n)
            return complex(np.sum(np.exp(w) / (w - pole) * w) / n)

        exact = complex(np.exp(pole))
        errs = [abs(raw(n) - exact) for n in (16, 32, 64, 128)]
        for a, b in zip(errs, errs[1:]):
            assert b < a / 10 or b < 1e-13

    def test_nonfinite_integrand_rejected(self):
        spec = ContourSpec(0j, 1.0, 16)
        with pytest.raises(ValueError):
            circle_quadrature(lambda w: w * np.nan, spec)


class TestPkmResidue:
    def test_m_zero_gives_power(self):
        p = FlowParams(0.5, 1.0)
        spec = ContourSpec(0.5 + 0j, 0.2, 64)
        for k in (1, 3, 7):
            want = (1 - 0.25) ** k
            assert pkm_residue(k, 0, p, spec) == pytest.approx(want, abs=1e-12)

    def test_hand_case(self):
        p = FlowParams(0.5, 1.0)
        spec = ContourSpec(0.5 + 0j, 0.2, 64)
        assert pkm_residue(1, 1, p, spec) == pytest.approx(-0.5, abs=1e-12)  # -2 eps

    @pytest.mark.parametrize("kappa", [0.3, 0.6, 0.9])
    def test_matches_exact_polynomials(self, kappa):
        p = FlowParams(kappa, 1.0)
        spec = ContourSpec(complex(kappa), kappa / 2, 64)
        eps = Fraction(kappa) ** 2
        for k in (1, 5, 12):
            for m in (0, 3, 8):
                want = (-1) ** m * float(pnm_poly(k, m)(eps))
                assert pkm_residue(k, m, p, spec) == pytest.approx(want, abs=1e-10)

    def test_validation(self):
        p = FlowParams(0.5, 1.0)
        with pytest.raises(ValueError):
            pkm_residue(1, 0, FlowParams(0.0, 1.0), ContourSpec(0j, 0.1))
        with pytest.raises(ValueError):
            pkm_residue(1, 0, p, ContourSpec(0.4 + 0j, 0.1))  # center mismatch
        with pytest.raises(ValueError):
            pkm_residue(1, 0, p, ContourSpec(0.5 + 0j, 0.6))  # origin enclosed


class TestAdmissibleContour:
    def test_origin_is_easy(self):
        spec = admissible_contour(FlowParams(0.5, 1.0), 0.0)
        assert 0 < spec.radius < 0.5

    def test_conditions_hold_on_returned_circle(self):
        p = FlowParams(0.5, 1.0)
        z = 0.02
        spec = admissible_contour(p, z)
        w = contour_nodes(spec)
        u = 1 - 2 * w * w
        assert np.all((u.real / 1.25) ** 2 + (u.imag / 0.75) ** 2 <= 1)
        y = y_func(z, w)
        assert np.all(np.abs(y) < 1)
        K = herglotz_k(1.0, y)
        assert np.min(np.abs(w * K - 0.5)) > 1e-8
        assert np.max(np.abs(w * (1 - K) / (w - 0.5))) < 1
        assert spec.radius < 0.5

    def test_symmetric_center_rejected(self):
        with pytest.raises(ValueError):
            admissible_contour(FlowParams(0.0, 1.0), 0.1)

    def test_obstruction_surfaces(self):
        with pytest.raises(NoAdmissibleContourError):
            admissible_contour(FlowParams(0.9, 0.5), 0.2)


class TestMIntegral:
    def test_forms_agree(self):
        p = FlowParams(0.5, 1.0)
        z = 0.03
        cor = m_integral(p, z, "corollary")
        prop = m_integral(p, z, "proposition")
        assert abs(cor - prop) < 1e-9

    def test_matches_series(self):
        p = FlowParams(0.5, 1.0)
        ser = m_series_coeffs(p, 16)
        for z in (0.03, 0.02 + 0.01j):
            val = m_integral(p, z)
            assert abs(val - ser(z)) / abs(ser(z)) < 1e-6

    def test_vanishes_at_origin(self):
        assert abs(m_integral(FlowParams(0.5, 1.0), 0.0)) < 1e-12

    def test_symmetric_limit(self):
        # corollary form at small kappa approaches the closed symmetric form
        t, z = 1.0, 0.05
        val = m_integral(FlowParams(1e-3, t), z)
        assert val == pytest.approx(m_zero(t, z), rel=1e-4)

    def test_diagnostics(self):
        res = m_integral_detailed(FlowParams(0.5, 1.0), 0.03)
        assert res.min_kernel_denominator > 1e-6
        assert res.geom_ratio_max < 1
        assert res.samples >= res.contour.samples
        assert res.quadrature_delta < 1e-12

    def test_validation(self):
        with pytest.raises(ValueError):
            m_integral(FlowParams(0.0, 1.0), 0.03)
        with pytest.raises(ValueError):
            m_integral(FlowParams(0.5, 1.0), 0.03, form="other")
        with pytest.raises(DomainError):
            m_integral(FlowParams(0.5, 1.0), 1.5)


class TestGeneratingChecks:
    def test_laguerre_base_case(self):
        entry = laguerre_gen_check(0, 1.0, 0.2, n_terms=80, tol=1e-10)
        assert entry.passed

    def test_laguerre_zero_argument(self):
        entry = laguerre_gen_check(3, 1.0, 0.0, n_terms=40, tol=1e-14)
        assert entry.passed and entry.residual < 1e-14

    def test_laguerre_shifted_index(self):
        entry = laguerre_gen_check(2, 0.8, 0.3, n_terms=120, tol=1e-8)
        assert entry.passed

    def test_laguerre_domain(self):
        with pytest.raises(DomainError):
            laguerre_gen_check(0, 1.0, 0.97)

    def test_jacobi_real_argument(self):
        entry = jacobi_gen_check(1, 0.2, 0.6, n_terms=100, tol=1e-9)
        assert entry.passed

    def test_jacobi_complex_argument(self):
        entry = jacobi_gen_check(2, 0.15, 0.5 + 0.1j, n_terms=150, tol=1e-8)
        assert entry.passed

    def test_jacobi_zero_point(self):
        entry = jacobi_gen_check(2, 0.0, 0.4, n_terms=20, tol=1e-15)
        assert entry.passed

    def test_jacobi_domain(self):
        with pytest.raises(DomainError):
            jacobi_gen_check(1, 0.5, 0.5)


class TestKernelChecks:
    def test_nonvanishing_at_origin(self):
        p = FlowParams(0.5, 1.0)
        spec = admissible_contour(p, 0.0)
        entry = nonvanishing_check(p, 0.0, spec)
        assert entry.passed
        # K = 1 on the whole circle, so the denominator is exactly 2
        assert float(dict(entry.context)["min_abs"]) == pytest.approx(2.0, abs=1e-12)

    @pytest.mark.parametrize("t", [1.0, 3.0])
    def test_nonvanishing_along_admissible(self, t):
        p = FlowParams(0.5, t)
        spec = admissible_contour(p, 0.03)
        assert nonvanishing_check(p, 0.03, spec).passed

    def test_geometric_ratio(self):
        p = FlowParams(0.5, 1.0)
        spec = admissible_contour(p, 0.03)
        entry = geom_ratio_check(p, 0.03, spec)
        assert entry.passed
