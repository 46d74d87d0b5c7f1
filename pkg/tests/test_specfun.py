import math
import random
from fractions import Fraction

import pytest

from jacobiflow.gaussian import GaussianRational
from jacobiflow.specfun import binomial, charlier, jacobi_poly, laguerre, pochhammer


class TestPochhammer:
    def test_empty_product(self):
        assert pochhammer(3.7, 0) == 1
        assert pochhammer(0, 0) == 1

    def test_zero_base_vanishes(self):
        for k in range(1, 6):
            assert pochhammer(0, k) == 0

    def test_one_base_is_factorial(self):
        assert pochhammer(1, 5) == 120
        assert pochhammer(1, 10) == math.factorial(10)

    def test_exact_rational(self):
        assert pochhammer(Fraction(1, 2), 3) == Fraction(15, 8)

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)


class TestBinomial:
    def test_basic(self):
        assert binomial(4, 2) == 6
        assert binomial(40, 20) == 137846528820

    def test_out_of_range_vanishes(self):
        assert binomial(5, 7) == 0
        assert binomial(5, -1) == 0

    def test_large_exact(self):
        assert binomial(200, 100) == math.comb(200, 100)
        assert isinstance(binomial(200, 100), int)

    def test_negative_n_rejected(self):
        with pytest.raises(ValueError):
            binomial(-1, 0)


class TestLaguerre:
    def test_degree_zero(self):
        assert laguerre(0, 0.3, 2.5 + 1j) == 1

    def test_degree_one(self):
        alpha, z = 0.7, 0.4
        assert laguerre(1, alpha, z) == pytest.approx(alpha + 1 - z, rel=1e-15)

    def test_negative_integer_index_at_zero(self):
        for m in range(1, 11):
            assert laguerre(m, -m, 0) == 0

    def test_exact_mode(self):
        val = laguerre(3, Fraction(1), Fraction(1, 2))
        assert isinstance(val, Fraction)
        # L_3^{(1)}(x) = (24 - 36 x + 12 x^2 - x^3)/6
        x = Fraction(1, 2)
        assert val == (24 - 36 * x + 12 * x**2 - x**3) / 6

    def test_float_path_matches_exact(self):
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(0, 20)
            alpha = Fraction(rng.randint(-40, 40), 8)
            z = Fraction(rng.randint(-48, 48), 16)
            exact = laguerre(n, alpha, z)
            approx = laguerre(n, float(alpha), float(z))
            assert approx == pytest.approx(float(exact), rel=1e-13, abs=1e-300)

    def test_three_term_recurrence_exact(self):
        alpha = Fraction(3, 4)
        z = Fraction(5, 8)
        for n in range(2, 21):
            rec = (
                (2 * n - 1 + alpha - z) * laguerre(n - 1, alpha, z)
                - (n - 1 + alpha) * laguerre(n - 2, alpha, z)
            ) / n
            assert rec == laguerre(n, alpha, z)

    def test_large_argument_no_overflow(self):
        # the value is representable long before its largest inner term is
        val = laguerre(119, 5, 600.0)
        assert math.isfinite(val)


class TestCharlier:
    def test_degree_zero(self):
        assert charlier(0, 5, 0.3) == 1

    def test_zero_parameter_rejected(self):
        with pytest.raises(ValueError):
            charlier(2, 1, 0)

    def test_laguerre_link_float(self):
        n, x, a = 3, 5, 0.7
        lhs = (-a) ** n / math.factorial(n) * charlier(n, x, a)
        assert lhs == pytest.approx(laguerre(n, x - n, a), rel=1e-12)

    @pytest.mark.parametrize("x", [-10, -4, 0, 3, 10])
    def test_laguerre_link_exact(self, x):
        a = Fraction(7, 10)
        for n in range(16):
            lhs = (-a) ** n / math.factorial(n) * charlier(n, x, a)
            assert lhs == laguerre(n, x - n, a)

    @pytest.mark.parametrize("x,u", [(-5, 0.3), (-2, 0.1), (0, -0.2), (5, 0.25)])
    def test_generating_function_numeric(self, x, u):
        a = 1.3
        lhs = sum(
            charlier(n, x, a) * (a * u) ** n / math.factorial(n) for n in range(61)
        )
        assert lhs == pytest.approx(math.exp(a * u) * (1 - u) ** x, abs=1e-10)

    def test_generating_function_exact_coefficients(self):
        # coefficient of u^n in e^{a u} (1-u)^x equals C_n(x, a) a^n / n!
        a = Fraction(-3, 1)
        for x in (-3, -1, 2, 6):
            for n in range(16):
                lhs = charlier(n, x, a) * a**n / math.factorial(n)
                rhs = Fraction(0)
                for j in range(n + 1):
                    gbin = Fraction(math.prod(x - i for i in range(j)), math.factorial(j))
                    rhs += Fraction(a ** (n - j), math.factorial(n - j)) * (-1) ** j * gbin
                assert lhs == rhs


class TestJacobi:
    def test_degree_zero(self):
        assert jacobi_poly(0, 1.5, -0.5, 0.7 + 0.1j) == 1

    def test_value_at_one(self):
        for n in range(8):
            want = pochhammer(Fraction(5, 2) + 1, n) / math.factorial(n)
            assert jacobi_poly(n, Fraction(5, 2), Fraction(1, 3), 1.0) == pytest.approx(
                float(want), rel=1e-14
            )

    def test_symmetry(self):
        n, a, b, z = 4, 2, 0, 0.3 + 0.2j
        lhs = jacobi_poly(n, a, b, z)
        rhs = (-1) ** n * jacobi_poly(n, b, a, -z)
        assert abs(lhs - rhs) < 1e-12

    def test_exact_gaussian_rational(self):
        z = GaussianRational(Fraction(3, 10), Fraction(1, 5))
        for n in (2, 5, 9):
            exact = complex(jacobi_poly(n, 0, 4, z))
            approx = jacobi_poly(n, 0, 4, complex(z))
            assert abs(approx - exact) / abs(exact) < 1e-12

    def test_exact_rational_argument(self):
        val = jacobi_poly(2, 0, 2, Fraction(1, 3))
        assert isinstance(val, Fraction)
        # hand expansion: sum_m (-2)_m (5)_m / ((1)_m m!) h^m = 1 - 10 h + 15 h^2
        h = (1 - Fraction(1, 3)) / 2
        assert val == 1 - 10 * h + 15 * h**2


class TestGaussianRational:
    def test_field_operations(self):
        a = GaussianRational(Fraction(1, 2), Fraction(1, 3))
        b = GaussianRational(Fraction(-2, 5), Fraction(1, 7))
        assert complex((a + b) * (a - b)) == pytest.approx(complex(a) ** 2 - complex(b) ** 2)
        assert (a / b) * b == a

    def test_from_complex_is_exact(self):
        z = 0.1 + 0.3j
        g = GaussianRational.from_complex(z)
        assert complex(g) == z
        assert g.re == Fraction(0.1)

    def test_powers(self):
        g = GaussianRational(1, 1)
        assert g**2 == GaussianRational(0, 2)
        assert g**0 == GaussianRational(1)
