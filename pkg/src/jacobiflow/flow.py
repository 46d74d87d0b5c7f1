"""Taylor coefficients of the inverted spectral flow of the free Jacobi
process, plus the binomial-transform pair and the moment expansion.

The closed forms are nested alternating binomial sums.  Summed in binary64
they cancel catastrophically (twelve orders of magnitude are lost already at
n = 16), so the engine keeps every factor exact: the polynomials in eps are
rational, eps = kappa**2 is the exact dyadic square of the input, Laguerre
values are evaluated in rationals at the exact dyadic argument 2*k*t, and
e^{-k t} enters as the k-th power of the once-rounded dyadic e^{-t}.  Each
public coefficient is rounded to binary64 exactly once, at the very end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .powerseries import TruncatedSeries, series_derive
from .specfun import _exact_div, binomial, laguerre, pochhammer


@dataclass(frozen=True)
class FlowParams:
    """Trace asymmetry kappa = 2 tau(P) - 1 and time t; eps = kappa**2.

    ``kappa`` may be a Fraction for exact workflows; ``epsilon`` is always
    kappa**2 computed in kappa's own arithmetic.
    """

    kappa: float
    t: float
    epsilon: float = field(init=False)

    def __post_init__(self):
        if not -1 < self.kappa < 1:
            raise ValueError(f"kappa must lie in (-1, 1), got {self.kappa}")
        if not self.t > 0:
            raise ValueError(f"t must be positive, got {self.t}")
        object.__setattr__(self, "epsilon", self.kappa * self.kappa)


@dataclass(frozen=True)
class RationalPoly:
    """Polynomial in eps with exact Fraction coefficients (low degree first)."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs:
            cs = (Fraction(0),)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, eps):
        acc = self.coeffs[-1] * (0 * eps + 1)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * eps + c
        return acc


@lru_cache(maxsize=None)
def pnm_poly(n: int, m: int) -> RationalPoly:
    """Exact coefficient polynomial of the (z-1)^m term in the binomial
    expansion of (1 - eps/z**2)**n about z = 1.

    The eps**k coefficient is (-1)**(m+k) C(n, k) (2k)_m / m!.
    """
    if n < 0 or m < 0:
        raise ValueError("pnm_poly needs n, m >= 0")
    fact_m = math.factorial(m)
    coeffs = [
        Fraction((-1) ** (m + k) * binomial(n, k) * pochhammer(2 * k, m), fact_m)
        for k in range(n + 1)
    ]
    return RationalPoly(tuple(coeffs))


def invrel_weight(n: int, k: int) -> Fraction:
    """Inverse-transform weight (2n / (n+k)) C(n+k, n-k)."""
    return Fraction(2 * n, n + k) * binomial(n + k, n - k)


def invrel_weight_split(n: int, k: int) -> int:
    """The same weight written as C(n+k, n-k) + C(n+k-1, n-k-1)."""
    return binomial(n + k, n - k) + binomial(n + k - 1, n - k - 1)


class _CoeffEngine:
    """Exact accumulation of the flow coefficients for one (kappa, t)."""

    def __init__(self, params: FlowParams):
        self.t = float(params.t)
        self.eps = Fraction(params.kappa) ** 2
        self.t_exact = Fraction(self.t)
        self.decay = Fraction(math.exp(-self.t))  # e^{-t}, rounded once
        self._pnm_values: dict = {}
        self._laguerre_values: dict = {}
        self._a: dict = {}
        self._s: dict = {}

    def pnm_value(self, n: int, m: int) -> Fraction:
        key = (n, m)
        if key not in self._pnm_values:
            self._pnm_values[key] = pnm_poly(n, m)(self.eps)
        return self._pnm_values[key]

    def laguerre_value(self, k: int, m: int) -> Fraction:
        """L_{k-m-1}^{(m+1)}(2 k t), exact at the dyadic t."""
        key = (k, m)
        if key not in self._laguerre_values:
            self._laguerre_values[key] = laguerre(k - m - 1, m + 1, 2 * k * self.t_exact)
        return self._laguerre_values[key]

    def a_exact(self, n: int) -> Fraction:
        if n not in self._a:
            total = Fraction(0)
            for k in range(1, n + 1):
                inner = Fraction(0)
                for m in range(k):
                    inner += self.laguerre_value(k, m) * 2**m * self.pnm_value(n, m)
                total += binomial(2 * n, n - k) * self.decay**k * inner
            self._a[n] = Fraction(2, 4**n * n) * total
        return self._a[n]

    def b_exact(self, n: int) -> Fraction:
        return n * 4**n * self.a_exact(n)

    def s_exact(self, n: int) -> Fraction:
        if n not in self._s:
            total = Fraction(0)
            for k in range(1, n + 1):
                sign = -1 if (k + n) % 2 else 1
                total += sign * invrel_weight_split(n, k) * self.b_exact(k)
            self._s[n] = total
        return self._s[n]


@lru_cache(maxsize=16)
def _engine(params: FlowParams) -> _CoeffEngine:
    return _CoeffEngine(params)


def _check_index(n: int):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"coefficient index must be a positive integer, got {n}")


def a_coeff(params: FlowParams, n: int) -> float:
    """Taylor coefficient a_n of the local inverse of the pre-inversion flow
    map about its critical value, by the nested Laguerre/binomial sum."""
    _check_index(n)
    return float(_engine(params).a_exact(n))


def b_coeff(params: FlowParams, n: int) -> float:
    """Rescaled coefficient b_n = n 4**n a_n."""
    _check_index(n)
    return n * 4**n * a_coeff(params, n)


def s_coeff(params: FlowParams, n: int) -> float:
    """Alternating binomial-weighted combination S_n of b_1..b_n; equals the
    n-th coefficient of z d/dz of the inverted-flow series."""
    _check_index(n)
    return float(_engine(params).s_exact(n))


def phi_inv_coeffs(params: FlowParams, order: int) -> TruncatedSeries:
    """Series of the inverted conformal flow about the origin.

    Constant term 1; the z**n coefficient is S_n / n.  At kappa = 0 this
    reduces exactly to the Herglotz transform of the time-2t spectral
    distribution of free unitary Brownian motion.
    """
    _check_index(order)
    eng = _engine(params)
    coeffs = [1.0] + [float(eng.s_exact(n) / n) for n in range(1, order + 1)]
    return TruncatedSeries(0.0, coeffs)


def m_series_coeffs(params: FlowParams, order: int) -> TruncatedSeries:
    """Derivative series M = z d/dz applied to the inverted-flow series.

    This is the authoritative definition of M; :func:`s_series_coeffs` gives
    the same series assembled directly from S_n for cross-checking.
    """
    if order < 2:
        raise ValueError(f"m_series_coeffs needs order >= 2, got {order}")
    inv = phi_inv_coeffs(params, order)
    d = series_derive(inv)
    return TruncatedSeries(0.0, [0.0] + list(d.coeffs))


def s_series_coeffs(params: FlowParams, order: int) -> TruncatedSeries:
    """The raw sum-of-S_n form of the derivative series."""
    _check_index(order)
    return TruncatedSeries(0.0, [0.0] + [s_coeff(params, n) for n in range(1, order + 1)])


def binom_transform(seq):
    """b_n = sum_{k<=n} C(2n, n-k) c_k, exact on rational input."""
    seq = list(seq)
    return [
        sum((binomial(2 * n, n - k) * seq[k] for k in range(n + 1)), start=seq[0] * 0)
        for n in range(len(seq))
    ]


def inv_binom_transform(seq):
    """Inverse of :func:`binom_transform`:
    c_0 = b_0, c_n = sum_k (-1)**(k+n) (2n/(n+k)) C(n+k, n-k) b_k."""
    seq = list(seq)
    if not seq:
        return []
    out = [seq[0]]
    for n in range(1, len(seq)):
        acc = seq[0] * 0
        for k in range(n + 1):
            sign = -1 if (k + n) % 2 else 1
            acc = acc + sign * invrel_weight_split(n, k) * seq[k]
        out.append(acc)
    return out


def jacobi_moments(unitary_moments, params: FlowParams, order: int):
    """Moments of the free Jacobi process from the moments of the unitary one.

    ``unitary_moments[k-1]`` holds tau(U^k).  Exact when the moments and
    kappa are Fractions.
    """
    u = list(unitary_moments)
    if len(u) < order:
        raise ValueError(f"need at least {order} unitary moments, got {len(u)}")
    out = []
    for n in range(1, order + 1):
        tail = sum(
            (binomial(2 * n, n - k) * u[k - 1] for k in range(1, n + 1)),
            start=u[0] * 0,
        )
        out.append(
            _exact_div(binomial(2 * n, n), 2 ** (2 * n + 1))
            + _exact_div(params.kappa, 2)
            + _exact_div(1, 4**n) * tail
        )
    return out
