"""Terminating hypergeometric evaluators: Pochhammer, binomial, Laguerre,
Charlier and Jacobi polynomials.

All sums are evaluated term by term, left to right, with the integer and
rational inner factors kept exact; conversion to binary64 happens only when
an input is itself a float.  Passing Fraction (or GaussianRational) arguments
therefore returns exact values, which is the ground truth the floating path
is tested against.
"""

from __future__ import annotations

import math
from fractions import Fraction


def _exact_div(num, den):
    """num / den, as a Fraction whenever both sides are exact integers."""
    if isinstance(num, int) and isinstance(den, int):
        return Fraction(num, den)
    return num / den


def _exactify(*values):
    """Replace float arguments by their exact dyadic Fractions.

    Returns the converted values plus a flag telling the caller to round the
    final result back to binary64.  Summing in exact arithmetic removes both
    the cancellation of alternating terms and the overflow of intermediate
    powers (the end value is representable long before its largest term is).
    Complex arguments pass through untouched.
    """
    converted = []
    any_float = False
    for v in values:
        if isinstance(v, float):
            converted.append(Fraction(v))
            any_float = True
        else:
            converted.append(v)
    return (*converted, any_float)


def pochhammer(a, k: int):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.

    The value is exact for int or Fraction ``a``.  Note (0)_k vanishes for
    every k >= 1 because the first factor is zero.
    """
    if k < 0:
        raise ValueError(f"pochhammer needs k >= 0, got {k}")
    out = a * 0 + 1
    for i in range(k):
        out = out * (a + i)
    return out


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient; zero whenever k < 0 or k > n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def laguerre(n: int, alpha, z):
    """Laguerre polynomial L_n^(alpha)(z) by its terminating sum.

    Works for any real (or Fraction) index alpha, including the negative
    integer indices where L_m^(-m)(0) = 0 for m >= 1, and for complex z.
    Real arguments are summed exactly and rounded once at the end.
    """
    if n < 0:
        raise ValueError(f"laguerre needs n >= 0, got {n}")
    alpha, z, round_back = _exactify(alpha, z)
    total = z * 0
    for j in range(n + 1):
        c = (-1) ** j * binomial(n, j)  # (-n)_j / j!
        total = total + c * pochhammer(alpha + j + 1, n - j) * z**j
    out = _exact_div(total, math.factorial(n))
    return float(out) if round_back and not isinstance(out, complex) else out


def charlier(n: int, x, a):
    """Charlier polynomial C_n(x, a) = 2F0(-n, -x; -1/a) as a finite sum.

    Real arguments are summed exactly and rounded once at the end."""
    if n < 0:
        raise ValueError(f"charlier needs n >= 0, got {n}")
    if a == 0:
        raise ValueError("charlier parameter a must be nonzero")
    if isinstance(a, int):
        a = Fraction(a)
    x, a, round_back = _exactify(x, a)
    u = -1 / a
    total = a * 0
    for j in range(n + 1):
        num = pochhammer(-n, j) * pochhammer(-x, j)
        total = total + _exact_div(num, math.factorial(j)) * u**j
    return float(total) if round_back else total


def jacobi_poly(n: int, a, b, z):
    """Jacobi polynomial P_n^{a,b}(z) via the terminating 2F1 at (1-z)/2.

    Accepts complex z (pass a GaussianRational z for exact complex
    evaluation); real arguments are summed exactly and rounded at the end.
    """
    if n < 0:
        raise ValueError(f"jacobi_poly needs n >= 0, got {n}")
    a, b, z, round_back = _exactify(a, b, z)
    half = (1 - z) / 2 if isinstance(z, complex) else (1 - z) * Fraction(1, 2)
    total = z * 0
    for m in range(n + 1):
        num = pochhammer(-n, m) * pochhammer(n + a + b + 1, m)
        den = pochhammer(a + 1, m) * math.factorial(m)
        total = total + _exact_div(num, den) * half**m
    out = _exact_div(pochhammer(a + 1, n), math.factorial(n)) * total
    return float(out) if round_back and not isinstance(out, complex) else out
