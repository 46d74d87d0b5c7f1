"""Circle-contour quadrature, the residue representation of the expansion
polynomials, and the contour-integral form of the derivative series.

Integrals are trapezoidal sums over uniformly spaced nodes (spectrally
accurate for analytic periodic integrands), with the sample count doubled
until two successive values agree to 1e-12.  Sums run in fixed index order,
so results are bit-reproducible regardless of how callers parallelize.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .flow import FlowParams
from .maps import ConvergenceError, DomainError, herglotz_k, r_func, y_func
from .report import VerifyEntry
from .specfun import jacobi_poly, laguerre

QUAD_TOL = 1e-12
MAX_SAMPLES = 2**16
ELLIPSE_PARAM = 0.5  # convergence ellipse for the Jacobi generating series
SEMI_MAJOR = (1 / ELLIPSE_PARAM + ELLIPSE_PARAM) / 2
SEMI_MINOR = (1 / ELLIPSE_PARAM - ELLIPSE_PARAM) / 2
KERNEL_MARGIN = 1e-8
MIN_RADIUS = 1e-6
MAX_HALVINGS = 20


class QuadratureError(RuntimeError):
    """Adaptive quadrature hit the sample cap; carries the last two values."""

    def __init__(self, message, last_two=None):
        super().__init__(message)
        self.last_two = last_two


class NoAdmissibleContourError(RuntimeError):
    """No circle radius satisfies all kernel conditions at this point.

    Surfacing this (instead of retrying forever) is deliberate: the failure
    marks the obstruction to extending the derivative series further into
    the disc.
    """


@dataclass(frozen=True)
class ContourSpec:
    """Circle |w - center| = radius sampled at a power-of-two node count."""

    center: complex
    radius: float
    samples: int = 256

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius}")
        s = self.samples
        if s < 16 or s & (s - 1):
            raise ValueError(f"samples must be a power of two >= 16, got {s}")


def contour_nodes(spec: ContourSpec, count: int | None = None) -> np.ndarray:
    n = spec.samples if count is None else count
    theta = 2.0 * np.pi * np.arange(n) / n
    return spec.center + spec.radius * np.exp(1j * theta)


def _adaptive_quadrature(f, spec: ContourSpec):
    """(1/2 pi i) contour integral of f; returns (value, samples, delta)."""
    values = []
    n = spec.samples
    while n <= MAX_SAMPLES:
        w = contour_nodes(spec, n)
        fw = np.asarray(f(w), dtype=complex)
        if fw.shape != w.shape:
            raise ValueError("integrand must return one value per node")
        if not np.all(np.isfinite(fw)):
            raise ValueError("integrand is not finite at a sample point")
        values.append(complex(np.sum(fw * (w - spec.center)) / n))
        if len(values) >= 2:
            delta = abs(values[-1] - values[-2])
            if delta < QUAD_TOL:
                return values[-1], n, delta
        n *= 2
    raise QuadratureError(
        f"quadrature did not converge within {MAX_SAMPLES} samples",
        last_two=(values[-2], values[-1]),
    )


def circle_quadrature(f, spec: ContourSpec) -> complex:
    """(1/2 pi i) times the contour integral of f over the circle.

    ``f`` is called with an ndarray of nodes and must return matching values.
    """
    return _adaptive_quadrature(f, spec)[0]


def pkm_residue(k: int, m: int, params: FlowParams, spec: ContourSpec) -> float:
    """Residue-integral evaluation of the expansion polynomials:

        kappa/(2 pi i) * integral of w**(m-1) (1 - w**2)**k / (w - kappa)**(m+1)

    over the circle, which equals (-1)**m P_k^(m)(eps).  For m = 0 the
    integrand has an extra pole at w = 0, so the circle must exclude the
    origin; the cross-check against the exact polynomials is the quadrature
    oracle of the whole contour machinery.
    """
    if k < 1 or m < 0:
        raise ValueError("pkm_residue needs k >= 1 and m >= 0")
    kap = float(params.kappa)
    if kap == 0.0:
        raise ValueError("the residue identity needs kappa != 0")
    if complex(spec.center) != complex(kap):
        raise ValueError("contour must be centered at kappa")
    if m == 0 and spec.radius >= abs(kap):
        raise ValueError("for m = 0 the circle must exclude the origin pole")

    def integrand(w):
        return w ** (m - 1) * (1 - w * w) ** k / (w - kap) ** (m + 1)

    return (kap * circle_quadrature(integrand, spec)).real


def _contour_admissible(t, kap, z, rho, samples):
    w = kap + rho * np.exp(2j * np.pi * np.arange(samples) / samples)
    # (i) image of w -> 1 - 2 w**2 inside the convergence ellipse
    u = 1 - 2 * w * w
    if np.any((u.real / SEMI_MAJOR) ** 2 + (u.imag / SEMI_MINOR) ** 2 > 1):
        return False
    # (ii) branch argument stays off (-inf, 0]
    v = (1 - z) ** 2 + 4 * w * w * z
    if np.any((v.real <= 0) & (np.abs(v.imag) <= 1e-12)):
        return False
    try:
        y = y_func(z, w)
        # (iii) kernel argument inside the disc
        if np.any(np.abs(y) >= 1):
            return False
        K = herglotz_k(t, y)
    except (DomainError, ConvergenceError):
        return False
    # (iv) kernel zero set stays away from the circle
    if np.min(np.abs(w * K - kap)) <= KERNEL_MARGIN:
        return False
    # (v) origin excluded, needed whenever the 1/w integrand form is used
    if not rho < abs(kap):
        return False
    # (vi) geometric-series ratio below one; this is what makes the circle
    # enclose the kernel zero, so the integral picks up its residue
    return bool(np.max(np.abs(w * (1 - K) / (w - kap))) < 1)


def admissible_contour(params: FlowParams, z, samples: int = 256) -> ContourSpec:
    """Search a circle radius around kappa satisfying all kernel conditions.

    Starts at min((1-|kappa|)/4, |kappa|/2) and halves until every check
    passes on the sampled nodes.  Failure raises NoAdmissibleContourError:
    the caller is near the kernel zero set and the representation genuinely
    stops being available.
    """
    kap = float(params.kappa)
    if kap == 0.0:
        raise ValueError("contour search needs kappa != 0")
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("target point must lie in the open unit disc")
    t = float(params.t)
    rho = min((1 - abs(kap)) / 4, abs(kap) / 2)
    for _ in range(MAX_HALVINGS + 1):
        if rho < MIN_RADIUS:
            break
        if _contour_admissible(t, kap, z, rho, samples):
            return ContourSpec(complex(kap), rho, samples)
        rho /= 2
    raise NoAdmissibleContourError(
        f"no admissible circle around kappa={kap} for z={z}"
    )


@dataclass(frozen=True)
class IntegralResult:
    """Value of the contour integral plus the diagnostics collected along it."""

    value: complex
    form: str
    contour: ContourSpec
    samples: int
    quadrature_delta: float
    min_kernel_denominator: float
    geom_ratio_max: float


def m_integral_detailed(
    params: FlowParams, z, form: str = "corollary", spec: ContourSpec | None = None
) -> IntegralResult:
    """Contour-integral evaluation of the derivative series M at a point.

    ``corollary`` integrates K (K**2-1) / ([t K**2 + (2-t)][w K - kappa] R),
    which has no singularity at w = 0 and is the default; ``proposition``
    keeps the kappa/(w R) weight and is retained for cross-validation.
    Both carry the (1 - z) prefactor.
    """
    if form not in ("proposition", "corollary"):
        raise ValueError(f"unknown integral form {form!r}")
    kap = float(params.kappa)
    if kap == 0.0:
        raise ValueError("kappa = 0 has the closed form maps.m_zero")
    z = complex(z)
    if abs(z) >= 1:
        raise DomainError("evaluation point must lie in the open unit disc")
    if spec is None:
        spec = admissible_contour(params, z)
    t = float(params.t)
    min_den = [math.inf]
    max_ratio = [0.0]

    def integrand(w):
        y = y_func(z, w)
        K = herglotz_k(t, y)
        den = t * K * K + (2 - t)
        min_den[0] = min(min_den[0], float(np.min(np.abs(den))))
        max_ratio[0] = max(
            max_ratio[0], float(np.max(np.abs(w * (1 - K) / (w - kap))))
        )
        rr = r_func(z, w)
        core = (K * K - 1) / (den * (w * K - kap))
        if form == "corollary":
            return K * core / rr
        return core / (w * rr)

    value, samples, delta = _adaptive_quadrature(integrand, spec)
    scale = (1 - z) * (kap if form == "proposition" else 1.0)
    return IntegralResult(
        value=scale * value,
        form=form,
        contour=spec,
        samples=samples,
        quadrature_delta=delta,
        min_kernel_denominator=min_den[0],
        geom_ratio_max=max_ratio[0],
    )


def m_integral(params: FlowParams, z, form: str = "corollary") -> complex:
    """Value of the contour-integral representation of M at the point z."""
    return m_integral_detailed(params, z, form).value


# -- generating-function and kernel checks ------------------------------------


def laguerre_gen_check(m: int, t: float, y, n_terms: int = 120, tol: float = 1e-8) -> VerifyEntry:
    """Residual of the Laguerre generating identity

        2**(m+1) sum_{j>m} L_{j-m-1}^{(m+1)}(2jt) (e^{-t} y)^j
            = (K**2-1)/(t K**2 + 2-t) (K-1)**m,   K = K(y),

    from an n_terms partial sum on the left."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    y = complex(y)
    if abs(y) >= 0.95:
        raise DomainError("check needs |y| < 0.95")
    decay = cmath.exp(-t) * y
    lhs = 0j
    for j in range(m + 1, n_terms + 1):
        lhs += laguerre(j - m - 1, m + 1, 2.0 * j * t) * decay**j
    lhs *= 2 ** (m + 1)
    K = herglotz_k(t, y)
    rhs = (K * K - 1) / (t * K * K + (2 - t)) * (K - 1) ** m
    return VerifyEntry.make(
        "laguerre-generating", abs(lhs - rhs), tol, m=m, t=t, y=y, terms=n_terms
    )


def jacobi_gen_check(j: int, z, w, n_terms: int = 150, tol: float = 1e-8) -> VerifyEntry:
    """Residual of the Jacobi generating identity

        z**j sum_n P_n^{0,2j}(1 - 2 w**2) z**n
            = (4z)**j / (R (1 + z + R)**(2j)),

    together with its variant shifted by one degree (extra factor z)."""
    if j < 1:
        raise ValueError("j must be positive")
    z = complex(z)
    w = complex(w)
    if abs(z) > 0.3:
        raise DomainError("partial sums converge reliably only for |z| <= 0.3")
    arg = 1 - 2 * w * w
    vals = [jacobi_poly(n, 0, 2 * j, arg) for n in range(n_terms + 1)]
    acc = 0j
    for v in reversed(vals):
        acc = acc * z + v
    rr = r_func(z, w)
    rhs = (4 * z) ** j / (rr * (1 + z + rr) ** (2 * j))
    res_plain = abs(z**j * acc - rhs)
    shifted = 0j
    for n in range(j + 1, n_terms + 1):
        shifted += vals[n - j - 1] * z**n
    res_shifted = abs(shifted - z * rhs)
    return VerifyEntry.make(
        "jacobi-generating", max(res_plain, res_shifted), tol,
        j=j, z=z, w=w, terms=n_terms,
    )


def nonvanishing_check(
    params: FlowParams, z, spec: ContourSpec, floor: float = 1e-10
) -> VerifyEntry:
    """Minimum of |t K**2 + (2 - t)| over the contour nodes; the entry fails
    if the kernel denominator comes within ``floor`` of vanishing."""
    z = complex(z)
    t = float(params.t)
    w = contour_nodes(spec)
    K = herglotz_k(t, y_func(z, w))
    min_abs = float(np.min(np.abs(t * K * K + (2 - t))))
    return VerifyEntry.make(
        "kernel-nonvanishing", max(0.0, floor - min_abs), 0.0,
        min_abs=min_abs, floor=floor, z=z, t=t,
    )


def geom_ratio_check(params: FlowParams, z, spec: ContourSpec) -> VerifyEntry:
    """Geometric-series ratio |w (1 - K) / (w - kappa)| must stay below one
    on the contour for the kernel resummation to be valid."""
    z = complex(z)
    kap = float(params.kappa)
    w = contour_nodes(spec)
    K = herglotz_k(float(params.t), y_func(z, w))
    max_ratio = float(np.max(np.abs(w * (1 - K) / (w - kap))))
    return VerifyEntry.make(
        "geometric-ratio", max(0.0, max_ratio - 1.0), 0.0,
        max_ratio=max_ratio, z=z,
    )
