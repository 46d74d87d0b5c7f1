"""Moments of the free Jacobi process from moments of the unitary one.

tau(J^n) is a finite binomial combination of tau(U^k), k <= n.  The
expansion runs in exact rational arithmetic when fed Fractions, which makes
degenerate checks equalities rather than approximations.
"""

from fractions import Fraction

from jacobiflow import FlowParams, jacobi_moments, k_series_coeff
from jacobiflow.specfun import binomial

print("=" * 72)
print("1. Time zero: the unitary process is the identity, tau(U^k) = 1,")
print("   and every moment collapses to (1 + kappa)/2 exactly")
print("=" * 72)
for kappa in (Fraction(0), Fraction(1, 3), Fraction(-3, 5)):
    params = FlowParams(kappa, 1.0)
    out = jacobi_moments([Fraction(1)] * 10, params, 10)
    assert all(m == (1 + kappa) / 2 for m in out)
    print(f"kappa = {kappa}: all ten moments equal {(1 + kappa) / 2}")

print()
print("=" * 72)
print("2. Symmetric case at time t: unitary moments are the free unitary")
print("   Brownian motion moments at time 2t; the resulting process law")
print("   matches the operator (Y + Y* + 2)/4 built from the same moments")
print("   (the compressed trace carries a factor 2)")
print("=" * 72)
t = 0.9
unitary = [k_series_coeff(t, k) / 2 for k in range(1, 11)]
params = FlowParams(0.0, t)
jac = jacobi_moments(unitary, params, 10)
print(f"{'n':>3} {'2 tau(J^n)':>22} {'moment of (Y+Y*+2)/4':>22}")
for n in range(1, 11):
    direct = 4.0**-n * (
        binomial(2 * n, n)
        + 2 * sum(binomial(2 * n, n - k) * unitary[k - 1] for k in range(1, n + 1))
    )
    print(f"{n:>3} {2 * jac[n - 1]:>22.15f} {direct:>22.15f}")

print()
print("=" * 72)
print("3. Vanishing unitary moments isolate the combinatorial floor")
print("=" * 72)
params = FlowParams(Fraction(2, 7), 1.0)
out = jacobi_moments([Fraction(0)] * 6, params, 6)
for n, m in enumerate(out, start=1):
    print(f"tau(J^{n}) = C({2*n},{n})/2^{2*n+1} + kappa/2 = {m}")
