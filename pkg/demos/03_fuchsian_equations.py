"""Singularity analysis of classical equations, all in exact arithmetic.

The hypergeometric equation  z(1-z) w'' + (c - (a+b+1) z) w' - a b w = 0
is the showcase: three first-kind singularities at 0, 1, infinity with
indicial roots {0, 1-c}, {0, c-a-b}, {a, b}, whose total is always 1 --
the scalar global exponent identity n(n-1)/2 * (N - 2) with n = 2, N = 3.

Run:  python demos/03_fuchsian_equations.py
"""

from fractions import Fraction

from bgsplit import (
    INF,
    classify_singularity_scalar,
    frobenius_series,
    fuchs_relation_scalar,
    gauge_transform,
    indicial_polynomial,
    local_system,
    lp,
    ode_residual,
    scalar_ode,
)
from bgsplit.ratfunc import RatFunc

F = Fraction

# ---------------------------------------------------------------
# Build the monic hypergeometric equation for a = 1/3, b = 1/7, c = 1/2.
a, b, c = F(1, 3), F(1, 7), F(1, 2)
den = lp({2: 1, 1: -1})  # z^2 - z, monic form of z(1-z) with the sign absorbed
gauss = scalar_ode([
    RatFunc(lp({1: a + b + 1, 0: -c}), den),
    RatFunc(lp({0: a * b}), den),
])

for point in (F(0), F(1), INF, F(5)):
    print(classify_singularity_scalar(gauss, point))

# ---------------------------------------------------------------
# Indicial polynomials: exponents as exact polynomial data.
for point in (F(0), F(1), INF):
    ind = indicial_polynomial(gauss, point)
    print(f"indicial at {point}: {ind.polynomial}   exponent sum {ind.exponent_sum}")

report = fuchs_relation_scalar(gauss)
print(
    f"global exponent identity: lhs {report.lhs} = rhs {report.rhs} over "
    f"{report.num_singularities} singularities -> {report.holds}"
)

# ---------------------------------------------------------------
# A first-kind system at the origin has a fundamental matrix S(z) z^R with
# S(0) = identity, as long as no two eigenvalues of R differ by a positive
# integer.  The series is produced with an exact residual certificate.
loc = local_system(
    [[F(1, 2), 0], [0, 0]],          # residue R
    [[[0, 1], [1, 0]]],              # analytic tail R_0
)
series = frobenius_series(loc, 6)
print("\nFrobenius S_1 =", series.s[1])
print("residual vanishes through order", ode_residual(loc, series))

# ---------------------------------------------------------------
# Gauge transformations act on system matrices by P^-1 A P - P^-1 P'.
gauged = gauge_transform([[0, 0], [0, 0]], [[lp({1: 1}), 0], [0, 1]])
print("\nzero system gauged by diag(z, 1):")
for row in gauged:
    print("  ", [str(v) for v in row])
