"""Splitting a vector bundle on the sphere, with an explicit certificate.

A rank-n bundle over the Riemann sphere is glued from two trivial
patches by an invertible Laurent matrix A(x).  Every such bundle is a
direct sum of line bundles O(d_1) + ... + O(d_n), and the descending
integers d_i are computable: they are the diagonal exponents in an exact
factorization B * A * C = diag(x^d_i) with B polynomial in x and C
polynomial in 1/x, both of constant determinant.

Run:  python demos/01_splitting_and_factorization.py
"""

from bgsplit import (
    birkhoff_factor,
    bundle,
    lp,
    splitting_type,
    verify_factorization,
)
from bgsplit.lmatrix import LaurentMatrix

# ---------------------------------------------------------------
# A diagonal matrix is already split: the exponents are just read off.
diag = bundle(LaurentMatrix.diagonal_powers([3, -1]))
print("diag(x^3, x^-1) splits as", splitting_type(diag))

# ---------------------------------------------------------------
# An upper-triangular extension.  The off-diagonal 1 can be absorbed,
# so the bundle still splits as O(1) + O(-1).
ext = bundle([[lp({1: 1}), 1], [0, lp({-1: 1})]])
print("[[x, 1], [0, x^-1]] splits as", splitting_type(ext))

# The same data packaged as an explicit factorization:
factorization = birkhoff_factor(ext)
print("\nB =", str(factorization.b).replace("\n", "\n    "), sep="\n    ")
print("C =", str(factorization.c).replace("\n", "\n    "), sep="\n    ")
print("exponents:", factorization.exponents)

# The result carries its own certificate: multiply back and check every
# clause (determinants constant, exponent signs, exact diagonal).
report = verify_factorization(ext, factorization)
print("certificate valid:", report.valid)

# ---------------------------------------------------------------
# Moving the off-diagonal term below the diagonal degrees changes the answer.
# Here the constant 1 sits strictly between the degrees -1 and 1, where no
# column or row operation of the allowed shape can reach it: the extension
# is genuinely nonsplit and balances to (0, 0).
obstructed = bundle([[lp({-1: 1}), 1], [0, lp({1: 1})]])
print("\n[[x^-1, 1], [0, x]] splits as", splitting_type(obstructed))

# ---------------------------------------------------------------
# The index multiset never changes under the allowed coordinate changes:
# multiply by any polynomial matrix with constant determinant on the left
# and any antipolynomial one on the right.
u = LaurentMatrix([[1, lp({1: 2})], [0, 1]])
v = LaurentMatrix([[1, 0], [lp({-1: -3}), 1]])
moved = bundle(u @ ext.transition @ v)
print("after a unimodular change of gluing:", splitting_type(moved))
