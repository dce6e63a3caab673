"""Global sections, cohomology counts, and the Riemann-Roch identity.

A global section of a bundle with transition A(x) is a pair of vector
polynomials (s0 in x, s1 in 1/x) with s0(x) = A(x) s1(1/x).  For the
line bundle O(k) (transition x^k) this forces s0 to be a polynomial of
degree at most k, so the space has dimension k + 1 for k >= 0 and is
zero otherwise.  All counts here are exact kernel dimensions of integer
linear systems.

Run:  python demos/02_sections_and_riemann_roch.py
"""

from bgsplit import bundle, dual, h0_dim, h1_dim, lp, riemann_roch_check, twist

# ---------------------------------------------------------------
# Line bundles: h0(O(k)) = k + 1 for k >= 0, and 0 for k < 0.
line = lambda k: bundle([[lp({k: 1})]])
print("k :", *[f"{k:3d}" for k in range(-3, 6)])
print("h0:", *[f"{h0_dim(line(k)).dimension:3d}" for k in range(-3, 6)])

# ---------------------------------------------------------------
# A rank-2 example with an explicit section basis.  Each basis element is
# a pair (s0, s1); the invariant s0 = x^k * A * s1 holds exactly.
ext = bundle([[lp({1: 1}), 1], [0, lp({-1: 1})]])
space = h0_dim(ext, 0)
print(f"\nsections of the extension at twist 0: dimension {space.dimension}")
for s0, s1 in space.basis:
    print("  s0 =", [str(p) for p in s0], "  s1 =", [str(p) for p in s1])

# ---------------------------------------------------------------
# The canonical bundle is O(-2): twisting the dual by -k-2 computes h1.
print("\nh1(O(-3)) =", h1_dim(line(-3)), " (equals h0(O(1)) = 2 by duality)")
print("h1 of the extension:", h1_dim(ext))

# ---------------------------------------------------------------
# Riemann-Roch on the sphere: h0 - h1 = degree + rank, for every bundle
# and every twist.  The report carries all four numbers.
for k in (-3, 0, 2):
    rep = riemann_roch_check(twist(ext, 0), k)
    print(
        f"twist {k:+d}:  h0 - h1 = {rep.h0} - {rep.h1} = {rep.h0 - rep.h1}"
        f"  ==  deg + rank = {rep.degree} + {rep.rank}"
    )

# ---------------------------------------------------------------
# Duality reverses and negates the splitting indices.
print("\ndual of O(-5) is O(5):", h0_dim(dual(line(-5)), 0).dimension, "= h0(O(5))")
