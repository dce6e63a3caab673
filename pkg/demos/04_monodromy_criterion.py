"""A representation that no simple-pole system on the sphere realizes.

Three 4x4 integer matrices multiply to the identity, share a two
dimensional invariant subspace, and are each a single Jordan block with
eigenvalues 1, 1, -1.  Because the eigenvalue product is -1 rather than
1, the non-realizability criterion applies: this tuple is not the
monodromy of any differential system with only simple poles.

Run:  python demos/04_monodromy_criterion.py
"""

from bgsplit import (
    bolibrukh_criterion,
    check_product_identity,
    is_irreducible,
    jordan_profile,
    monodromy_rep,
)
from bgsplit.monodromy import COUNTEREXAMPLE_MATRICES

rep = monodromy_rep(COUNTEREXAMPLE_MATRICES)

for index, matrix in enumerate(rep.matrices, start=1):
    print(f"M{index}:")
    for row in matrix:
        print("   ", [int(v) for v in row])

print("\nproduct M1 M2 M3 is the identity:", check_product_identity(rep))
print("irreducible:", is_irreducible(rep))

for index, matrix in enumerate(rep.matrices, start=1):
    profile = jordan_profile(matrix)
    print(
        f"M{index}: single eigenvalue {profile.single_eigenvalue}, "
        f"single Jordan block {profile.single_block}"
    )

report = bolibrukh_criterion(rep)
print("\ninvariant coordinate subspace: span of e_i for i in",
      report.invariant_subspace_witness)
print("eigenvalue product:", report.eigenvalue_product)
print("criterion applies:", report.applies)
print(report.reason)

# Everything above is invariant under a change of basis: conjugating the
# whole tuple by any invertible rational matrix reproduces the report.
conjugated = rep.conjugated([[1, 2, 0, 1], [0, 1, 3, 0], [1, 0, 1, 0], [0, 0, 0, 1]])
print("\nsame verdict after conjugation:", bolibrukh_criterion(conjugated).applies)
