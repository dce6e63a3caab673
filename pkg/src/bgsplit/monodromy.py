"""Exact checks on monodromy-style tuples of invertible rational matrices.

A representation is an ordered tuple (M_1, ..., M_N) of invertible n x n
rational matrices, the images of small loops around the punctures.
Composition of loops acts contravariantly: the image of the composite
loop g1 g2 is M(g2) M(g1).  The product-identity convention therefore
fixes the stored order, and check_product_identity multiplies
left-to-right in that order.

Irreducibility is decided by the word-span (Burnside) test: the unital
algebra generated by the matrices acts irreducibly on C^n exactly when
it is all of the n x n matrices, and the dimension of the word span over
Q equals its dimension over any extension field, so the rational
computation decides the complex question.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotInvertible
from .laurent import LaurentPoly
from .linalg import (
    Matrix,
    charpoly,
    det_q,
    identity_q,
    is_identity,
    mat_mul,
    qmat,
    rank,
    trace,
)


@dataclass(frozen=True)
class MonodromyRep:
    """Ordered tuple of invertible rational matrices (loop images)."""

    size: int
    matrices: Tuple[Matrix, ...]

    @staticmethod
    def from_matrices(matrices: Sequence[Sequence[Sequence]]) -> "MonodromyRep":
        mats = tuple(qmat(m) for m in matrices)
        if not mats:
            raise ValueError("a representation needs at least one matrix")
        n = len(mats[0])
        for m in mats:
            if len(m) != n or any(len(row) != n for row in m):
                raise DimensionMismatch("matrices must be square of equal size")
            if det_q(m) == 0:
                raise NotInvertible("loop images must be invertible")
        return MonodromyRep(size=n, matrices=mats)

    def loop_image(self, word: Sequence[int]) -> Matrix:
        """Image of the composite loop word[0] word[1] ...; matrices
        multiply in reversed order (anti-homomorphism bookkeeping)."""
        out = identity_q(self.size)
        for idx in reversed(word):
            out = mat_mul(out, self.matrices[idx])
        return out

    def conjugated(self, s: Sequence[Sequence]) -> "MonodromyRep":
        """The isomorphic representation S^-1 M S, matrix by matrix."""
        from .linalg import inverse_q

        sm = qmat(s)
        s_inv = inverse_q(sm)
        return MonodromyRep(
            size=self.size,
            matrices=tuple(mat_mul(mat_mul(s_inv, m), sm) for m in self.matrices),
        )


def monodromy_rep(matrices: Sequence[Sequence[Sequence]]) -> MonodromyRep:
    return MonodromyRep.from_matrices(matrices)


@dataclass(frozen=True)
class JordanProfile:
    """Whether a matrix has a single eigenvalue, and a single Jordan block.

    A single eigenvalue of full multiplicity forces mu = trace/n, which
    is rational, so the check is complete over Q: the candidate is
    mu = trace/n and the test is charpoly == (lambda - mu)^n exactly;
    single_block additionally requires rank(M - mu I) = n - 1.
    """

    single_eigenvalue: Optional[Fraction]
    single_block: bool


@dataclass(frozen=True)
class CriterionReport:
    """Joint report of the non-realizability test hypotheses.

    applies = product_is_identity and reducible and all_single_block and
    eigenvalue_product != 1, with size >= 4 required; when it holds the
    representation is not the monodromy of any differential system on
    the sphere with only simple poles.
    """

    size: int
    product_is_identity: bool
    reducible: bool
    all_single_block: bool
    eigenvalues: Optional[Tuple[Fraction, ...]]
    eigenvalue_product: Optional[Fraction]
    applies: bool
    reason: str = ""
    invariant_subspace_witness: Optional[Tuple[int, ...]] = None


def check_product_identity(rep: MonodromyRep) -> bool:
    """Exact test M_1 M_2 ... M_N = identity, in stored order."""
    out = identity_q(rep.size)
    for m in rep.matrices:
        out = mat_mul(out, m)
    return is_identity(out)


def _word_span_dimension(rep: MonodromyRep) -> int:
    """Dimension over Q of the unital algebra generated by the matrices.

    Breadth-first closure of {I} under right multiplication by the
    generators, tracked by echelon reduction of the flattened matrices.
    """
    n = rep.size
    pivots: dict = {}

    def reduce_and_insert(mat: Matrix) -> Optional[Matrix]:
        vec = {k: Fraction(v) for k, v in enumerate(
            [mat[i][j] for i in range(n) for j in range(n)]) if v}
        while vec:
            lead = min(vec)
            if lead not in pivots:
                pivots[lead] = vec
                return mat
            pvec = pivots[lead]
            factor = vec[lead] / pvec[lead]
            for k, v in pvec.items():
                s = vec.get(k, Fraction(0)) - factor * v
                if s:
                    vec[k] = s
                else:
                    vec.pop(k, None)
        return None

    frontier: List[Matrix] = []
    if reduce_and_insert(identity_q(n)) is not None:
        frontier.append(identity_q(n))
    while frontier and len(pivots) < n * n:
        word = frontier.pop(0)
        for gen in rep.matrices:
            cand = mat_mul(word, gen)
            if reduce_and_insert(cand) is not None:
                frontier.append(cand)
    return len(pivots)


def is_irreducible(rep: MonodromyRep) -> bool:
    """True when no common invariant subspace exists over C (Burnside)."""
    return _word_span_dimension(rep) == rep.size * rep.size


def coordinate_invariant_subspace(rep: MonodromyRep) -> Optional[Tuple[int, ...]]:
    """Cheap reducibility witness: a proper nonzero coordinate subspace
    span{e_i : i in S} preserved by every matrix, if one exists.

    Best effort only (smallest subsets first); absence of a witness
    proves nothing.
    """
    n = rep.size
    for size in range(1, n):
        for subset in combinations(range(n), size):
            inside = set(subset)
            ok = True
            for m in rep.matrices:
                for j in subset:
                    if any(m[i][j] != 0 for i in range(n) if i not in inside):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return subset
    return None


def jordan_profile(m: Sequence[Sequence]) -> JordanProfile:
    """Single-eigenvalue and single-Jordan-block test, exact over Q."""
    mat = qmat(m)
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise DimensionMismatch("square matrix expected")
    mu = trace(mat) / n
    target = LaurentPoly({1: 1, 0: -mu}) ** n
    if charpoly(mat) != target:
        return JordanProfile(single_eigenvalue=None, single_block=False)
    shifted = tuple(
        tuple(mat[i][j] - (mu if i == j else 0) for j in range(n)) for i in range(n)
    )
    return JordanProfile(
        single_eigenvalue=mu, single_block=(rank(shifted) == n - 1)
    )


def bolibrukh_criterion(rep: MonodromyRep) -> CriterionReport:
    """Evaluate the non-realizability hypotheses exactly.

    Checks, in order: the loop images multiply (in stored order) to the
    identity; the representation is reducible; every matrix is a single
    Jordan block with a single eigenvalue mu_P; and the product of the
    mu_P differs from 1.  All four together (with size >= 4) certify
    that no system with only simple poles on the sphere has this
    monodromy.  Sizes below 4 are reported but never certified.
    """
    product_ok = check_product_identity(rep)
    reducible = not is_irreducible(rep)
    witness = coordinate_invariant_subspace(rep) if reducible else None
    profiles = [jordan_profile(m) for m in rep.matrices]
    all_single = all(p.single_block for p in profiles)
    eigenvalues: Optional[Tuple[Fraction, ...]] = None
    product: Optional[Fraction] = None
    if all(p.single_eigenvalue is not None for p in profiles):
        eigenvalues = tuple(p.single_eigenvalue for p in profiles)
        product = Fraction(1)
        for mu in eigenvalues:
            product *= mu
    applies = (
        rep.size >= 4
        and product_ok
        and reducible
        and all_single
        and product is not None
        and product != 1
    )
    if applies:
        reason = "all hypotheses hold; not realizable with only simple poles"
    elif rep.size < 4:
        reason = "criterion requires size at least 4; not certified"
    elif not product_ok:
        reason = "loop images do not multiply to the identity"
    elif not reducible:
        reason = "representation is irreducible"
    elif not all_single:
        reason = "some loop image is not a single Jordan block"
    else:
        reason = "eigenvalue product equals 1"
    return CriterionReport(
        size=rep.size,
        product_is_identity=product_ok,
        reducible=reducible,
        all_single_block=all_single,
        eigenvalues=eigenvalues,
        eigenvalue_product=product,
        applies=applies,
        reason=reason,
        invariant_subspace_witness=witness,
    )


# The four-puncture counterexample tuple: product = identity, reducible
# with invariant span{e_0, e_1}, single Jordan blocks with eigenvalues
# (1, 1, -1), eigenvalue product -1.
COUNTEREXAMPLE_MATRICES: Tuple[Matrix, ...] = (
    qmat([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1], [0, 0, 0, 1]]),
    qmat([[3, 1, 1, -1], [-4, -1, 1, 2], [0, 0, 3, 1], [0, 0, -4, -1]]),
    qmat([[-1, 0, 2, -1], [4, -1, 0, 1], [0, 0, -1, 0], [0, 0, 4, -1]]),
)
