"""Exact linear algebra over the rationals.

Matrices are sequences of rows of ``Fraction``/``int`` entries.  The
elimination engine clears denominators row-wise and runs a
division-controlled integer echelon reduction (every combined row is
divided by the gcd of its entries), which bounds intermediate swell
without leaving exact arithmetic.  Kernels are returned in the reduced
echelon normal form parametrization, so results are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import DimensionMismatch, NotInvertible
from .laurent import LaurentPoly

Row = Sequence[Fraction]
Matrix = Tuple[Tuple[Fraction, ...], ...]
SparseRow = Dict[int, int]


def qmat(rows: Sequence[Sequence]) -> Matrix:
    """Normalize a nested sequence to an immutable Fraction matrix."""
    out = tuple(tuple(Fraction(v) for v in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise DimensionMismatch("ragged matrix")
    return out


def identity_q(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def zeros_q(rows: int, cols: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b) or (a and len(a[0]) != len(b[0])):
        raise DimensionMismatch("matrix addition shape mismatch")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(a, mat_scale(b, Fraction(-1)))

def mat_scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if not a or not b:
        return ()
    if len(a[0]) != len(b):
        raise DimensionMismatch("matrix product shape mismatch")
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    if a and len(a[0]) != len(v):
        raise DimensionMismatch("matrix-vector shape mismatch")
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_identity(a: Matrix) -> bool:
    n = len(a)
    return all(
        a[i][j] == (1 if i == j else 0) for i in range(n) for j in range(len(a[i]))
    ) and all(len(r) == n for r in a)


# -- integer echelon engine -------------------------------------------


def _gcd_reduce(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = gcd(g, abs(v))
        if g == 1:
            break
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _normalize_sign(row: SparseRow) -> SparseRow:
    if row and row[min(row)] < 0:
        row = {c: -v for c, v in row.items()}
    return row


def sparse_int_rows(rows: Sequence[Dict[int, Fraction]]) -> List[SparseRow]:
    """Clear denominators per row, returning integer sparse rows."""
    out = []
    for row in rows:
        if not row:
            continue
        mult = 1
        for v in row.values():
            f = Fraction(v)
            mult = mult * f.denominator // gcd(mult, f.denominator)
        intified = {}
        for c, v in row.items():
            f = Fraction(v) * mult
            if f:
                intified[c] = int(f)
        if intified:
            out.append(_gcd_reduce(intified))
    return out


def echelon_sparse(rows: Sequence[Dict[int, Fraction]]) -> Dict[int, SparseRow]:
    """Reduce sparse rows to echelon form.

    Returns a map {pivot column: integer row} where each row's minimal
    column is its pivot.  Rows are combined fraction-free (cross-multiplied
    then gcd-reduced), which is exact and keeps entries as small minors.
    """
    pivots: Dict[int, SparseRow] = {}
    for raw in sparse_int_rows(rows):
        row = raw
        while row:
            c = min(row)
            p = pivots.get(c)
            if p is None:
                pivots[c] = _normalize_sign(_gcd_reduce(row))
                break
            a, b = row[c], p[c]
            new: SparseRow = {col: b * v for col, v in row.items()}
            for col, v in p.items():
                s = new.get(col, 0) - a * v
                if s:
                    new[col] = s
                else:
                    new.pop(col, None)
            row = _gcd_reduce(new)
    return pivots


def sparse_kernel(
    rows: Sequence[Dict[int, Fraction]],
    ncols: int,
    need_basis: bool = True,
) -> Tuple[int, Optional[List[Tuple[Fraction, ...]]]]:
    """Exact right kernel of a sparse rational matrix.

    Returns (nullity, basis), basis in the reduced-echelon normal form
    parametrization: one vector per free column in ascending order, with
    a 1 in the free position.  With need_basis=False the basis is None.
    """
    pivots = echelon_sparse(rows)
    nullity = ncols - len(pivots)
    if not need_basis:
        return nullity, None
    # Back-substitute the echelon rows to reduced form over Q.
    reduced: Dict[int, Dict[int, Fraction]] = {}
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        lead = prow[c]
        frow: Dict[int, Fraction] = {col: Fraction(v, lead) for col, v in prow.items()}
        for col in sorted(col for col in frow if col != c and col in reduced):
            factor = frow.pop(col)
            for col2, v2 in reduced[col].items():
                if col2 == col:
                    continue
                s = frow.get(col2, Fraction(0)) - factor * v2
                if s:
                    frow[col2] = s
                else:
                    frow.pop(col2, None)
        reduced[c] = frow
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for c, frow in reduced.items():
            coeff = frow.get(f)
            if coeff:
                vec[c] = -coeff
        basis.append(tuple(vec))
    return nullity, basis


def nullspace(matrix: Sequence[Sequence]) -> List[Tuple[Fraction, ...]]:
    """Canonical basis of the right kernel of a dense rational matrix."""
    rows = [
        {j: Fraction(v) for j, v in enumerate(row) if v} for row in matrix
    ]
    ncols = len(matrix[0]) if matrix else 0
    _, basis = sparse_kernel(rows, ncols, need_basis=True)
    assert basis is not None
    return basis


def rank(matrix: Sequence[Sequence]) -> int:
    rows = [
        {j: Fraction(v) for j, v in enumerate(row) if v} for row in matrix
    ]
    return len(echelon_sparse(rows))


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[Tuple[Fraction, ...]]:
    """One exact solution of A x = b, or None when inconsistent.

    Free variables, if any, are set to zero.
    """
    a = qmat(a)
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    if len(b) != nrows:
        raise DimensionMismatch("right-hand side length mismatch")
    rows = []
    for i in range(nrows):
        row = {j: v for j, v in enumerate(a[i]) if v}
        bv = Fraction(b[i])
        if bv:
            row[ncols] = bv
        rows.append(row)
    pivots = echelon_sparse(rows)
    if ncols in pivots:
        return None
    reduced: Dict[int, Dict[int, Fraction]] = {}
    for c in sorted(pivots, reverse=True):
        prow = pivots[c]
        lead = prow[c]
        frow = {col: Fraction(v, lead) for col, v in prow.items()}
        for col in sorted(col for col in frow if col != c and col in reduced):
            factor = frow.pop(col)
            for col2, v2 in reduced[col].items():
                if col2 == col:
                    continue
                s = frow.get(col2, Fraction(0)) - factor * v2
                if s:
                    frow[col2] = s
                else:
                    frow.pop(col2, None)
        reduced[c] = frow
    x = [Fraction(0)] * ncols
    for c, frow in reduced.items():
        x[c] = frow.get(ncols, Fraction(0))
    return tuple(x)


# -- square-matrix routines -------------------------------------------


def det_q(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    a = qmat(a)
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    mult = 1
    for row in a:
        for v in row:
            mult = mult * v.denominator // gcd(mult, v.denominator)
    m = [[int(v * mult) for v in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], mult**n)


def inverse_q(a: Sequence[Sequence]) -> Matrix:
    """Exact inverse by Gauss-Jordan; raises NotInvertible when singular."""
    a = qmat(a)
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("inverse of a non-square matrix")
    work = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        for i in range(col, n):
            if work[i][col]:
                piv = i
                break
        if piv is None:
            raise NotInvertible("singular rational matrix")
        work[col], work[piv] = work[piv], work[col]
        lead = work[col][col]
        work[col] = [v / lead for v in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                f = work[i][col]
                work[i] = [v - f * w for v, w in zip(work[i], work[col])]
    return tuple(tuple(row[n:]) for row in work)


def charpoly(a: Sequence[Sequence]) -> LaurentPoly:
    """Monic characteristic polynomial det(lambda*I - A), exact.

    Computed by the Faddeev-LeVerrier recurrence; returned as a
    polynomial in the variable (exponent = power of lambda).
    """
    a = qmat(a)
    n = len(a)
    if any(len(r) != n for r in a):
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    coeffs = {n: Fraction(1)}
    m = identity_q(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -trace(m) / k
        if c:
            coeffs[n - k] = c
        m = mat_add(m, mat_scale(identity_q(n), c))
    return LaurentPoly(coeffs)


def rational_roots(p: LaurentPoly) -> List[Tuple[Fraction, int]]:
    """All rational roots of a nonzero polynomial, with multiplicities.

    Returned sorted ascending.  Exact: candidates come from the rational
    root theorem on the primitive integer form.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if not p.is_polynomial():
        raise ValueError("Laurent input; shift to a polynomial first")
    from .ratfunc import root_multiplicity

    roots = []
    low = p.ord()
    if low > 0:
        roots.append((Fraction(0), low))
        p = p.shift(-low)
    mult = 1
    for c in p.terms.values():
        mult = mult * c.denominator // gcd(mult, c.denominator)
    ip = {e: int(c * mult) for e, c in p.terms.items()}
    a0 = abs(ip.get(0, 0))
    an = abs(ip[p.deg()])
    if a0 == 0:
        return sorted(roots)

    def divisors(v: int) -> List[int]:
        out = []
        d = 1
        while d * d <= v:
            if v % d == 0:
                out.append(d)
                out.append(v // d)
            d += 1
        return sorted(set(out))

    seen = set()
    for num in divisors(a0):
        for den in divisors(an):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if cand in seen:
                    continue
                seen.add(cand)
                if p.evaluate(cand) == 0:
                    roots.append((cand, root_multiplicity(p, cand)))
    return sorted(roots)


def resultant(p: LaurentPoly, q: LaurentPoly) -> Fraction:
    """Resultant of two nonzero polynomials via the Sylvester determinant."""
    if p.is_zero or q.is_zero:
        raise ValueError("resultant of the zero polynomial")
    if not (p.is_polynomial() and q.is_polynomial()):
        raise ValueError("polynomial inputs required")
    m, n = p.deg(), q.deg()
    if m == 0:
        return p.coeff(0) ** n
    if n == 0:
        return q.coeff(0) ** m
    size = m + n
    rows = []
    for i in range(n):
        rows.append([p.coeff(m - (j - i)) if 0 <= j - i <= m else Fraction(0)
                     for j in range(size)])
    for i in range(m):
        rows.append([q.coeff(n - (j - i)) if 0 <= j - i <= n else Fraction(0)
                     for j in range(size)])
    return det_q(rows)
