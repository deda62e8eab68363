"""Exact rational matrices: determinants, minors and total nonnegativity."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import RangeError, SizeMismatchError


def as_matrix(rows) -> list:
    """Copy a nested sequence into a list of lists of Fractions."""
    out = [[Fraction(x) for x in r] for r in rows]
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def shape(Q) -> tuple:
    return (len(Q), len(Q[0]) if Q else 0)


def determinant(A) -> Fraction:
    """Gaussian elimination over the rationals; ``det([]) == 1``."""
    a = [[Fraction(x) for x in r] for r in A]
    k = len(a)
    det = Fraction(1)
    for c in range(k):
        p = next((r for r in range(c, k) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        piv = a[c][c]
        det *= piv
        for r in range(c + 1, k):
            f = a[r][c] / piv
            if f:
                row_r, row_c = a[r], a[c]
                for j in range(c + 1, k):
                    row_r[j] -= f * row_c[j]
    return det


def minor(Q, I, J) -> Fraction:
    """Determinant of the submatrix on 1-based rows ``I`` and columns ``J``."""
    I, J = sorted(I), sorted(J)
    if len(I) != len(J):
        raise SizeMismatchError(f"|I|={len(I)} but |J|={len(J)}")
    n, n_prime = shape(Q)
    if any(not 1 <= i <= n for i in I) or any(not 1 <= j <= n_prime for j in J):
        raise RangeError(f"minor ({I}|{J}) out of range for a {n}x{n_prime} matrix")
    return determinant([[Q[i - 1][j - 1] for j in J] for i in I])


def index_pairs(n: int, n_prime: int, max_size=None):
    """All ``(I, J)`` with ``|I| = |J|``, including the empty pair."""
    top = min(n, n_prime) if max_size is None else min(n, n_prime, max_size)
    for k in range(top + 1):
        for I in combinations(range(1, n + 1), k):
            for J in combinations(range(1, n_prime + 1), k):
                yield I, J


def is_tnn(Q) -> bool:
    n, n_prime = shape(Q)
    return all(minor(Q, I, J) >= 0 for I, J in index_pairs(n, n_prime) if I)


def format_matrix(Q) -> str:
    cells = [[str(x) for x in r] for r in Q]
    width = max((len(c) for r in cells for c in r), default=1)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)
