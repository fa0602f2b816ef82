"""Dense exact-rational linear algebra (small matrices, Fraction entries)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import DimensionMismatch


def dot(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"dot: lengths {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def primitive(vec) -> tuple[int, ...]:
    """Scale a rational vector by a positive rational into integers with gcd 1."""
    fracs = [Fraction(x) for x in vec]
    if all(f == 0 for f in fracs):
        return tuple(0 for _ in fracs)
    denom = lcm(*(f.denominator for f in fracs)) if fracs else 1
    ints = [int(f * denom) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def rref(rows):
    """Reduced row echelon form.

    Returns (reduced nonzero rows, pivot column indices). The input is not
    modified; entries are coerced to Fraction.
    """
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    for row in m:
        if len(row) != ncols:
            raise DimensionMismatch("rref: ragged rows")
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def rank_int(rows) -> int:
    """Rank of an integer matrix via Bareiss fraction-free elimination.

    Faster than Fraction rref on the many small rank queries the double
    description adjacency test performs.
    """
    m = [list(row) for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    prev = 1
    row = 0
    for col in range(ncols):
        p = next((i for i in range(row, nrows) if m[i][col] != 0), None)
        if p is None:
            continue
        m[row], m[p] = m[p], m[row]
        pivot = m[row][col]
        for i in range(row + 1, nrows):
            mic = m[i][col]
            mr = m[row]
            mi = m[i]
            # full Bareiss update even for mic == 0: keeps later divisions exact
            for j in range(col + 1, ncols):
                mi[j] = (pivot * mi[j] - mic * mr[j]) // prev
            mi[col] = 0
        prev = pivot
        row += 1
        if row == nrows:
            break
    return row


def invert(rows):
    """Exact inverse of a square rational matrix; raises on singular input."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DimensionMismatch("invert: singular matrix")
    return [tuple(row[n:]) for row in reduced]
