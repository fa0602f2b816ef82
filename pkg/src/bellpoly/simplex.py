"""Exact rational phase-1 simplex with Bland's rule.

Solves the feasibility problem

    find x >= 0 with A x = b

in exact Fraction arithmetic.  The outcome is self-certifying: a feasible
answer carries the solution vector, an infeasible answer carries a Farkas
vector y with y.A <= 0 (columnwise) and y.b > 0, and both certificates are
re-verified before being returned.  Bland's anti-cycling rule guarantees
termination on degenerate instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, InternalInvariantError

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    solution: tuple[Fraction, ...] | None
    certificate: tuple[Fraction, ...] | None


def solve_equality_feasibility(matrix, rhs) -> FeasibilityResult:
    """Decide feasibility of {x >= 0 : A x = b} for rational A (m x n), b."""
    a_rows = [[Fraction(x) for x in row] for row in matrix]
    b = [Fraction(x) for x in rhs]
    m = len(a_rows)
    if len(b) != m:
        raise DimensionMismatch(f"rhs length {len(b)} != row count {m}")
    n = len(a_rows[0]) if m else 0
    for row in a_rows:
        if len(row) != n:
            raise DimensionMismatch("ragged constraint matrix")

    # Flip rows to make the right-hand side nonnegative; remember the signs
    # so the Farkas certificate can be mapped back to the original system.
    signs = []
    for i in range(m):
        if b[i] < 0:
            a_rows[i] = [-x for x in a_rows[i]]
            b[i] = -b[i]
            signs.append(-1)
        else:
            signs.append(1)

    # Tableau over columns [structural 0..n-1 | artificial n..n+m-1 | rhs].
    width = n + m + 1
    tableau = []
    for i in range(m):
        row = a_rows[i] + [_ZERO] * m + [b[i]]
        row[n + i] = _ONE
        tableau.append(row)
    basis = [n + i for i in range(m)]

    # Reduced-cost row for minimizing the sum of artificials: the basic
    # artificials have cost 1, so d_j = c_j - sum_i A_ij.
    reduced = [_ZERO] * width
    for j in range(n):
        reduced[j] = -sum(tableau[i][j] for i in range(m))
    # artificial columns start with reduced cost 0; rhs slot tracks -w
    reduced[n + m] = -sum(b)

    while True:
        entering = next((j for j in range(n + m) if reduced[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best_ratio = None
        for i in range(m):
            coeff = tableau[i][entering]
            if coeff > 0:
                ratio = tableau[i][-1] / coeff
                if (best_ratio is None or ratio < best_ratio
                        or (ratio == best_ratio and basis[i] < basis[leaving])):
                    best_ratio = ratio
                    leaving = i
        if leaving is None:
            raise InternalInvariantError("phase-1 objective unbounded below")
        _pivot(tableau, reduced, leaving, entering)
        basis[leaving] = entering

    objective = -reduced[-1]
    if objective < 0:
        raise InternalInvariantError("phase-1 objective went negative")

    if objective == 0:
        x = [_ZERO] * n
        for i, var in enumerate(basis):
            if var < n:
                x[var] = tableau[i][-1]
        for i in range(m):
            lhs = sum(signs[i] * a_rows[i][j] * x[j] for j in range(n))
            if lhs != signs[i] * b[i]:
                raise InternalInvariantError("feasible solution failed recheck")
        return FeasibilityResult(True, tuple(x), None)

    # Farkas certificate: with artificial costs 1 the simplex multipliers are
    # pi_i = 1 - d[n+i]; mapping back through the row sign flips gives y.
    y = tuple(Fraction(signs[i]) * (_ONE - reduced[n + i]) for i in range(m))
    for j in range(n):
        col = sum(y[i] * signs[i] * a_rows[i][j] for i in range(m))
        if col > 0:
            raise InternalInvariantError("Farkas certificate failed column check")
    if sum(y[i] * signs[i] * b[i] for i in range(m)) <= 0:
        raise InternalInvariantError("Farkas certificate failed rhs check")
    return FeasibilityResult(False, None, y)


def _pivot(tableau, reduced, row, col):
    pivot_row = tableau[row]
    inv = _ONE / pivot_row[col]
    tableau[row] = pivot_row = [x * inv for x in pivot_row]
    for i, other in enumerate(tableau):
        if i != row and other[col] != 0:
            f = other[col]
            tableau[i] = [a - f * p for a, p in zip(other, pivot_row)]
    if reduced[col] != 0:
        f = reduced[col]
        reduced[:] = [a - f * p for a, p in zip(reduced, pivot_row)]
