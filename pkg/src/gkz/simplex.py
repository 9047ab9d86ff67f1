"""Exact phase-one simplex for tiny feasibility problems.

Everything is carried in :class:`fractions.Fraction`; pivoting follows
Bland's rule, so the method terminates and is deterministic.
"""

from fractions import Fraction
from typing import Optional, Sequence


def feasible_point(A: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """Find ``x >= 0`` with ``A x = b``.

    Args:
      A: ``m x k`` matrix given as rows (ints or Fractions).
      b: right-hand side of length ``m``.

    Returns:
      A basic feasible solution as a list of Fractions, or None if the
      system has no nonnegative solution.
    """
    m = len(A)
    k = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * k

    # Rows with negative right-hand side are negated so artificials start at b.
    rows = []
    rhs = []
    for i in range(m):
        sgn = -1 if b[i] < 0 else 1
        rows.append([Fraction(sgn * a) for a in A[i]])
        rhs.append(Fraction(sgn * b[i]))

    # Tableau columns: k structural, then m artificials.
    width = k + m
    T = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]]
         for i in range(m)]
    basis = [k + i for i in range(m)]

    # Reduced costs of the phase-one objective (minimise sum of artificials).
    cost = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(width + 1):
            cost[j] -= T[i][j]
    for i in range(m):
        cost[k + i] += 1

    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = T[i][entering]
            if a > 0:
                ratio = T[i][width] / a
                if best is None or ratio < best[0] or (
                        ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # Phase one is bounded below by zero, so this cannot happen.
            raise AssertionError("unbounded phase-one problem")
        _pivot(T, cost, basis, best[1], entering)

    if cost[width] != 0:
        return None
    x = [Fraction(0)] * k
    for i, j in enumerate(basis):
        if j < k:
            x[j] = T[i][width]
    return x


def _pivot(T, cost, basis, r, c):
    piv = T[r][c]
    row = [v / piv for v in T[r]]
    T[r] = row
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], row)]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [a - f * b for a, b in zip(cost, row)]
    basis[r] = c
