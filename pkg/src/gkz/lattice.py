"""Exact integer and rational linear algebra.

Matrices are plain sequences of rows holding Python ints (arbitrary
precision); rational vectors are tuples of :class:`fractions.Fraction`.
Nothing here touches floating point.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Sequence

from .errors import NotPrimitiveError, RankError, SingularError
from .simplex import feasible_point

IntVector = tuple  # tuple[int, ...]
RationalVector = tuple  # tuple[Fraction, ...]


def to_fraction(value) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def rational_vector(values) -> RationalVector:
    return tuple(to_fraction(v) for v in values)


def format_rational(q) -> str:
    q = to_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), 0)


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*rows)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A, B):
    Bt = transpose(B, len(B[0]) if B else 0)
    return [[dot(row, col) for col in Bt] for row in A]


def primitive(v) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = reduce(math.gcd, (abs(x) for x in v), 0)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def lex_positive(v) -> IntVector:
    for x in v:
        if x != 0:
            return tuple(v) if x > 0 else tuple(-y for y in v)
    return tuple(v)


def integral_multiple(v) -> IntVector:
    """Smallest positive rescaling of a rational vector to a primitive integer one."""
    v = rational_vector(v)
    den = reduce(lambda a, b: a * b // math.gcd(a, b), (q.denominator for q in v), 1)
    return primitive(tuple(int(q * den) for q in v))


# Smith and Hermite forms -----------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """``U @ A @ V == D`` with ``D`` diagonal and ``d_1 | d_2 | ...``."""

    D: tuple
    U: tuple
    V: tuple

    @property
    def diagonal(self) -> tuple:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.V))))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def smith(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> SmithForm:
    """Smith normal form with unimodular transforms.

    Args:
      A: integer matrix as a sequence of rows.
      ncols: column count, only needed when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst += q * row src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        for M in (D, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            entries = [(abs(D[i][j]), i, j) for i in range(t, m)
                       for j in range(t, n) if D[i][j] != 0]
            if not entries:
                break
            _, i, j = min(entries)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(t, i, -q)
                if D[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(t, j, -q)
                if D[t][j]:
                    dirty = True
            if dirty:
                continue
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < m and t < n and D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    freeze = lambda M: tuple(tuple(row) for row in M)  # noqa: E731
    return SmithForm(freeze(D), freeze(U), freeze(V))


def hermite_rows(vectors: Sequence[Sequence[int]]) -> list:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``.

    Zero rows are dropped; pivots are positive and entries above each pivot
    are reduced into ``[0, pivot)``. The result depends only on the lattice.
    """
    H = [list(map(int, v)) for v in vectors]
    if not H:
        return []
    n = len(H[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c] != 0]
            if not nz:
                break
            i = min(nz, key=lambda k: abs(H[k][c]))
            H[r], H[i] = H[i], H[r]
            done = True
            for k in range(r + 1, len(H)):
                if H[k][c]:
                    q = H[k][c] // H[r][c]
                    H[k] = [a - q * b for a, b in zip(H[k], H[r])]
                    if H[k][c]:
                        done = False
            if done:
                break
        if r < len(H) and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
            for k in range(r):
                q = H[k][c] // H[r][c]
                if q:
                    H[k] = [a - q * b for a, b in zip(H[k], H[r])]
            r += 1
        if r == len(H):
            break
    return [tuple(row) for row in H[:r] if any(row)]


def kernel_basis(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list:
    """Basis of the saturated lattice ``{v in Z^n : A v = 0}``.

    ``A`` is given by rows, so vectors live in ``Z^ncols``. The basis is
    returned in Hermite normal form, which makes it canonical.
    """
    S = smith(A, ncols)
    n = len(S.V)
    cols = [tuple(S.V[i][j] for i in range(n)) for j in range(S.rank, n)]
    return hermite_rows(cols)


def rank(vectors) -> int:
    vectors = [v for v in vectors]
    if not vectors:
        return 0
    return len(_row_echelon([list(map(to_fraction, v)) for v in vectors]))


def _row_echelon(rows):
    rows = [r[:] for r in rows]
    out = []
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((r for r in rows if r[c] != 0), None)
        if piv is None:
            continue
        rows.remove(piv)
        rows = [[a - r[c] / piv[c] * b for a, b in zip(r, piv)] for r in rows]
        out.append(piv)
    return out


def determinant(B: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(B)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in B]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def sublattice_index(B: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by the columns of a square matrix."""
    d = determinant(B)
    if d == 0:
        raise SingularError("matrix is singular")
    return abs(d)


def solve(columns: Sequence[Sequence], p: Sequence) -> Optional[RationalVector]:
    """Unique coefficients ``c`` with ``sum c_i columns[i] == p``.

    The columns must be linearly independent. Returns None when ``p`` is
    not in their span.
    """
    k = len(columns)
    r = len(p)
    # Augmented system: rows are coordinates, last entry is p.
    M = [[to_fraction(columns[j][i]) for j in range(k)] + [to_fraction(p[i])]
         for i in range(r)]
    row = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(row, r) if M[i][c] != 0), None)
        if piv is None:
            raise RankError("columns are linearly dependent")
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][c]
        M[row] = [a * inv for a in M[row]]
        for i in range(r):
            if i != row and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[row])]
        pivots.append(row)
        row += 1
    if any(M[i][k] != 0 for i in range(row, r)):
        return None
    return tuple(M[i][k] for i in pivots)


def inverse(M: Sequence[Sequence]) -> list:
    """Exact inverse of a square rational matrix."""
    n = len(M)
    cols = [[to_fraction(M[i][j]) for i in range(n)] for j in range(n)]
    out = []
    for e in identity(n):
        out.append(solve(cols, e))
    # ``out[k]`` is column k of the inverse.
    return [[out[j][i] for j in range(n)] for i in range(n)]


# Cones -------------------------------------------------------------------------

class Membership(enum.Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    RELATIVE_INTERIOR = "relative_interior"


def cone_member(generators: Sequence[Sequence], p: Sequence) -> Membership:
    """Locate ``p`` relative to the rational cone spanned by ``generators``.

    RELATIVE_INTERIOR means ``p`` is a combination with every coefficient
    strictly positive, which is exactly the relative interior of the cone.
    """
    p = rational_vector(p)
    gens = [rational_vector(g) for g in generators]
    if not gens:
        return (Membership.RELATIVE_INTERIOR if not any(p)
                else Membership.OUTSIDE)
    if rank(gens) == len(gens):
        coeffs = solve(gens, p)
        if coeffs is None or any(c < 0 for c in coeffs):
            return Membership.OUTSIDE
        if all(c > 0 for c in coeffs):
            return Membership.RELATIVE_INTERIOR
        return Membership.BOUNDARY

    dim = len(p)
    A = [[g[i] for g in gens] for i in range(dim)]
    if feasible_point(A, p) is None:
        return Membership.OUTSIDE
    # sum (1 + y_i) g_i = (1 + s) p with y, s >= 0.
    A2 = [[g[i] for g in gens] + [-p[i]] for i in range(dim)]
    b2 = [p[i] - sum(g[i] for g in gens) for i in range(dim)]
    if feasible_point(A2, b2) is not None:
        return Membership.RELATIVE_INTERIOR
    return Membership.BOUNDARY


def strictly_positive_functional(generators: Sequence[Sequence[int]],
                                 dim: Optional[int] = None) -> Optional[IntVector]:
    """Integer covector pairing strictly positively with every generator.

    Returns None exactly when some nonzero nonnegative combination of the
    generators vanishes (Gordan's alternative).
    """
    gens = [tuple(g) for g in generators]
    r = len(gens[0]) if gens else (dim or 0)
    if not gens:
        return (0,) * r
    # <g_i, c+ - c-> - s_i = 1
    A = [list(g) + [-x for x in g] + [-int(i == j) for j in range(len(gens))]
         for i, g in enumerate(gens)]
    x = feasible_point(A, [1] * len(gens))
    if x is None:
        return None
    c = [x[k] - x[r + k] for k in range(r)]
    return integral_multiple(c)


def nonnegative_relation(generators: Sequence[Sequence[int]]) -> Optional[IntVector]:
    """A nonzero ``y >= 0`` with ``sum y_i g_i == 0``, or None."""
    gens = [tuple(g) for g in generators]
    if not gens:
        return None
    r = len(gens[0])
    A = [[g[i] for g in gens] for i in range(r)] + [[1] * len(gens)]
    y = feasible_point(A, [0] * r + [1])
    if y is None:
        return None
    return integral_multiple(y)


def primitive_normal(vectors: Sequence[Sequence[int]], dim: int) -> IntVector:
    """Primitive integer normal to a rank ``dim - 1`` set of vectors.

    The lexicographically positive representative is returned.
    """
    basis = kernel_basis([tuple(v) for v in vectors], ncols=dim)
    if len(basis) != 1:
        raise RankError(f"span has rank {dim - len(basis)}, expected {dim - 1}")
    return lex_positive(primitive(basis[0]))


@dataclass(frozen=True)
class HyperplaneChart:
    """Integral coordinates on ``normal^perp`` inside ``Z^r``.

    ``basis`` is a lattice basis of the hyperplane, ``lift`` an integer
    vector with ``<lift, normal> == 1``.
    """

    normal: tuple
    basis: tuple
    lift: tuple
    _inverse: tuple

    def coordinates(self, v) -> RationalVector:
        """Coordinates of ``v`` (which must lie on the hyperplane) in ``basis``."""
        v = rational_vector(v)
        coeffs = [sum(v[i] * self._inverse[i][k] for i in range(len(v)))
                  for k in range(len(v))]
        if coeffs[0] != 0:
            raise ValueError(f"{v} is not on the hyperplane {self.normal}^perp")
        return tuple(coeffs[1:])

    def embed(self, coords) -> RationalVector:
        """Inverse of :meth:`coordinates`."""
        coords = rational_vector(coords)
        r = len(self.normal)
        return tuple(sum((c * b[i] for c, b in zip(coords, self.basis)), Fraction(0))
                     for i in range(r))


def hyperplane_coordinates(normal: Sequence[int]) -> HyperplaneChart:
    normal = tuple(int(x) for x in normal)
    if reduce(math.gcd, (abs(x) for x in normal), 0) != 1:
        raise NotPrimitiveError(f"{normal} is not primitive")
    r = len(normal)
    basis = kernel_basis([normal])
    S = smith([normal])
    # U * normal * V = (1, 0, ...), U = (+-1).
    u = S.U[0][0]
    lift = tuple(u * S.V[i][0] for i in range(r))
    # Rows of M are the lift and the basis; M is unimodular.
    M = [lift] + [tuple(b) for b in basis]
    inv = inverse(M)
    return HyperplaneChart(normal, tuple(basis), lift,
                           tuple(tuple(row) for row in inv))
