import itertools
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from gkz import lattice
from gkz.errors import NotPrimitiveError, RankError, SingularError
from gkz.lattice import Membership, cone_member


def matrices(max_rows=4, max_cols=4, lo=-6, hi=6):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


# Smith normal form


def test_smith_examples():
    s = lattice.smith([[2]])
    assert s.D == ((2,),) or [list(r) for r in s.D] == [[2]]
    assert lattice.smith([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal == (1, 1, 1)
    assert lattice.smith([[2, 4], [6, 8]]).diagonal == (2, 4)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_smith_identity_and_divisibility(A):
    s = lattice.smith(A)
    UAV = lattice.matmul(lattice.matmul(s.U, A), s.V)
    assert [list(r) for r in UAV] == [list(r) for r in s.D]
    assert abs(lattice.determinant(s.U)) == 1
    assert abs(lattice.determinant(s.V)) == 1
    diag = [x for x in s.diagonal if x]
    assert all(x > 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert len(diag) == s.rank == lattice.rank(A)


# Kernels


def test_kernel_examples():
    K = lattice.kernel_basis([[1, 1, 1]])
    assert len(K) == 2 and all(sum(v) == 0 for v in K)
    assert lattice.sublattice_index([[0, 0, 1]] + [list(v) for v in K]) == 1
    assert lattice.kernel_basis([[1, 0], [0, 1]]) == []
    assert [tuple(v) for v in lattice.kernel_basis([[1, 2]])] in ([(2, -1)], [(-2, 1)])


@given(matrices(max_rows=3, max_cols=5))
@settings(max_examples=150, deadline=None)
def test_kernel_is_saturated_basis(A):
    n = len(A[0])
    K = lattice.kernel_basis(A, n)
    assert len(K) == n - lattice.rank(A)
    for v in K:
        assert all(lattice.dot(row, v) == 0 for row in A)
    if K:
        # saturated: the elementary divisors of the basis are all 1
        assert set(lattice.smith(K, n).diagonal) <= {1}


# Cone membership


def test_cone_member_examples():
    assert cone_member([(1, 0), (0, 1)], (1, 1)) is Membership.RELATIVE_INTERIOR
    assert cone_member([(1, 0), (0, 1)], (1, 0)) is Membership.BOUNDARY
    assert cone_member([(1, 1), (0, 1)], (2, 1)) is Membership.OUTSIDE


def _brute_member(gens, p, bound=6):
    """Independent 2D oracle: exact rational combinations through pairs of generators."""
    p = tuple(Fraction(x) for x in p)
    if all(x == 0 for x in p):
        return True
    for g in gens:
        # on a ray
        if g[0] * p[1] - g[1] * p[0] == 0 and g[0] * p[0] + g[1] * p[1] > 0:
            return True
    for g, h in itertools.combinations(gens, 2):
        det = g[0] * h[1] - g[1] * h[0]
        if det == 0:
            continue
        a = Fraction(p[0] * h[1] - p[1] * h[0], det)
        b = Fraction(g[0] * p[1] - g[1] * p[0], det)
        if a >= 0 and b >= 0:
            return True
    return False


vec2 = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).filter(lambda v: v != (0, 0))


@given(st.lists(vec2, min_size=1, max_size=4), st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
@settings(max_examples=200, deadline=None)
def test_cone_member_against_planar_oracle(gens, p):
    got = cone_member(gens, p)
    assert (got is not Membership.OUTSIDE) == _brute_member(gens, p)


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
                min_size=1, max_size=5),
       st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)),
       st.fractions(min_value=Fraction(1, 7), max_value=7), st.randoms(use_true_random=False))
@settings(max_examples=150, deadline=None)
def test_cone_member_invariances(gens, p, s, rnd):
    base = cone_member(gens, p)
    assert cone_member(gens, [s * x for x in p]) is base
    shuffled = list(gens) + [gens[0]]
    rnd.shuffle(shuffled)
    assert cone_member(shuffled, p) is base


# Gordan alternative


def _brute_functional(gens, dim, bound=4):
    for c in itertools.product(range(-bound, bound + 1), repeat=dim):
        if all(lattice.dot(c, g) > 0 for g in gens):
            return c
    return None


def _brute_relation(gens, bound=4):
    for coeffs in itertools.product(range(bound + 1), repeat=len(gens)):
        if any(coeffs) and all(sum(a * g[i] for a, g in zip(coeffs, gens)) == 0
                               for i in range(len(gens[0]))):
            return coeffs
    return None


def test_positive_functional_examples():
    c = lattice.strictly_positive_functional([(1, 0), (0, 1), (1, 1)])
    assert c is not None and all(lattice.dot(c, g) > 0 for g in [(1, 0), (0, 1), (1, 1)])
    assert lattice.strictly_positive_functional([(1,), (-1,)]) is None
    orlov_cols = [(1, 0)] * 3 + [(-3, 1)]
    assert tuple(lattice.strictly_positive_functional(orlov_cols)) == (1, 4)


@given(st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(lambda v: v != (0, 0)),
                min_size=1, max_size=4))
@settings(max_examples=150, deadline=None)
def test_gordan_exclusive_or(gens):
    c = lattice.strictly_positive_functional(gens)
    rel = lattice.nonnegative_relation(gens)
    assert (c is None) != (rel is None)
    if c is not None:
        assert all(lattice.dot(c, g) > 0 for g in gens)
        assert _brute_relation(gens) is None
    else:
        assert any(rel) and all(x >= 0 for x in rel)
        assert all(sum(a * g[i] for a, g in zip(rel, gens)) == 0 for i in range(2))
        assert _brute_functional(gens, 2) is None


# Normals and charts


def test_primitive_normal_examples():
    assert lattice.primitive_normal([], 1) in ((1,), (-1,))
    assert lattice.primitive_normal([(1, 1)], 2) in ((1, -1), (-1, 1))
    assert lattice.primitive_normal([(2, 4)], 2) in ((2, -1), (-2, 1))
    with pytest.raises(RankError):
        lattice.primitive_normal([(1, 1, 0), (2, 2, 0)], 3)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)),
                min_size=2, max_size=3))
@settings(max_examples=150, deadline=None)
def test_primitive_normal_properties(vs):
    if lattice.rank(vs) != 2:
        return
    lam = lattice.primitive_normal(vs, 3)
    assert all(lattice.dot(lam, v) == 0 for v in vs)
    assert gcd(*lam) == 1
    assert lattice.lex_positive(lam)


def test_sublattice_index():
    assert lattice.sublattice_index([[1, 0], [0, 1]]) == 1
    assert lattice.sublattice_index([[2]]) == 2
    assert lattice.sublattice_index([[1, 1], [0, 2]]) == 2
    with pytest.raises(SingularError):
        lattice.sublattice_index([[1, 2], [2, 4]])


def test_hyperplane_chart_examples():
    ch = lattice.hyperplane_coordinates((1, 0))
    assert [tuple(b) for b in ch.basis] in ([(0, 1)], [(0, -1)]) and tuple(ch.lift) == (1, 0)
    ch = lattice.hyperplane_coordinates((1, -1))
    assert [tuple(b) for b in ch.basis] == [(1, 1)] and tuple(ch.lift) == (1, 0)
    ch = lattice.hyperplane_coordinates((1,))
    assert list(ch.basis) == [] and tuple(ch.lift) == (1,)
    with pytest.raises(NotPrimitiveError):
        lattice.hyperplane_coordinates((2, 4))


@given(st.tuples(st.integers(-6, 6), st.integers(-6, 6), st.integers(-6, 6))
       .filter(lambda v: any(v) and gcd(*v) == 1),
       st.tuples(st.integers(-4, 4), st.integers(-4, 4)))
@settings(max_examples=150, deadline=None)
def test_hyperplane_chart_roundtrip(lam, coords):
    ch = lattice.hyperplane_coordinates(lam)
    assert lattice.dot(ch.lift, lam) == 1
    assert len(ch.basis) == 2
    v = ch.embed(coords)
    assert lattice.dot(v, lam) == 0
    assert tuple(ch.coordinates(v)) == tuple(coords)
    # basis together with the lift is unimodular
    assert lattice.sublattice_index([list(b) for b in ch.basis] + [list(ch.lift)]) == 1
