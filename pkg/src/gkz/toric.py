"""Variation of GIT for a torus acting linearly on affine space.

A problem is the weight matrix of ``G = G_m^r`` acting on ``A^n``: column
``beta_i`` is the character by which ``G`` scales coordinate ``x_i``.
Column indices are 0-based throughout the library.

The main entry point is :func:`exceptional_collection`, which walks a
straight path from the anticanonical character through the chosen chamber
out of the effective cone, decomposes at every wall, and recurses into the
wall problems until only rank-zero problems remain.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from . import lattice
from .errors import (DegeneratePath, DegenerateWallPoint, NotProjective,
                     OnWall, RankError, ZeroColumn)
from .lattice import Membership

RETRY_SEEDS = 16


@dataclass(frozen=True)
class GitProblem:
    """Columns ``beta_1..beta_n`` in ``Z^rank``."""

    rank: int
    columns: tuple
    labels: Optional[tuple] = None

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        for i, c in enumerate(cols):
            if len(c) != self.rank:
                raise RankError(f"column {i} has length {len(c)}, expected {self.rank}")

    @property
    def n(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class ValidatedProblem(GitProblem):
    """A problem known to be projective; ``functional`` certifies it."""

    functional: tuple = ()


@dataclass(frozen=True)
class WallCrossing:
    lam: tuple
    weights: tuple
    fixed: tuple
    nu_plus: int
    nu_minus: int
    twist_lift: tuple
    twist_range: tuple
    d: int = 0

    @property
    def t_plus(self) -> int:
        return -self.nu_plus

    @property
    def t_minus(self) -> int:
        return -self.nu_minus

    @property
    def mu(self) -> int:
        return self.nu_plus - self.nu_minus


@dataclass(frozen=True)
class PathCrossing:
    t: Fraction
    point: tuple
    wall: WallCrossing


@dataclass(frozen=True)
class Block:
    crossing: PathCrossing
    copies: tuple  # of (twist j, child SodTree)


@dataclass(frozen=True)
class SodTree:
    """Nested decomposition certificate.

    ``kind`` is ``"node"`` for an ordinary node, ``"empty"`` when the
    character sits in the empty chamber and ``"unit"`` for the rank-zero
    base case, which contributes a single object.
    """

    problem: GitProblem
    character: tuple
    blocks: tuple = ()
    kind: str = "node"
    seed: int = 0


@dataclass(frozen=True)
class ChainLink:
    lam: tuple
    fixed: tuple
    twist: int


@dataclass(frozen=True)
class ExceptionalObject:
    chain: tuple
    character: tuple


# Validation and basic data -----------------------------------------------------

def validate(P: GitProblem) -> ValidatedProblem:
    """Check that the quotient is projective.

    Raises:
      ZeroColumn: some weight is zero.
      NotProjective: a nonconstant invariant monomial exists; its exponent
        vector is attached as ``witness``.
    """
    if isinstance(P, ValidatedProblem):
        return P
    for i, c in enumerate(P.columns):
        if not any(c):
            raise ZeroColumn(i)
    c = lattice.strictly_positive_functional(P.columns, P.rank)
    if c is None:
        raise NotProjective(lattice.nonnegative_relation(P.columns))
    return ValidatedProblem(P.rank, P.columns, P.labels, functional=tuple(c))


def anticanonical(P: GitProblem) -> tuple:
    return tuple(sum(c[k] for c in P.columns) for k in range(P.rank))


def is_semistable(P: GitProblem, support, chi) -> bool:
    """Whether a point with the given coordinate support is chi-semistable."""
    gens = [P.columns[i] for i in support]
    return lattice.cone_member(gens, chi) is not Membership.OUTSIDE


@lru_cache(maxsize=4096)
def _nonsingular_sigmas(P: GitProblem) -> tuple:
    out = []
    for sigma in itertools.combinations(range(P.n), P.rank):
        det = lattice.determinant([P.columns[i] for i in sigma])
        if det:
            out.append((sigma, abs(det)))
    return tuple(out)


def _sigma_table(P: GitProblem, chi) -> list:
    chi = lattice.rational_vector(chi)
    return [(sigma, idx, lattice.cone_member([P.columns[i] for i in sigma], chi))
            for sigma, idx in _nonsingular_sigmas(P)]


def sigma_bases(P: GitProblem, chi) -> list:
    """Nonsingular r-subsets whose cone contains ``chi``, with their indices."""
    return [(sigma, idx) for sigma, idx, m in _sigma_table(P, chi)
            if m is not Membership.OUTSIDE]


def chamber_signature(P: GitProblem, chi) -> frozenset:
    """The set of r-subsets whose cone has ``chi`` in its interior.

    Two characters off the walls share a chamber exactly when their
    signatures agree. The empty chamber has the empty signature.
    """
    out = []
    for sigma, _, m in _sigma_table(P, chi):
        if m is Membership.BOUNDARY:
            raise OnWall(f"{_fmt(chi)} lies on the boundary of cone {sigma}")
        if m is Membership.RELATIVE_INTERIOR:
            out.append(sigma)
    return frozenset(out)


def k0_rank(P: GitProblem, chi) -> int:
    """Count of torus-fixed stacky points, weighted by their isotropy order."""
    sig = chamber_signature(P, chi)
    return sum(idx for sigma, idx in _nonsingular_sigmas(P) if sigma in sig)


# Hyperplane arrangement ----------------------------------------------------------

@lru_cache(maxsize=4096)
def hyperplanes(P: GitProblem) -> tuple:
    """Primitive normals of all hyperplanes spanned by columns, deduplicated."""
    r = P.rank
    if r == 0:
        return ()
    distinct = sorted(set(P.columns))
    normals = set()
    for subset in itertools.combinations(distinct, r - 1):
        if (lattice.rank(subset) if subset else 0) != r - 1:
            continue
        normals.add(lattice.primitive_normal(subset, r))
    return tuple(sorted(normals))


def wall_crossing(P: GitProblem, lam, d: int = 0) -> WallCrossing:
    """Invariants of the crossing defined by an oriented one-parameter subgroup."""
    chart = lattice.hyperplane_coordinates(lam)
    lam = tuple(chart.normal)
    weights = tuple(lattice.dot(b, lam) for b in P.columns)
    nu_plus = sum(w for w in weights if w > 0)
    nu_minus = -sum(w for w in weights if w < 0)
    t_plus, t_minus = -nu_plus, -nu_minus
    twists = tuple(range(t_minus - d + 1, t_plus - d + 1)) if nu_plus < nu_minus else ()
    return WallCrossing(lam=lam, weights=weights,
                        fixed=tuple(i for i, w in enumerate(weights) if w == 0),
                        nu_plus=nu_plus, nu_minus=nu_minus,
                        twist_lift=chart.lift, twist_range=twists, d=d)


def wall_subproblem(P: GitProblem, crossing, chi0=None):
    """The wall problem: fixed columns and wall point in hyperplane coordinates.

    ``crossing`` may be a :class:`PathCrossing` (its point is used when
    ``chi0`` is omitted) or a bare :class:`WallCrossing`.
    """
    wall = crossing.wall if isinstance(crossing, PathCrossing) else crossing
    if chi0 is None:
        chi0 = crossing.point
    chart = lattice.hyperplane_coordinates(wall.lam)
    cols = []
    for i in wall.fixed:
        coords = chart.coordinates(P.columns[i])
        cols.append(tuple(int(x) for x in coords))
    sub = GitProblem(P.rank - 1, tuple(cols))
    char = chart.coordinates(chi0)
    try:
        chamber_signature(sub, char)
    except OnWall as exc:
        raise DegenerateWallPoint(str(exc)) from exc
    return sub, char


# Generic paths ------------------------------------------------------------------

def _primes():
    found = []
    k = 2
    while True:
        if all(k % p for p in found if p * p <= k):
            found.append(k)
            yield k
        k += 1


@lru_cache(maxsize=None)
def _prime(i: int) -> int:
    return next(itertools.islice(_primes(), i, None))


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _scaled_start(P: ValidatedProblem, chi, seed: int):
    """Point of chi's chamber close enough to the origin, generically perturbed."""
    K = anticanonical(P)
    c = P.functional
    cK = lattice.dot(c, K)
    cchi = lattice.dot(c, chi)
    # Chambers are cones, so chi / M stays in the chamber; M makes the ray
    # from K through it leave the effective cone.
    M = max(1, -(-2 * cchi // cK) + 1) if cchi > 0 else 1
    base = tuple(Fraction(x) / M for x in chi)

    bound = None
    for h in hyperplanes(P):
        val = abs(lattice.dot(h, base))
        if val:
            q = val / (2 * sum(abs(x) for x in h))
            bound = q if bound is None else min(bound, q)
    slack = (cK - lattice.dot(c, base)) / (2 * sum(abs(x) for x in c))
    scale = slack if bound is None else min(bound, slack)
    r = P.rank
    pert = tuple(scale / _prime(seed * r + i) for i in range(r))
    return tuple(b + e for b, e in zip(base, pert))


def generic_path(P: GitProblem, chi, seed: int = 0) -> list:
    """Crossings of a generic ray from the anticanonical point through chi's chamber.

    The ray starts at the sum of the columns, passes through a perturbed
    point of chi's chamber near the origin and runs until it leaves the
    effective cone. Only crossings past that point are returned, in order.
    Each wall normal is oriented toward the far side, so ``mu < 0``.

    Raises:
      OnWall: chi is not interior to a chamber.
      DegeneratePath: the ray meets a wall in codimension two; retry with
        another seed.
    """
    P = validate(P)
    _require_full_rank(P)
    chi = lattice.rational_vector(chi)
    sig = chamber_signature(P, chi)
    if not sig or P.rank == 0:
        return []
    K = anticanonical(P)
    start = _scaled_start(P, chi, seed)
    if chamber_signature(P, start) != sig:
        raise DegeneratePath("perturbation left the chamber")
    direction = tuple(s - k for s, k in zip(start, K))

    hits = {}
    for h in hyperplanes(P):
        a = lattice.dot(h, K)
        b = lattice.dot(h, direction)
        if b == 0:
            continue
        t = Fraction(-a) / b
        if t > 1:
            hits.setdefault(t, []).append(h)

    crossings = []
    for t in sorted(hits):
        point = tuple(k + t * v for k, v in zip(K, direction))
        if lattice.cone_member(P.columns, point) is Membership.OUTSIDE:
            continue
        if len(hits[t]) > 1:
            raise DegeneratePath(f"ray meets several hyperplanes at {_fmt(point)}")
        h = hits[t][0]
        lam = h if lattice.dot(h, direction) > 0 else tuple(-x for x in h)
        wall = wall_crossing(P, lam)
        m = lattice.cone_member([P.columns[i] for i in wall.fixed], point)
        if m is Membership.OUTSIDE:
            continue
        if m is Membership.BOUNDARY:
            raise DegeneratePath(f"ray meets a codimension-two cone at {_fmt(point)}")
        try:
            wall_subproblem(P, wall, point)
        except DegenerateWallPoint as exc:
            raise DegeneratePath(str(exc)) from exc
        crossings.append(PathCrossing(t, point, wall))
    return crossings


def generic_path_with_retries(P, chi, seed: int = 0, retries: int = RETRY_SEEDS):
    """Run :func:`generic_path` over the seed schedule; return ``(seed, path)``."""
    last = None
    for s in range(seed, seed + retries):
        try:
            return s, generic_path(P, chi, s)
        except DegeneratePath as exc:
            last = exc
    raise DegeneratePath(f"no generic path after {retries} seeds: {last}")


# Decomposition trees --------------------------------------------------------------

def _require_full_rank(P):
    if P.rank and lattice.rank(P.columns) != P.rank:
        raise RankError("columns do not span the character space, so no chamber is full-dimensional")


def exceptional_collection(P: GitProblem, chi, d: int = 0, seed: int = 0) -> SodTree:
    """Decompose the derived category of the quotient at chi into wall pieces."""
    P = validate(P)
    _require_full_rank(P)
    chi = lattice.rational_vector(chi)
    return _collection(P, chi, d, seed)


def _collection(P, chi, d, seed):
    if P.rank == 0:
        return SodTree(P, chi, kind="unit", seed=seed)
    used, path = generic_path_with_retries(P, chi, seed)
    if not path:
        return SodTree(P, chi, kind="empty", seed=used)
    blocks = []
    for crossing in path:
        wall = crossing.wall if crossing.wall.d == d else wall_crossing(P, crossing.wall.lam, d)
        crossing = PathCrossing(crossing.t, crossing.point, wall)
        sub, char = wall_subproblem(P, crossing)
        child = _collection(validate(sub), char, d, seed)
        blocks.append(Block(crossing, tuple((j, child) for j in wall.twist_range)))
    return SodTree(P, chi, tuple(blocks), "node", used)


def flatten(tree: SodTree) -> list:
    """Exceptional objects of a tree in semiorthogonal order."""
    if tree.kind == "unit":
        return [ExceptionalObject((), ())]
    out = []
    for block in tree.blocks:
        wall = block.crossing.wall
        chart = lattice.hyperplane_coordinates(wall.lam)
        for j, child in block.copies:
            link = ChainLink(wall.lam, wall.fixed, j)
            base = tuple(j * x for x in wall.twist_lift)
            for obj in flatten(child):
                lifted = chart.embed(obj.character) if obj.character else (0,) * tree.problem.rank
                char = tuple(Fraction(b) + Fraction(x) for b, x in zip(base, lifted))
                out.append(ExceptionalObject((link,) + obj.chain,
                                             tuple(int(x) for x in char)))
    return out


def tree_length(tree: SodTree) -> int:
    """Number of leaves, computed without materializing them."""
    if tree.kind == "unit":
        return 1
    return sum(tree_length(child) for block in tree.blocks for _, child in block.copies)


def all_crossings(tree: SodTree):
    """Yield ``(problem, crossing)`` for every distinct wall in the tree."""
    seen = set()
    stack = [tree]
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        for block in node.blocks:
            yield node.problem, block.crossing
            for _, child in block.copies[:1]:
                stack.append(child)


# Chamber graph ------------------------------------------------------------------

@dataclass
class ChamberGraph:
    nodes: list = field(default_factory=list)   # signatures, empty chamber last
    edges: list = field(default_factory=list)   # (i, j, normal)


def _sample_points(P: GitProblem, h):
    """Points on the hyperplane ``h``: one per relative-interior wall piece."""
    r = P.rank
    chart = lattice.hyperplane_coordinates(h)
    if r == 1:
        return [(Fraction(0),)]
    # Sample the arrangement induced on the hyperplane by the other hyperplanes.
    if r == 2:
        cands = [(Fraction(1),), (Fraction(-1),)]
    else:
        cands = []
        rng = range(-3, 4)
        for v in itertools.product(rng, repeat=r - 1):
            if any(v):
                cands.append(tuple(Fraction(x) + Fraction(1, _prime(k + 5))
                                   for k, x in enumerate(v)))
    return [chart.embed(v) for v in cands]


def chamber_graph(P: GitProblem) -> ChamberGraph:
    """Chambers of the secondary fan and their adjacencies across walls.

    Nodes are found by pushing sample points on every wall piece slightly to
    both sides. For rank at most two the sampling is exhaustive; above that
    it is a fixed grid, which is enough for desk-scale examples.
    """
    P = validate(P)
    index = {}
    edges = set()

    def node(sig):
        if sig not in index:
            index[sig] = len(index)
        return index[sig]

    hs = hyperplanes(P)
    for h in hs:
        for p in _sample_points(P, h):
            fixed = [P.columns[i] for i in range(P.n) if lattice.dot(P.columns[i], h) == 0]
            if lattice.cone_member(fixed, p) is not Membership.RELATIVE_INTERIOR:
                continue
            eps = _push(hs, h, p)
            try:
                a = chamber_signature(P, tuple(x + eps * y for x, y in zip(p, h)))
                b = chamber_signature(P, tuple(x - eps * y for x, y in zip(p, h)))
            except OnWall:
                continue
            if a != b:
                i, j = sorted((node(a), node(b)))
                edges.add((i, j, tuple(h)))
    sigs = sorted(index, key=lambda s: (len(s) == 0, sorted(s)))
    order = {s: k for k, s in enumerate(sigs)}
    remap = {index[s]: order[s] for s in sigs}
    g = ChamberGraph(nodes=sigs)
    g.edges = sorted({(min(remap[i], remap[j]), max(remap[i], remap[j]), h)
                      for i, j, h in edges})
    return g


def _push(hs, h, p):
    """Step size along ``h`` that crosses no other hyperplane from ``p``."""
    eps = Fraction(1, 2)
    for g in hs:
        if g == h:
            continue
        a = lattice.dot(g, p)
        b = lattice.dot(g, h)
        if a and b:
            eps = min(eps, abs(Fraction(a) / b) / 2)
    return eps
