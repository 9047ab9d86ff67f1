"""Weighted points on the projective line.

Two families of quotients are handled here:

* ``(P^1)^n`` by ``SL_2`` or ``PGL_2`` with linearization ``O(d)``. The
  chamber structure is cut out by the hyperplanes ``H_I`` where the marks in
  ``I`` weigh exactly as much as the rest. :func:`collection_count_pn`
  counts exceptional objects by walking to a boundary chamber and reducing
  to ``n - 1`` points.
* The Fulton-MacPherson spaces ``F_j`` with linearization ``O(d + a)``.
  :func:`find_abyss_path` certifies that a linearization can be moved to
  an empty chamber crossing only walls with ``|I| <= |I^c|``.

Marks are 1-based, matching the usual labelling of points.
"""

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Optional

from .errors import (EmptyChamber, NoAbyssPath, NoBoundaryPath,
                     NotPGL2Linearizable, OnWall, SignMismatch)
from .lattice import rational_vector
from .toric import _prime

SL2 = "SL2"
PGL2 = "PGL2"
RETRY_SEEDS = 16


@dataclass(frozen=True, order=True)
class MarkSubset:
    """One of the two sides ``{I, I^c}`` of a wall, in canonical form.

    The canonical side is the smaller one; when both have ``n / 2`` marks it
    is the side containing mark 1.
    """

    marks: tuple
    n: int

    @classmethod
    def of(cls, marks, n: int) -> "MarkSubset":
        I = frozenset(marks)
        if not I <= frozenset(range(1, n + 1)):
            raise ValueError(f"marks {sorted(I)} out of range 1..{n}")
        Ic = frozenset(range(1, n + 1)) - I
        if len(Ic) < len(I) or (len(I) == len(Ic) and 1 not in I):
            I = Ic
        return cls(tuple(sorted(I)), n)

    @property
    def complement(self) -> tuple:
        return tuple(i for i in range(1, self.n + 1) if i not in self.marks)

    @property
    def balanced(self) -> bool:
        return 2 * len(self.marks) == self.n

    def __str__(self):
        return "{" + ",".join(map(str, self.marks)) + "}"


@dataclass(frozen=True)
class ParityCount:
    even: int
    odd: int

    def __add__(self, other):
        return ParityCount(self.even + other.even, self.odd + other.odd)

    def doubled(self) -> "ParityCount":
        # P^1-bundle: the second copy is twisted by O(1), which swaps parity.
        return ParityCount(self.even + self.odd, self.odd + self.even)

    @property
    def total(self) -> int:
        return self.even + self.odd


@dataclass(frozen=True)
class PnLinearization:
    d: tuple
    group: str = SL2

    def __post_init__(self):
        object.__setattr__(self, "d", rational_vector(self.d))
        if len(self.d) < 3:
            raise ValueError("need at least three marks")
        if any(x <= 0 for x in self.d):
            raise ValueError("weights must be positive")
        if self.group not in (SL2, PGL2):
            raise ValueError(f"unknown group {self.group!r}")
        if self.group == PGL2 and not pgl2_linearizable(self.d):
            raise NotPGL2Linearizable(f"sum of {cleared_weights(self.d)} is odd")


@dataclass(frozen=True)
class FmLinearization:
    """``O(d + a)`` on the ``j``-th Fulton-MacPherson space of ``n`` marks.

    ``a`` maps frozensets of marks to nonpositive rationals; a missing key
    means ``a_S = 0``. ``bound`` is the smallest ``|S|`` carrying a divisor
    (default ``max(2, n - j - 1)``); ``mu_bound`` is the one used for the
    anticanonical weight of a wall (default ``max(2, n - j + 1)``).
    """

    j: int
    d: tuple
    a: dict = field(default_factory=dict)
    bound: Optional[int] = None
    mu_bound: Optional[int] = None
    ample: bool = True

    def __post_init__(self):
        d = rational_vector(self.d)
        object.__setattr__(self, "d", d)
        n = len(d)
        if self.bound is None:
            object.__setattr__(self, "bound", max(2, n - self.j - 1))
        if self.mu_bound is None:
            object.__setattr__(self, "mu_bound", max(2, n - self.j + 1))
        a = {}
        for S, v in dict(self.a).items():
            S = frozenset(S)
            v = Fraction(v)
            if not S <= frozenset(range(1, n + 1)):
                raise ValueError(f"subset {sorted(S)} out of range")
            if len(S) < self.bound:
                raise ValueError(f"no divisor for |S| = {len(S)} on F_{self.j}")
            if v > 0:
                raise ValueError(f"a_{sorted(S)} = {v} is positive")
            if v:
                a[S] = v
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.d)

    def __hash__(self):
        return hash((self.j, self.d, frozenset(self.a.items()), self.bound, self.mu_bound))


# Integer scaling -------------------------------------------------------------------

def cleared_weights(d) -> tuple:
    """Smallest integer multiple of ``d`` obtained by clearing denominators."""
    d = rational_vector(d)
    den = reduce(lambda x, y: x * y // math.gcd(x, y), (q.denominator for q in d), 1)
    return tuple(int(q * den) for q in d)


def pgl2_linearizable(d) -> bool:
    return sum(cleared_weights(d)) % 2 == 0


# (P^1)^n ---------------------------------------------------------------------------

def hm_weight_pn(d, I) -> Fraction:
    """Hilbert-Mumford weight when the marks in ``I`` sit at the repelling point."""
    d = rational_vector(d)
    I = set(I.marks if isinstance(I, MarkSubset) else I)
    inside = sum((x for k, x in enumerate(d, 1) if k in I), Fraction(0))
    return (2 * inside - sum(d)) / 2


def is_empty_pn(d) -> bool:
    d = rational_vector(d)
    total = sum(d)
    return any(x > total - x for x in d)


def is_semistable_pn(d, blocks) -> bool:
    """Semistability of a configuration given by its coincidence blocks."""
    return all(hm_weight_pn(d, block) <= 0 for block in blocks)


@lru_cache(maxsize=None)
def canonical_subsets(n: int) -> tuple:
    out = []
    for k in range(1, n // 2 + 1):
        for I in itertools.combinations(range(1, n + 1), k):
            if 2 * k < n or 1 in I:
                out.append(MarkSubset(I, n))
    return tuple(out)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def chamber_sign_pn(d) -> dict:
    """Sign of ``sum_I d - sum_{I^c} d`` for every canonical subset."""
    d = rational_vector(d)
    return {I: _sign(hm_weight_pn(d, I)) for I in canonical_subsets(len(d))}


class _Arrangement:
    """The walls ``g_I(d) = hm_weight(d, I) + c_I = 0`` for canonical ``I``.

    ``offsets`` holds the constants ``c_I`` (all zero on ``(P^1)^n``).
    """

    def __init__(self, n, offsets=None):
        self.n = n
        self.subsets = canonical_subsets(n)
        offsets = offsets or {}
        self._const = [Fraction(offsets.get(I, 0)) for I in self.subsets]
        self._idx = [tuple(k - 1 for k in I.marks) for I in self.subsets]

    def values(self, d):
        half = sum(d) / 2
        return [sum(d[k] for k in idx) - half + c for idx, c in zip(self._idx, self._const)]

    def rates(self, v):
        half = sum(v) / 2
        return [sum(v[k] for k in idx) - half for idx in self._idx]

    def signature(self, d):
        vals = self.values(d)
        if any(v == 0 for v in vals):
            raise OnWall(f"{_fmt(d)} lies on a wall")
        return tuple(v > 0 for v in vals)

    def perturb(self, d, seed):
        """Nudge a witness inside its chamber along prime reciprocals."""
        vals = [abs(v) for v in self.values(d)]
        scale = min(vals) / (2 * self.n) if vals else Fraction(1)
        scale = min(scale, min(d) / 2)
        sig = self.signature(d)
        for _ in range(64):
            e = tuple(x + scale / _prime(seed * self.n + k + 3) for k, x in enumerate(d))
            if self.signature(e) == sig:
                return e
            scale /= 2
        return d

    def move(self, d, v, limit=None, vals=None):
        """Walk from ``d`` along ``v`` to the first wall and just past it.

        Returns ``(s1, crossed_index, new_witness)`` or None if the first
        crossing is a tie, runs into ``limit`` or does not exist.
        """
        vals = self.values(d) if vals is None else vals
        rates = self.rates(v)
        hits = {}
        for k, (g, r) in enumerate(zip(vals, rates)):
            if r:
                s = -g / r
                if s > 0:
                    hits.setdefault(s, []).append(k)
        if not hits:
            return None
        ordered = sorted(hits)
        s1 = ordered[0]
        if len(hits[s1]) > 1 or (limit is not None and s1 >= limit):
            return None
        s2 = ordered[1] if len(ordered) > 1 else s1 + 1
        if limit is not None:
            s2 = min(s2, limit)
        mid = (s1 + s2) / 2
        return s1, hits[s1][0], tuple(x + mid * y for x, y in zip(d, v))


def _fmt(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _directions(n, seed):
    dirs = [(i, sgn) for i in range(n) for sgn in (1, -1)]
    k = seed % len(dirs)
    return dirs[k:] + dirs[:k]


def _axis_vector(n, i, sgn):
    return tuple(Fraction(sgn if k == i else 0) for k in range(n))


def boundary_markings(d) -> list:
    """Marks ``i0`` for which the chamber of ``d`` is a boundary chamber.

    The chamber is boundary along ``d_{i0} = 0`` when shrinking ``d_{i0}``
    to zero changes no sign, i.e. every ``J`` avoiding ``i0`` has
    ``f_J`` and ``f_{J + i0}`` of the same strict sign. As
    ``f_{J + i0} = f_J + 2 d_{i0}``, this says no ``f_J`` lies in
    ``[-2 d_{i0}, 0]``.
    """
    d = rational_vector(d)
    n = len(d)
    total = sum(d)
    sums = [Fraction(0)] * (1 << n)
    for mask in range(1, 1 << n):
        low = (mask & -mask).bit_length() - 1
        sums[mask] = sums[mask & (mask - 1)] + d[low]
    out = []
    for i0 in range(n):
        bit = 1 << i0
        lo = -2 * d[i0]
        if all(not (lo <= 2 * sums[m] - total <= 0)
               for m in range(1 << n) if not m & bit):
            out.append(i0 + 1)
    return out


def _reduce(d, i0):
    return tuple(x for k, x in enumerate(d, 1) if k != i0)


def collection_count_pn(d, seed: int = 0, marking: Optional[int] = None,
                        method: str = "ray") -> ParityCount:
    """Exceptional objects on ``(P^1)^n // SL_2`` at ``O(d)``, split by parity.

    Walk from ``d`` crossing walls only away from the symmetric point; each
    wall ``H_I`` with ``|I| < |I^c|`` contributes ``|I^c| - |I|`` copies of
    ``[pt / Z_2]`` (one object of each parity) and balanced walls are
    equivalences. The walk stops either in a boundary chamber, where the
    quotient is a ``P^1``-bundle over an ``n - 1`` point quotient and the
    count doubles, or by crossing a singleton wall into the empty chamber.

    Args:
      d: positive weights.
      seed: selects the perturbation and the exploration order.
      marking: only accept boundary chambers along ``d_marking = 0``
        (at the top level; the recursion is unconstrained). Implies the
        search method.
      method: ``"ray"`` continues the straight line from ``O(2, ..., 2)``
        through the chamber; ``"search"`` explores chambers breadth first.
    """
    d = rational_vector(d)
    n = len(d)
    if any(x <= 0 for x in d):
        raise ValueError("weights must be positive")
    if method not in ("ray", "search"):
        raise ValueError(f"unknown method {method!r}")
    arr = _Arrangement(n)
    arr.signature(d)
    if is_empty_pn(d):
        raise EmptyChamber(f"{_fmt(d)} has empty semistable locus")
    if n == 3:
        return ParityCount(1, 1)
    walk = _boundary_walk if method == "search" or marking is not None else _ray_walk
    last = None
    for s in range(seed, seed + RETRY_SEEDS):
        try:
            walls, end, i0 = walk(arr, d, s, marking)
        except NoBoundaryPath as exc:
            last = exc
            continue
        copies = sum(n - 2 * len(arr.subsets[k].marks) for k in walls)
        out = ParityCount(copies, copies)
        if i0 is not None:
            out = out + collection_count_pn(_reduce(end, i0), seed).doubled()
        return out
    raise last


def _ray_walk(arr, d, seed, marking=None):
    """Follow ``c - s (1, ..., 1)`` from a perturbed point ``c`` of the chamber.

    This is the continuation of the line from ``O(2, ..., 2)`` through a
    point of the chamber close to the origin: every unbalanced weight
    increases along it and balanced ones stay put.
    """
    n = arr.n
    c = arr.perturb(d, seed)
    vals = arr.values(c)
    rates = arr.rates(tuple(Fraction(-1) for _ in range(n)))
    events = []
    for k, (g, r) in enumerate(zip(vals, rates)):
        if r and g < 0:
            events.append((-g / r, k))
    zero = min(c)
    events.append((zero, None))
    events.sort(key=lambda e: e[0])
    times = [t for t, _ in events]
    if len(set(times)) != len(times):
        raise NoBoundaryPath("tied crossings on the ray")
    walls = []
    for t, k in events:
        if k is None:
            i0 = c.index(zero) + 1
            end = tuple(x - t for x in c)
            before = tuple(x - (t + _previous_time(events, t)) / 2 for x in c)
            if i0 not in boundary_markings(before):
                raise NoBoundaryPath("ray left the ample cone outside a boundary chamber")
            return tuple(walls), end, i0
        walls.append(k)
        if len(arr.subsets[k].marks) == 1:
            return tuple(walls), None, None
    raise AssertionError("unreachable")


def _previous_time(events, t):
    """Time of the event just before ``t`` (0 if none)."""
    prev = [s for s, _ in events if s < t]
    return prev[-1] if prev else 0


def _boundary_walk(arr, d, seed, marking):
    """Breadth-first search over chambers for the end of a decomposing walk.

    Returns ``(walls, witness, i0)``; ``i0`` is None when the walk ends by
    crossing into the empty chamber.
    """
    n = arr.n
    start = arr.perturb(d, seed)

    def goal(w):
        marks = boundary_markings(w)
        if marking is not None:
            return marking if marking in marks else None
        return marks[0] if marks else None

    seen = {arr.signature(start)}
    queue = deque([(start, (), False)])
    while queue:
        w, walls, into_empty = queue.popleft()
        if into_empty:
            return walls, w, None
        i0 = goal(w)
        if i0 is not None:
            return walls, w, i0
        vals = arr.values(w)
        for i, sgn in _directions(n, seed):
            v = _axis_vector(n, i, sgn)
            step = arr.move(w, v, limit=w[i] if sgn < 0 else None, vals=vals)
            if step is None:
                continue
            _, k, nxt = step
            I = arr.subsets[k]
            if not I.balanced and vals[k] > 0:
                continue  # toward the symmetric point
            if len(I.marks) == 1:
                if marking is None:
                    queue.append((nxt, walls + (k,), True))
                continue
            sig = arr.signature(nxt)
            if sig in seen:
                continue
            seen.add(sig)
            queue.append((nxt, walls + (k,), False))
    raise NoBoundaryPath(f"no boundary chamber reachable from {_fmt(d)}")


def pgl2_count(d, seed: int = 0, marking: Optional[int] = None) -> int:
    """Length of the full exceptional collection on ``(P^1)^n // PGL_2``."""
    d = rational_vector(d)
    if not pgl2_linearizable(d):
        raise NotPGL2Linearizable(f"sum of {cleared_weights(d)} is odd")
    return collection_count_pn(d, seed, marking).even


# Fulton-MacPherson spaces ------------------------------------------------------------

def _subsets_within(marks, lo):
    marks = tuple(marks)
    for k in range(lo, len(marks) + 1):
        yield from itertools.combinations(marks, k)


def fm_offset(lin: FmLinearization, I) -> Fraction:
    """The boundary-divisor part of the weight for the side ``I``."""
    I = set(I.marks if isinstance(I, MarkSubset) else I)
    Ic = set(range(1, lin.n + 1)) - I
    inside = sum((v for S, v in lin.a.items() if S <= I), Fraction(0))
    outside = sum((v for S, v in lin.a.items() if S <= Ic), Fraction(0))
    return outside - inside


def fm_weight(lin: FmLinearization, I) -> Fraction:
    return hm_weight_pn(lin.d, I) + fm_offset(lin, I)


def fm_wall_mu(lin: FmLinearization, I) -> int:
    """Anticanonical weight of the wall ``H_{j,I}`` for the side ``I``."""
    I = tuple(sorted(I.marks if isinstance(I, MarkSubset) else I))
    Ic = tuple(k for k in range(1, lin.n + 1) if k not in I)
    lo = lin.mu_bound
    mu = (len(I) - len(Ic)
          + sum(len(S) - 2 for S in _subsets_within(I, lo))
          - sum(len(S) - 2 for S in _subsets_within(Ic, lo)))
    if _sign(mu) != _sign(len(I) - len(Ic)):
        raise SignMismatch(f"mu={mu} for I={I} disagrees with |I| - |I^c|")
    return mu


def is_empty_fm(lin: FmLinearization, d=None) -> Optional[int]:
    """A mark whose singleton weight is positive, or None.

    Every configuration has each mark in some coincidence set, and the
    singleton is always one, so a positive singleton weight empties the
    semistable locus; if none is positive, distinct points are semistable.
    """
    d = lin.d if d is None else d
    for i in range(1, lin.n + 1):
        if hm_weight_pn(d, (i,)) + fm_offset(lin, (i,)) > 0:
            return i
    return None


@dataclass(frozen=True)
class AbyssCrossing:
    side: tuple          # oriented: its weight goes from negative to positive
    wall: MarkSubset
    point: tuple
    mu: int


@dataclass(frozen=True)
class AbyssCertificate:
    crossings: tuple
    terminal: tuple
    empty_mark: int
    start: tuple
    seed: int = 0
    method: str = "ray"


def _fm_arrangement(lin):
    return _Arrangement(lin.n, {I: fm_offset(lin, I) for I in canonical_subsets(lin.n)})


def _oriented(arr, k, before):
    I = arr.subsets[k]
    return I.marks if before < 0 else I.complement


def find_abyss_path(lin: FmLinearization, seed: int = 0) -> AbyssCertificate:
    """Certify that ``O(d + a)`` slides into the abyss.

    The path moves ``d`` only; ``a`` stays fixed, which is the constant
    offset lift of a path in the ``F_0`` picture. Straight rays that fatten
    one mark are tried first, then a breadth-first search over chambers.

    Raises:
      OnWall: the start lies on a wall.
      NoAbyssPath: no admissible path was found.
    """
    arr = _fm_arrangement(lin)
    arr.signature(lin.d)
    if is_empty_fm(lin) is not None:
        return AbyssCertificate((), lin.d, is_empty_fm(lin), lin.d, seed, "empty")
    n = lin.n
    for s in range(seed, seed + RETRY_SEEDS):
        for i0 in _rotate(list(range(n)), s):
            cert = _ray(lin, arr, i0, s)
            if cert is not None:
                return cert
    cert = _abyss_bfs(lin, arr, seed)
    if cert is not None:
        return cert
    raise NoAbyssPath(f"no admissible path to an empty chamber from {_fmt(lin.d)}")


def _rotate(xs, k):
    k %= len(xs)
    return xs[k:] + xs[:k]


def _ray(lin, arr, i0, seed):
    n = lin.n
    eps = Fraction(1, 1000)
    v = tuple(Fraction(1) if k == i0 else eps / _prime(seed * n + k + 3) for k in range(n))
    w = lin.d
    crossings = []
    for _ in range(2 ** n):
        mark = is_empty_fm(lin, w)
        if mark is not None:
            return AbyssCertificate(tuple(crossings), w, mark, lin.d, seed, "ray")
        step = arr.move(w, v)
        if step is None:
            return None
        s1, k, nxt = step
        before = arr.values(w)[k]
        crossing = _certify(lin, arr, k, before, tuple(x + s1 * y for x, y in zip(w, v)))
        if crossing is None:
            return None
        crossings.append(crossing)
        w = nxt
    return None


def _certify(lin, arr, k, before, point):
    side = _oriented(arr, k, before)
    if 2 * len(side) > lin.n:
        return None
    return AbyssCrossing(tuple(side), arr.subsets[k], point, fm_wall_mu(lin, side))


def _abyss_bfs(lin, arr, seed):
    n = lin.n
    start = arr.perturb(lin.d, seed)
    seen = {arr.signature(start)}
    queue = deque([(start, ())])
    while queue:
        w, crossings = queue.popleft()
        mark = is_empty_fm(lin, w)
        if mark is not None:
            return AbyssCertificate(crossings, w, mark, lin.d, seed, "search")
        for i, sgn in _directions(n, seed):
            v = _axis_vector(n, i, sgn)
            step = arr.move(w, v, limit=w[i] if sgn < 0 else None)
            if step is None:
                continue
            s1, k, nxt = step
            before = arr.values(w)[k]
            crossing = _certify(lin, arr, k, before,
                                tuple(x + s1 * y for x, y in zip(w, v)))
            if crossing is None:
                continue
            sig = arr.signature(nxt)
            if sig in seen:
                continue
            seen.add(sig)
            queue.append((nxt, crossings + (crossing,)))
    return None


# Presets -------------------------------------------------------------------------------

HASSETT_EPSILON = Fraction(1, 10 ** 4)


def hassett_delta(n: int, size: int) -> Fraction:
    """``delta_|S| = 1 / (100 * 2^(n - |S|))``, decreasing as ``|S|`` shrinks."""
    return Fraction(1, 100 * 2 ** (n - size))


def hassett_stages(n: int) -> range:
    """Blow-up stages ``j`` accepted by :func:`hassett_preset`."""
    return range(min(n - 2, -(-n // 2) + 1), n)


def hassett_preset(n: int, j: int) -> FmLinearization:
    """``O(d_0 - delta)`` on ``F_j`` near the symmetric point ``(2, ..., 2)``."""
    if n < 5 or j not in hassett_stages(n):
        raise ValueError(f"stage j={j} is not available for n={n}; "
                         f"use one of {list(hassett_stages(n))}")
    bound = max(2, n - j - 1)
    a = {frozenset(S): -hassett_delta(n, len(S))
         for S in _subsets_within(range(1, n + 1), bound)}
    primes = [p for p in (_prime(k) for k in range(40)) if p >= 7][:n]
    d0 = tuple(2 + HASSETT_EPSILON / p for p in primes)
    return FmLinearization(j, d0, a)
