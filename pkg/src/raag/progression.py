"""Parikh points and arithmetic progressions of them.

An occurrence of a trace pattern is recorded by the letter counts of the
prefix in front of it.  Occurrences straddling a grammar cut come in
arithmetic progressions ``{init + k*delta | 0 <= k <= steps}``; joining two
progressions that agree on shared letters is :func:`amalgamate`.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .alphabet import Letter, parse_letter


def _key(x) -> Letter:
    return x if isinstance(x, Letter) else parse_letter(x)


@dataclass(frozen=True)
class ParikhPoint:
    support: tuple
    counts: tuple

    def __post_init__(self):
        if len(self.support) != len(self.counts):
            raise ValueError("support and counts differ in length")

    @classmethod
    def of(cls, mapping: Mapping, support: Optional[Sequence] = None) -> "ParikhPoint":
        support = tuple(_key(x) for x in (support if support is not None else mapping))
        lookup = {_key(k): v for k, v in mapping.items()}
        return cls(support, tuple(int(lookup.get(x, 0)) for x in support))

    def __getitem__(self, x) -> int:
        return self.counts[self.support.index(_key(x))]

    def as_dict(self) -> dict:
        return dict(zip(self.support, self.counts))

    def project(self, support: Iterable) -> "ParikhPoint":
        support = tuple(_key(x) for x in support)
        return ParikhPoint(support, tuple(self[x] for x in support))

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


@dataclass(frozen=True)
class ArithProgression:
    init: ParikhPoint
    delta: ParikhPoint
    steps: int

    def __post_init__(self):
        if self.init.support != self.delta.support:
            raise ValueError("init and delta must share their support")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        # one canonical form per set: a single point always has zero delta
        if self.steps == 0 or not any(self.delta.counts):
            object.__setattr__(self, "steps", 0)
            object.__setattr__(self, "delta", ParikhPoint(self.init.support, (0,) * len(self.init.counts)))
        if any(c < 0 for c in self.init.counts) or any(c < 0 for c in self.last.counts):
            raise ValueError("progression leaves the nonnegative orthant")

    @classmethod
    def make(cls, support: Sequence, init: Sequence[int], delta: Sequence[int], steps: int) -> "ArithProgression":
        support = tuple(_key(x) for x in support)
        return cls(ParikhPoint(support, tuple(init)), ParikhPoint(support, tuple(delta)), steps)

    @property
    def support(self) -> tuple:
        return self.init.support

    def __len__(self) -> int:
        return self.steps + 1

    def point(self, k: int) -> ParikhPoint:
        if not 0 <= k <= self.steps:
            raise IndexError(k)
        return ParikhPoint(self.support, tuple(i + k * d for i, d in zip(self.init.counts, self.delta.counts)))

    @property
    def first(self) -> ParikhPoint:
        return self.init

    @property
    def last(self) -> ParikhPoint:
        return ParikhPoint(self.support, tuple(i + self.steps * d for i, d in zip(self.init.counts, self.delta.counts)))

    def __iter__(self) -> Iterator[ParikhPoint]:
        return (self.point(k) for k in range(self.steps + 1))

    def __contains__(self, p: ParikhPoint) -> bool:
        p = p.project(self.support)
        k = None
        for c, i, d in zip(p.counts, self.init.counts, self.delta.counts):
            if d == 0:
                if c != i:
                    return False
                continue
            if (c - i) % d:
                return False
            kk = (c - i) // d
            if k is not None and kk != k:
                return False
            k = kk
        return k is None or 0 <= k <= self.steps

    def trimmed(self) -> Optional["ArithProgression"]:
        """The progression without its first and last element."""
        if self.steps < 2:
            return None
        return ArithProgression(self.point(1), self.delta, self.steps - 2)

    def reorder(self, support: Sequence) -> "ArithProgression":
        return ArithProgression(self.init.project(support), self.delta.project(support), self.steps)

    def __str__(self) -> str:
        return f"({self.init},{self.delta},{self.steps})"


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _crt(r1: int, m1: int, r2: int, m2: int) -> Optional[tuple[int, int]]:
    """Solve z = r1 (mod m1), z = r2 (mod m2); return (z mod lcm, lcm) or None."""
    g = gcd(m1, m2)
    if (r2 - r1) % g:
        return None
    lcm = m1 // g * m2
    t = ((r2 - r1) // g * pow(m1 // g, -1, m2 // g)) % (m2 // g) if m2 // g > 1 else 0
    return (r1 + m1 * t) % lcm, lcm


def _solve_single(i: int, d: int, j: int, e: int):
    """Nonnegative-direction parametrisation of i + d*x = j + e*y.

    Returns (x0, y0, ux, uy) with solutions (x0 + ux*t, y0 + uy*t) for all
    integers t, or ``None`` when there is none.  Not both of d, e are zero.
    """
    if d == 0:
        if (i - j) % e:
            return None
        return 0, (i - j) // e, 1, 0
    if e == 0:
        if (j - i) % d:
            return None
        return (j - i) // d, 0, 0, 1
    res = _crt(i % d, d, j % e, e)
    if res is None:
        return None
    z, lcm = res
    lo = max(i, j)
    s = z + _ceil_div(lo - z, lcm) * lcm
    g = gcd(d, e)
    return (s - i) // d, (s - j) // e, e // g, d // g


def amalgamate(p: ArithProgression, q: ArithProgression) -> Optional[ArithProgression]:
    """Points over the union of both supports whose projections lie in p and q.

    Returns ``None`` for the empty set.  The support of the result is p's
    support followed by q's new letters.  Raises ``ValueError`` when the
    shared letters do not constrain either progression and the join is a
    two-dimensional grid (never the case for the progressions arising from
    occurrence matching).
    """
    shared = [x for x in p.support if x in q.support]
    if not shared:
        raise ValueError("amalgamation needs a shared letter")
    pi, pd = p.init.as_dict(), p.delta.as_dict()
    qi, qd = q.init.as_dict(), q.delta.as_dict()
    support = p.support + tuple(x for x in q.support if x not in p.support)

    def build(x0, y0, ux, uy, tmin, tmax):
        def at(t):
            x, y = x0 + ux * t, y0 + uy * t
            return [pi[c] + pd[c] * x if c in pi else qi[c] + qd[c] * y for c in support]

        a, b = at(tmin), at(tmin + 1)
        return ArithProgression.make(support, a, [v - u for u, v in zip(a, b)], tmax - tmin)

    pivot = next((c for c in shared if pd[c] or qd[c]), None)
    if pivot is None:
        if any(pi[c] != qi[c] for c in shared):
            return None
        if p.steps and q.steps:
            raise ValueError("amalgamation is two-dimensional, not an arithmetic progression")
        if p.steps:
            return build(0, 0, 1, 0, 0, p.steps)
        return build(0, 0, 0, 1, 0, q.steps)

    line = _solve_single(pi[pivot], pd[pivot], qi[pivot], qd[pivot])
    if line is None:
        return None
    x0, y0, ux, uy = line
    fixed = None
    for c in shared:
        if c == pivot:
            continue
        # i_c + d_c (x0 + ux t) = i'_c + d'_c (y0 + uy t)
        coef = pd[c] * ux - qd[c] * uy
        rhs = qi[c] + qd[c] * y0 - pi[c] - pd[c] * x0
        if coef == 0:
            if rhs != 0:
                return None
            continue
        if rhs % coef:
            return None
        t = rhs // coef
        if fixed is not None and fixed != t:
            return None
        fixed = t

    tmin, tmax = None, None
    for v0, u, hi in ((x0, ux, p.steps), (y0, uy, q.steps)):
        if u == 0:
            if not 0 <= v0 <= hi:
                return None
            continue
        lo_t, hi_t = _ceil_div(-v0, u), (hi - v0) // u
        tmin = lo_t if tmin is None else max(tmin, lo_t)
        tmax = hi_t if tmax is None else min(tmax, hi_t)
    if fixed is not None:
        if tmin is not None and not tmin <= fixed <= tmax:
            return None
        tmin = tmax = fixed
    if tmin is None or tmin > tmax:
        return None
    return build(x0, y0, ux, uy, tmin, tmax)
