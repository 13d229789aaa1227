"""The classical incidence algebra of a finite poset.

Functions live on 2-flags ``(x, y)`` with ``x <= y``.  Values are exact: Python
ints, or :class:`~jmobius.laurent.LaurentPoly` where a polynomial ring is needed.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import kernels
from .errors import (BadElementError, InvalidCrossCutError, NotALatticeError,
                     OrderError, PosetMismatchError)
from .poset import (Poset, chain_count_c, flags, is_lattice, join, join_all,
                    longest_chain, meet, meet_all, product)


class IncFn2:
    """A function on Fl^2(P)."""

    __slots__ = ("poset", "values")

    def __init__(self, poset: Poset, values: dict):
        self.poset = poset
        self.values = values

    @classmethod
    def from_callable(cls, poset: Poset, fn) -> "IncFn2":
        return cls(poset, {(x, y): fn(x, y) for (x, y) in flags(poset, 2)})

    def __getitem__(self, flag):
        try:
            return self.values[flag]
        except KeyError:
            raise OrderError(f"{flag} is not a 2-flag of the poset") from None

    def __call__(self, x, y):
        return self[(x, y)]

    def _check(self, other):
        if not isinstance(other, IncFn2):
            return NotImplemented
        if other.poset is not self.poset and other.poset != self.poset:
            raise PosetMismatchError("incidence functions live on different posets")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return IncFn2(self.poset, {k: v + other.values[k] for k, v in self.values.items()})

    def __neg__(self):
        return IncFn2(self.poset, {k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, scalar):
        return IncFn2(self.poset, {k: scalar * v for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, IncFn2):
            return NotImplemented
        return self.poset == other.poset and self.values == other.values

    def __repr__(self):
        return f"IncFn2({self.poset!r}, {len(self.values)} values)"


def delta2(p: Poset) -> IncFn2:
    return IncFn2(p, {(x, y): int(x == y) for (x, y) in flags(p, 2)})


def zeta2(p: Poset) -> IncFn2:
    return IncFn2(p, {f: 1 for f in flags(p, 2)})


def convolve2(f: IncFn2, g: IncFn2) -> IncFn2:
    """(f * g)(x, y) = sum over x <= a <= y of f(x, a) g(a, y)."""
    if f._check(g) is NotImplemented:
        raise TypeError("convolve2 expects two IncFn2")
    p = f.poset
    fv, gv = f.values, g.values
    out = {}
    for (x, y) in flags(p, 2):
        s = 0
        for a in p.up[x]:
            if p.leq[a, y]:
                s = s + fv[(x, a)] * gv[(a, y)]
        out[(x, y)] = s
    return IncFn2(p, out)


def mobius(p: Poset) -> IncFn2:
    """The Möbius function, memoized on the poset."""
    cached = p.__dict__.get("_mobius")
    if cached is None:
        m = kernels.mobius_matrix(p)
        cached = IncFn2(p, {(x, y): m[x][y] for (x, y) in flags(p, 2)})
        p.__dict__["_mobius"] = cached
    return cached


def tensor2(f: IncFn2, g: IncFn2) -> IncFn2:
    """(f x g)((x1,x2),(y1,y2)) = f(x1,y1) g(x2,y2) on the product poset."""
    P, Q = f.poset, g.poset
    pq = product(P, Q)
    m = Q.size
    out = {}
    for (x, y) in flags(pq, 2):
        out[(x, y)] = f.values[(x // m, y // m)] * g.values[(x % m, y % m)]
    return IncFn2(pq, out)


def hall_sum(p: Poset, x: int, y: int) -> int:
    """Alternating sum of chain counts, sum_i (-1)^i c_i(x, y)."""
    if not p.leq[x, y]:
        raise OrderError(f"{x} is not <= {y}")
    return sum((-1) ** i * chain_count_c(p, x, y, i)
               for i in range(longest_chain(p, x, y) + 1))


# -- cross-cuts -------------------------------------------------------------------

@dataclass(frozen=True)
class CrossCut:
    kind: str               # "lower" or "upper"
    interval: tuple[int, int]
    members: frozenset

    def validate(self, p: Poset) -> None:
        x, y = self.interval
        if not p.leq[x, y]:
            raise InvalidCrossCutError(f"[{x}, {y}] is not an interval")
        ivl = set(p.interval_elements(x, y))
        if self.kind == "lower":
            if not self.members <= ivl - {x}:
                raise InvalidCrossCutError("lower cross-cut must lie in [x, y] minus x")
            for b in ivl - self.members - {x}:
                if not any(p.lt(a, b) for a in self.members):
                    raise InvalidCrossCutError(f"element {b} is not above the cut")
        elif self.kind == "upper":
            if not self.members <= ivl - {y}:
                raise InvalidCrossCutError("upper cross-cut must lie in [x, y] minus y")
            for a in ivl - self.members - {y}:
                if not any(p.lt(a, b) for b in self.members):
                    raise InvalidCrossCutError(f"element {a} is not below the cut")
        else:
            raise InvalidCrossCutError(f"unknown cross-cut kind {self.kind!r}")


def atom_cut(p: Poset, x: int, y: int) -> CrossCut:
    """Lower cross-cut of [x, y] made of the elements covering x."""
    covers = set(p.covers)
    ivl = p.interval_elements(x, y)
    return CrossCut("lower", (x, y), frozenset(b for b in ivl if (x, b) in covers))


def coatom_cut(p: Poset, x: int, y: int) -> CrossCut:
    """Upper cross-cut of [x, y] made of the elements covered by y."""
    covers = set(p.covers)
    ivl = p.interval_elements(x, y)
    return CrossCut("upper", (x, y), frozenset(a for a in ivl if (a, y) in covers))


def _cut_subsets(p: Poset, cut: CrossCut):
    """Yield ``(size, hits)`` for every subset A of the cut: ``hits`` is whether
    the join (lower cut) of A equals y, resp. the meet (upper cut) equals x."""
    x, y = cut.interval
    members = sorted(cut.members)
    for k in range(len(members) + 1):
        for A in itertools.combinations(members, k):
            if cut.kind == "lower":
                yield k, join_all(p, A, x) == y
            else:
                yield k, meet_all(p, A, y) == x


def crosscut_sum(p: Poset, cut: CrossCut) -> int:
    """Signed count of cut subsets spanning the interval."""
    if not is_lattice(p):
        raise NotALatticeError("cross-cut sums need a lattice")
    cut.validate(p)
    return sum((-1) ** k for k, hit in _cut_subsets(p, cut) if hit)


def _lattice_bounds(p: Poset):
    if not is_lattice(p):
        raise NotALatticeError("poset is not a lattice")
    if p.size < 2:
        raise BadElementError("lattice needs at least two elements")
    return p.bottom, p.top


def weisner_sum(p: Poset, a: int) -> int:
    """sum over {x : x ^ a = 0} of mu(x, 1); vanishes whenever a != 1."""
    bot, top = _lattice_bounds(p)
    if a == top:
        raise BadElementError("a must differ from the top element")
    mu = mobius(p).values
    return sum(mu[(x, top)] for x in range(p.size) if meet(p, x, a) == bot)


def weisner_sum_dual(p: Poset, a: int) -> int:
    """sum over {x : x v a = 1} of mu(0, x); vanishes whenever a != 0."""
    bot, top = _lattice_bounds(p)
    if a == bot:
        raise BadElementError("a must differ from the bottom element")
    mu = mobius(p).values
    return sum(mu[(bot, x)] for x in range(p.size) if join(p, x, a) == top)
