"""Finite posets stored as a dense boolean order matrix.

Elements are the integers ``0..size-1``.  A :class:`Poset` is immutable; every
derived structure (covers, flags, join/meet tables) is computed lazily and
cached on the instance.
"""
from __future__ import annotations

from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CycleError, NotALatticeError, OrderError, RankError


class Poset:
    """A finite partial order.

    ``leq[x][y]`` is true iff ``x <= y``.  ``ranks`` is optional; when given it
    must be a grading (covers raise the rank by exactly one, minimal elements
    have rank 0).
    """

    def __init__(self, leq, labels: Sequence[str] | None = None,
                 ranks: Sequence[int] | None = None, check: bool = True):
        m = np.array(leq, dtype=bool)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("order matrix must be square")
        m.setflags(write=False)
        self.leq = m
        self.size = m.shape[0]
        if labels is not None and len(labels) != self.size:
            raise ValueError("one label per element required")
        self.labels = tuple(str(s) for s in labels) if labels is not None else None
        self.ranks = tuple(int(r) for r in ranks) if ranks is not None else None
        if check:
            self._check_order()
            if self.ranks is not None:
                self._check_ranks()

    def _check_order(self):
        m = self.leq
        n = self.size
        if not m.diagonal().all():
            raise ValueError("order is not reflexive")
        off = m & m.T & ~np.eye(n, dtype=bool)
        if off.any():
            x, y = (int(v) for v in np.argwhere(off)[0])
            raise CycleError(f"elements {x} and {y} are mutually comparable")
        a = m.astype(np.int64)
        if ((a @ a > 0) & ~m).any():
            raise ValueError("order is not transitive")

    def _check_ranks(self):
        if len(self.ranks) != self.size:
            raise RankError("one rank per element required")
        for x, y in self.covers:
            if self.ranks[y] != self.ranks[x] + 1:
                raise RankError(f"cover {x} < {y} does not raise rank by one")
        for x in self.minimal_elements:
            if self.ranks[x] != 0:
                raise RankError(f"minimal element {x} has nonzero rank")

    # -- basic relations -------------------------------------------------

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x, y])

    def lt(self, x: int, y: int) -> bool:
        return x != y and bool(self.leq[x, y])

    @cached_property
    def up(self) -> tuple[tuple[int, ...], ...]:
        """``up[x]``: elements ``>= x`` in index order."""
        return tuple(tuple(int(v) for v in np.flatnonzero(row)) for row in self.leq)

    @cached_property
    def down(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(int(v) for v in np.flatnonzero(col)) for col in self.leq.T)

    @cached_property
    def linear_extension(self) -> tuple[int, ...]:
        # x < y forces a strictly larger down-set, so sorting by its size works.
        counts = self.leq.sum(axis=0)
        return tuple(sorted(range(self.size), key=lambda i: (int(counts[i]), i)))

    @cached_property
    def covers(self) -> tuple[tuple[int, int], ...]:
        strict = self.leq & ~np.eye(self.size, dtype=bool)
        s = strict.astype(np.int64)
        cov = strict & ~(s @ s > 0)
        return tuple((int(x), int(y)) for x, y in np.argwhere(cov))

    @cached_property
    def minimal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if len(self.down[x]) == 1)

    @cached_property
    def maximal_elements(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.size) if len(self.up[x]) == 1)

    @property
    def bottom(self) -> int | None:
        """The minimum element, or ``None``."""
        mins = self.minimal_elements
        return mins[0] if len(mins) == 1 else None

    @property
    def top(self) -> int | None:
        maxs = self.maximal_elements
        return maxs[0] if len(maxs) == 1 else None

    @property
    def is_ranked(self) -> bool:
        return self.ranks is not None

    @property
    def rank(self) -> int:
        """rk(P): the largest element rank."""
        if self.ranks is None:
            raise RankError("poset carries no ranks")
        return max(self.ranks, default=0)

    def corank(self, x: int) -> int:
        return self.rank - self.ranks[x]

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels is not None else str(x)

    def interval_elements(self, x: int, y: int) -> tuple[int, ...]:
        if not self.leq[x, y]:
            raise OrderError(f"{x} is not <= {y}")
        return tuple(a for a in self.up[x] if self.leq[a, y])

    # -- lattice structure -------------------------------------------------

    @cached_property
    def _join_table(self) -> np.ndarray:
        return _bound_table(self.leq)

    @cached_property
    def _meet_table(self) -> np.ndarray:
        return _bound_table(self.leq.T)

    # -- dunder --------------------------------------------------------------

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if not isinstance(other, Poset):
            return NotImplemented
        return (self.size == other.size and self.ranks == other.ranks
                and bool((self.leq == other.leq).all()))

    def __hash__(self):
        return hash((self.size, self.ranks, self.leq.tobytes()))

    def __repr__(self):
        ranked = f", rank={self.rank}" if self.ranks is not None and self.size else ""
        return f"Poset(size={self.size}, covers={len(self.covers)}{ranked})"


def _bound_table(leq: np.ndarray) -> np.ndarray:
    """Least upper bounds w.r.t. ``leq`` (pass the transpose for meets); -1 if none."""
    n = leq.shape[0]
    below = leq.sum(axis=0)
    table = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            ub = np.flatnonzero(leq[x] & leq[y])
            if ub.size == 0:
                continue
            c = ub[np.argmin(below[ub])]
            if leq[c, ub].all():
                table[x, y] = table[y, x] = c
    return table


class Restriction(NamedTuple):
    """A derived poset together with the original index of each of its elements."""
    poset: Poset
    elements: tuple[int, ...]


# -- constructors ------------------------------------------------------------

def poset_from_covers(size: int, covers, labels=None, ranks=None) -> Poset:
    """Reflexive-transitive closure of a cover (or any generating) relation."""
    m = np.eye(size, dtype=bool)
    for i, j in covers:
        if not (0 <= i < size and 0 <= j < size):
            raise IndexError(f"cover ({i}, {j}) out of range for size {size}")
        if i == j:
            raise CycleError(f"self-cover on element {i}")
        m[i, j] = True
    while True:
        a = m.astype(np.int64)
        nxt = m | (a @ a > 0)
        if (nxt == m).all():
            break
        m = nxt
    off = m & m.T & ~np.eye(size, dtype=bool)
    if off.any():
        raise CycleError("cover relation contains a cycle")
    return Poset(m, labels=labels, ranks=ranks)


def grade(p: Poset) -> Poset:
    """Return ``p`` with ranks computed from its covers (minimal elements get 0)."""
    ranks = [0] * p.size
    lower = {y: [] for y in range(p.size)}
    for x, y in p.covers:
        lower[y].append(x)
    for y in p.linear_extension:
        if lower[y]:
            rs = {ranks[x] for x in lower[y]}
            if len(rs) != 1:
                raise RankError(f"element {y} covers elements of different ranks")
            ranks[y] = rs.pop() + 1
    return Poset(p.leq, labels=p.labels, ranks=ranks)


def chain(n: int) -> Poset:
    """The n-element chain C_n."""
    m = np.triu(np.ones((n, n), dtype=bool))
    return Poset(m, ranks=range(n))


def antichain(n: int) -> Poset:
    return Poset(np.eye(n, dtype=bool), ranks=[0] * n)


def boolean_lattice(n: int) -> Poset:
    """B_n on subsets of {1..n}; element i is the subset with bitmask i."""
    size = 1 << n
    idx = np.arange(size)
    m = (idx[:, None] & idx[None, :]) == idx[:, None]
    labels = ["{" + ",".join(str(k + 1) for k in range(n) if i >> k & 1) + "}"
              for i in range(size)]
    return Poset(m, labels=labels, ranks=[bin(i).count("1") for i in range(size)])


def bowtie() -> Poset:
    """Two minimal elements below two maximal ones; not a lattice."""
    return poset_from_covers(4, [(0, 2), (0, 3), (1, 2), (1, 3)], ranks=[0, 0, 1, 1])


# -- derived posets ------------------------------------------------------------

def flags(p: Poset, k: int) -> list[tuple[int, ...]]:
    """Weakly increasing k-tuples in lexicographic index order."""
    if k == 2:
        return list(_flags2(p))
    if k == 3:
        return list(_flags3(p))
    if k < 1:
        raise ValueError("k must be positive")
    out = [(x,) for x in range(p.size)]
    for _ in range(k - 1):
        out = [t + (y,) for t in out for y in p.up[t[-1]]]
    return out


def _flags2(p):
    cached = p.__dict__.get("_flags2")
    if cached is None:
        cached = tuple((x, y) for x in range(p.size) for y in p.up[x])
        p.__dict__["_flags2"] = cached
    return cached


def _flags3(p):
    cached = p.__dict__.get("_flags3")
    if cached is None:
        up = p.up
        cached = tuple((x, y, z) for x in range(p.size) for y in up[x] for z in up[y])
        p.__dict__["_flags3"] = cached
    return cached


def product(p: Poset, q: Poset) -> Poset:
    """Componentwise order; the pair (a, b) gets index ``a * |q| + b``."""
    m = np.kron(p.leq.astype(np.uint8), q.leq.astype(np.uint8)).astype(bool)
    ranks = None
    if p.ranks is not None and q.ranks is not None:
        ranks = [ra + rb for ra in p.ranks for rb in q.ranks]
    labels = [f"({p.label(a)},{q.label(b)})" for a in range(p.size) for b in range(q.size)]
    return Poset(m, labels=labels, ranks=ranks, check=False)


def opposite(p: Poset) -> Poset:
    ranks = None
    if p.ranks is not None:
        top = p.top
        if top is None:
            raise RankError("cannot re-grade the opposite poset without a maximum")
        ranks = [p.ranks[top] - r for r in p.ranks]
    return Poset(p.leq.T, labels=p.labels, ranks=ranks, check=False)


def _induced(p: Poset, elements: Sequence[int], base: int | None) -> Restriction:
    els = tuple(elements)
    m = p.leq[np.ix_(els, els)]
    ranks = None
    if p.ranks is not None:
        shift = p.ranks[base] if base is not None else 0
        ranks = [p.ranks[e] - shift for e in els]
    labels = [p.label(e) for e in els] if p.labels is not None else None
    return Restriction(Poset(m, labels=labels, ranks=ranks, check=False), els)


def upper_interval(p: Poset, y: int) -> Restriction:
    """L^y = {x : x >= y}, ranks re-based so that y has rank 0."""
    return _induced(p, p.up[y], y)


def lower_interval(p: Poset, y: int) -> Restriction:
    """L_y = {x : x <= y}."""
    return _induced(p, p.down[y], None)


def interval(p: Poset, x: int, y: int) -> Restriction:
    return _induced(p, p.interval_elements(x, y), x)


# -- lattice operations --------------------------------------------------------

def is_lattice(p: Poset) -> bool:
    if p.size == 0:
        return False
    return bool((p._join_table >= 0).all() and (p._meet_table >= 0).all())


def join(p: Poset, x: int, y: int) -> int:
    v = int(p._join_table[x, y])
    if v < 0:
        raise NotALatticeError(f"{x} and {y} have no join")
    return v


def meet(p: Poset, x: int, y: int) -> int:
    v = int(p._meet_table[x, y])
    if v < 0:
        raise NotALatticeError(f"{x} and {y} have no meet")
    return v


def join_all(p: Poset, elements, default: int) -> int:
    """Join of a collection; ``default`` is returned for the empty collection."""
    it = iter(elements)
    acc = next(it, None)
    if acc is None:
        return default
    for e in it:
        acc = join(p, acc, e)
    return acc


def meet_all(p: Poset, elements, default: int) -> int:
    it = iter(elements)
    acc = next(it, None)
    if acc is None:
        return default
    for e in it:
        acc = meet(p, acc, e)
    return acc


def _require_ranked_lattice(p: Poset):
    if not is_lattice(p):
        raise NotALatticeError("poset is not a lattice")
    if p.ranks is None:
        raise RankError("poset carries no ranks")


def _rank_pairs(p: Poset):
    r = np.array(p.ranks, dtype=np.int64)
    lhs = r[:, None] + r[None, :]
    rhs = r[p._join_table] + r[p._meet_table]
    return lhs, rhs


def is_semimodular(p: Poset) -> bool:
    """rk(x) + rk(y) >= rk(x v y) + rk(x ^ y) for all pairs."""
    _require_ranked_lattice(p)
    lhs, rhs = _rank_pairs(p)
    return bool((lhs >= rhs).all())


def is_modular_lattice(p: Poset) -> bool:
    _require_ranked_lattice(p)
    lhs, rhs = _rank_pairs(p)
    return bool((lhs == rhs).all())


def atoms(p: Poset) -> tuple[int, ...]:
    b = p.bottom
    if b is None:
        return ()
    return tuple(y for x, y in p.covers if x == b)


def is_atomic(p: Poset) -> bool:
    if not is_lattice(p):
        raise NotALatticeError("poset is not a lattice")
    b = p.bottom
    ats = atoms(p)
    for x in range(p.size):
        if join_all(p, (a for a in ats if p.leq[a, x]), b) != x:
            return False
    return True


def is_geometric(p: Poset) -> bool:
    return is_semimodular(p) and is_atomic(p)


# -- chain counting ------------------------------------------------------------

def _chain_steps(p: Poset, elements, start: int, steps: int, pin=None):
    """Counts of strict chains of ``steps`` steps from ``start`` ending at each element.

    ``pin=(k, v)`` keeps only chains whose k-th element is v.
    """
    counts = {start: 1}
    if pin is not None and pin[0] == 0:
        counts = {v: c for v, c in counts.items() if v == pin[1]}
    for k in range(1, steps + 1):
        nxt = {}
        for a, c in counts.items():
            for b in elements:
                if b != a and p.leq[a, b]:
                    nxt[b] = nxt.get(b, 0) + c
        if pin is not None and pin[0] == k:
            nxt = {v: c for v, c in nxt.items() if v == pin[1]}
        counts = nxt
        if not counts:
            break
    return counts


def chain_count_c(p: Poset, x: int, y: int, i: int) -> int:
    """Number of chains x = a_0 < a_1 < ... < a_i = y."""
    els = p.interval_elements(x, y)
    if i < 0:
        raise ValueError("chain length must be nonnegative")
    return _chain_steps(p, els, x, i).get(y, 0)


def chain_count_cij(p: Poset, x: int, y: int, z: int, i: int, j: int) -> int:
    """Number of chains a_0 < ... < a_{i+j} with a_0 = x, a_i = y, a_{i+j} = z."""
    if not (p.leq[x, y] and p.leq[y, z]):
        raise OrderError(f"({x}, {y}, {z}) is not a flag")
    if i < 0 or j < 0:
        raise ValueError("chain lengths must be nonnegative")
    els = p.interval_elements(x, z)
    return _chain_steps(p, els, x, i + j, pin=(i, y)).get(z, 0)


def longest_chain(p: Poset, x: int, y: int) -> int:
    """Length of the longest strict chain from x to y."""
    els = p.interval_elements(x, y)
    best = {x: 0}
    for b in sorted(els, key=p.linear_extension.index):
        for a in els:
            if a != b and p.leq[a, b] and a in best:
                best[b] = max(best.get(b, 0), best[a] + 1)
    return best[y]


# -- isomorphism (brute force, small posets) ------------------------------------

def find_isomorphism(p: Poset, q: Poset, respect_ranks: bool = False) -> tuple[int, ...] | None:
    """Return ``phi`` with ``p[x] <= p[y]`` iff ``q[phi x] <= q[phi y]``, or None."""
    if p.size != q.size:
        return None

    def signature(s: Poset, x):
        r = s.ranks[x] if respect_ranks and s.ranks is not None else -1
        return (len(s.down[x]), len(s.up[x]), r)

    sp = [signature(p, x) for x in range(p.size)]
    sq = [signature(q, x) for x in range(q.size)]
    if sorted(sp) != sorted(sq):
        return None
    order = p.linear_extension
    image = [-1] * p.size
    used = [False] * q.size

    def extend(k):
        if k == len(order):
            return True
        x = order[k]
        for c in range(q.size):
            if used[c] or sq[c] != sp[x]:
                continue
            ok = True
            for prev in order[:k]:
                d = image[prev]
                if p.leq[prev, x] != q.leq[d, c] or p.leq[x, prev] != q.leq[c, d]:
                    ok = False
                    break
            if ok:
                image[x] = c
                used[c] = True
                if extend(k + 1):
                    return True
                used[c] = False
        image[x] = -1
        return False

    return tuple(image) if extend(0) else None


def is_isomorphic(p: Poset, q: Poset, respect_ranks: bool = False) -> bool:
    return find_isomorphism(p, q, respect_ranks) is not None


# -- JSON ------------------------------------------------------------------------

def poset_to_json(p: Poset) -> dict:
    doc = {"size": p.size, "covers": [list(c) for c in p.covers]}
    if p.labels is not None:
        doc["labels"] = list(p.labels)
    if p.ranks is not None:
        doc["ranks"] = list(p.ranks)
    return doc


def poset_from_json(doc: dict) -> Poset:
    return poset_from_covers(int(doc["size"]), [tuple(c) for c in doc.get("covers", [])],
                             labels=doc.get("labels"), ranks=doc.get("ranks"))

