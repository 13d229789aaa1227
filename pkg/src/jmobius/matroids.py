"""Matroids given by their bases, lattices of flats, and subspace lattices.

Every matroid here is tiny (ground set of at most a dozen elements), so the
bases set is stored explicitly and rank/closure are computed from it.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

import numpy as np

from .errors import ArityError, ExchangeAxiomError, FixtureError, SizeBoundError
from .invariants import RankedLatticeView
from .laurent import LaurentPoly
from .poset import Poset, is_modular_lattice


class Matroid:
    """A matroid on ``range(ground_size)`` described by its bases."""

    def __init__(self, ground_size: int, bases, name: str | None = None, check: bool = True):
        self.ground_size = int(ground_size)
        self.bases = frozenset(frozenset(int(e) for e in b) for b in bases)
        self.name = name
        if check:
            self._validate()

    def _validate(self):
        if not self.bases:
            raise ExchangeAxiomError("a matroid needs at least one basis")
        sizes = {len(b) for b in self.bases}
        if len(sizes) != 1:
            raise ExchangeAxiomError("bases have different sizes")
        for b in self.bases:
            if any(not 0 <= e < self.ground_size for e in b):
                raise ArityError("basis element outside the ground set")
        for b1 in self.bases:
            for b2 in self.bases:
                for e in b1 - b2:
                    rest = b1 - {e}
                    if not any(rest | {f} in self.bases for f in b2 - b1):
                        raise ExchangeAxiomError(
                            f"exchange fails for {sorted(b1)}, {sorted(b2)}, e={e}")

    @property
    def rank(self) -> int:
        return len(next(iter(self.bases)))

    @property
    def ground(self) -> frozenset:
        return frozenset(range(self.ground_size))

    def rank_of(self, S) -> int:
        S = frozenset(S)
        return max(len(S & b) for b in self.bases)

    def closure(self, S) -> frozenset:
        S = frozenset(S)
        r = self.rank_of(S)
        return frozenset(e for e in range(self.ground_size) if self.rank_of(S | {e}) == r)

    def is_independent(self, S) -> bool:
        S = frozenset(S)
        return any(S <= b for b in self.bases)

    @cached_property
    def loops(self) -> frozenset:
        return self.ground - frozenset().union(*self.bases)

    @cached_property
    def coloops(self) -> frozenset:
        return frozenset.intersection(*self.bases)

    @cached_property
    def circuits(self) -> tuple[frozenset, ...]:
        found: list[frozenset] = []
        for k in range(1, self.rank + 2):
            for S in itertools.combinations(range(self.ground_size), k):
                S = frozenset(S)
                if any(c <= S for c in found):
                    continue
                if not self.is_independent(S):
                    found.append(S)
        return tuple(found)

    def __eq__(self, other):
        if not isinstance(other, Matroid):
            return NotImplemented
        return self.ground_size == other.ground_size and self.bases == other.bases

    def __hash__(self):
        return hash((self.ground_size, self.bases))

    def __repr__(self):
        tag = f"{self.name}: " if self.name else ""
        return f"Matroid({tag}ground={self.ground_size}, rank={self.rank}, bases={len(self.bases)})"


# -- constructors ------------------------------------------------------------------------

def from_bases(n: int, bases, name: str | None = None) -> Matroid:
    return Matroid(n, bases, name=name)


def uniform(r: int, n: int) -> Matroid:
    if not 0 <= r <= n:
        raise ArityError(f"need 0 <= r <= n, got r={r}, n={n}")
    return Matroid(n, itertools.combinations(range(n), r), name=f"U({r},{n})", check=False)


def boolean_matroid(n: int) -> Matroid:
    m = uniform(n, n)
    m.name = f"B{n}"
    return m


def _forest_rank(n_vertices: int, edges) -> tuple[int, bool]:
    parent = list(range(n_vertices))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    acyclic = True
    merges = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            acyclic = False
        else:
            parent[ru] = rv
            merges += 1
    return merges, acyclic


def graphic(edges: Sequence[tuple[int, int]], name: str | None = None) -> Matroid:
    """Cycle matroid: ground element i is edge ``edges[i]``; bases are spanning forests."""
    edges = [tuple(e) for e in edges]
    verts = sorted({v for e in edges for v in e})
    index = {v: i for i, v in enumerate(verts)}
    es = [(index[u], index[v]) for u, v in edges]
    r, _ = _forest_rank(len(verts), es)
    bases = [S for S in itertools.combinations(range(len(es)), r)
             if _forest_rank(len(verts), [es[i] for i in S])[1]]
    return Matroid(len(es), bases, name=name, check=False)


def dual(M: Matroid) -> Matroid:
    g = M.ground
    name = f"{M.name}*" if M.name else None
    return Matroid(M.ground_size, [g - b for b in M.bases], name=name, check=False)


def direct_sum(M: Matroid, N: Matroid) -> Matroid:
    k = M.ground_size
    bases = [b1 | {e + k for e in b2} for b1 in M.bases for b2 in N.bases]
    name = f"{M.name}+{N.name}" if M.name and N.name else None
    return Matroid(k + N.ground_size, bases, name=name, check=False)


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = [[v % p for v in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [v * inv % p for v in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, int(p ** 0.5) + 1))


def vector_matroid(matrix: Sequence[Sequence[int]], p: int, name: str | None = None) -> Matroid:
    """Column matroid of an integer matrix read over GF(p)."""
    if not _is_prime(p):
        raise ArityError(f"{p} is not prime")
    rows = [list(r) for r in matrix]
    ncols = len(rows[0]) if rows else 0
    cols = [[row[j] for row in rows] for j in range(ncols)]
    full = _rank_mod_p(cols, p) if cols else 0
    bases = [S for S in itertools.combinations(range(ncols), full)
             if _rank_mod_p([cols[j] for j in S], p) == full] if ncols else [()]
    return Matroid(ncols, bases, name=name, check=False)


def delete(M: Matroid, e: int) -> Matroid:
    keep = [b for b in M.bases if e not in b] or [b - {e} for b in M.bases]
    return _drop(M, e, keep)


def contract(M: Matroid, e: int) -> Matroid:
    keep = [b - {e} for b in M.bases if e in b] or list(M.bases)
    return _drop(M, e, keep)


def _drop(M: Matroid, e: int, bases) -> Matroid:
    relabel = {x: x - (x > e) for x in range(M.ground_size) if x != e}
    return Matroid(M.ground_size - 1, [{relabel[x] for x in b} for b in bases], check=False)


def matroid_rank(M: Matroid, S) -> int:
    return M.rank_of(S)


def closure(M: Matroid, S) -> frozenset:
    return M.closure(S)


# -- lattices of flats --------------------------------------------------------------------

def flats(M: Matroid) -> list[frozenset]:
    """All closed sets, sorted by (rank, elements)."""
    start = M.closure(())
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for F in frontier:
            for e in range(M.ground_size):
                if e not in F:
                    G = M.closure(F | {e})
                    if G not in seen:
                        seen.add(G)
                        nxt.append(G)
        frontier = nxt
    return sorted(seen, key=lambda F: (M.rank_of(F), sorted(F)))


def _set_label(S) -> str:
    return "{" + ",".join(str(e) for e in sorted(S)) + "}"


def flats_lattice(M: Matroid) -> RankedLatticeView:
    fl = flats(M)
    n = len(fl)
    leq = np.array([[fl[i] <= fl[j] for j in range(n)] for i in range(n)], dtype=bool)
    p = Poset(leq, labels=[_set_label(F) for F in fl], ranks=[M.rank_of(F) for F in fl])
    return RankedLatticeView.of(p)


def _subspaces(q: int, n: int):
    """Canonical reduced-row-echelon bases of every subspace of GF(q)^n."""
    for k in range(n + 1):
        for pivots in itertools.combinations(range(n), k):
            free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n)
                    if j not in pivots]
            for vals in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i, pc in enumerate(pivots):
                    rows[i][pc] = 1
                for (i, j), v in zip(free, vals):
                    rows[i][j] = v
                yield k, tuple(tuple(r) for r in rows)


def _span(rows, q: int, n: int) -> frozenset:
    out = set()
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        out.add(tuple(sum(c * r[j] for c, r in zip(coeffs, rows)) % q for j in range(n)))
    if not rows:
        out.add((0,) * n)
    return frozenset(out)


def subspace_lattice(q: int, n: int, max_vectors: int = 81) -> RankedLatticeView:
    """L_q^n, all subspaces of GF(q)^n ordered by inclusion and ranked by dimension."""
    if not _is_prime(q):
        raise ArityError(f"{q} is not prime")
    if q ** n > max_vectors:
        raise SizeBoundError(f"q^n = {q ** n} exceeds the bound {max_vectors}")
    subs = list(_subspaces(q, n))
    spans = [_span(rows, q, n) for _, rows in subs]
    m = len(subs)
    leq = np.array([[spans[i] <= spans[j] for j in range(m)] for i in range(m)], dtype=bool)
    labels = ["<" + ",".join("".join(map(str, r)) for r in rows) + ">" for _, rows in subs]
    p = Poset(leq, labels=labels, ranks=[k for k, _ in subs])
    return RankedLatticeView.of(p)


def is_modular_matroid(M: Matroid) -> bool:
    return is_modular_lattice(flats_lattice(M).poset)


def components(M: Matroid) -> list[frozenset]:
    parent = list(range(M.ground_size))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for c in M.circuits:
        c = sorted(c)
        for e in c[1:]:
            parent[find(e)] = find(c[0])
    groups: dict[int, set] = {}
    for e in range(M.ground_size):
        groups.setdefault(find(e), set()).add(e)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_connected(M: Matroid) -> bool:
    return len(components(M)) <= 1


# -- subdivisions and valuations -----------------------------------------------------------

@dataclass
class SubdivisionFixture:
    """A matroid polytope subdivision given as data.

    ``intersections`` maps each set (size >= 2) of piece indices to the matroid
    of the common face, or ``None`` when the pieces do not meet.
    """
    parent: Matroid
    pieces: list[Matroid]
    intersections: dict = field(default_factory=dict)
    name: str | None = None

    def validate(self) -> None:
        k = len(self.pieces)
        if k == 0:
            raise FixtureError("subdivision has no pieces")
        for i, piece in enumerate(self.pieces):
            if piece.ground_size != self.parent.ground_size:
                raise FixtureError(f"piece {i} has a different ground set")
            if not piece.bases <= self.parent.bases:
                raise FixtureError(f"piece {i} has a vertex outside the parent polytope")
        covered = frozenset().union(*(p.bases for p in self.pieces))
        if covered != self.parent.bases:
            raise FixtureError("pieces do not use every vertex of the parent polytope")
        for size in range(2, k + 1):
            for S in itertools.combinations(range(k), size):
                S = frozenset(S)
                common = frozenset.intersection(*(self.pieces[i].bases for i in S))
                given = self.intersections.get(S, "missing")
                if given == "missing":
                    if common:
                        raise FixtureError(f"no intersection supplied for pieces {sorted(S)}")
                    continue
                if given is None:
                    if common:
                        raise FixtureError(f"pieces {sorted(S)} share vertices")
                elif given.bases != common:
                    raise FixtureError(f"intersection for {sorted(S)} has the wrong vertices")


@dataclass
class ValuationReport:
    lhs: LaurentPoly
    rhs: LaurentPoly
    terms: list[tuple[tuple[int, ...], int, LaurentPoly]]

    @property
    def residual(self) -> LaurentPoly:
        return self.lhs - self.rhs


def valuation_check(fix: SubdivisionFixture,
                    invariant: Callable[[Matroid], LaurentPoly]) -> ValuationReport:
    """Compare f(parent) with Σ over nonempty piece sets S of (-1)^(|S|-1) f(∩ S)."""
    fix.validate()
    lhs = invariant(fix.parent)
    rhs = LaurentPoly()
    terms = []
    k = len(fix.pieces)
    for size in range(1, k + 1):
        sign = 1 if size % 2 else -1
        for S in itertools.combinations(range(k), size):
            M = fix.pieces[S[0]] if size == 1 else fix.intersections.get(frozenset(S))
            if M is None:
                continue  # empty face contributes f(empty) = 0
            val = invariant(M)
            terms.append((S, sign, val))
            rhs = rhs + sign * val
    return ValuationReport(lhs, rhs, terms)


def u24_split_fixture() -> SubdivisionFixture:
    """The hypersimplex Δ(2,4) cut by x0 + x1 = 1 into two pieces.

    Elements are 0..3; the pieces drop the basis {0,1}, resp. {2,3}.
    """
    U = uniform(2, 4)
    m1 = Matroid(4, U.bases - {frozenset({0, 1})}, name="U24-minus-01")
    m2 = Matroid(4, U.bases - {frozenset({2, 3})}, name="U24-minus-23")
    m12 = Matroid(4, U.bases - {frozenset({0, 1}), frozenset({2, 3})}, name="U24-common")
    return SubdivisionFixture(U, [m1, m2], {frozenset({0, 1}): m12}, name="u24-split")


# -- JSON -------------------------------------------------------------------------------

def matroid_from_json(doc: dict) -> Matroid:
    kind = doc.get("type")
    if kind == "uniform":
        return uniform(int(doc["r"]), int(doc["n"]))
    if kind == "boolean":
        return boolean_matroid(int(doc["n"]))
    if kind == "graphic":
        return graphic([tuple(e) for e in doc["edges"]], name=doc.get("name"))
    if kind == "bases":
        return from_bases(int(doc["ground"]), doc["bases"], name=doc.get("name"))
    if kind == "dual":
        return dual(matroid_from_json(doc["of"]))
    if kind == "direct_sum":
        parts = [matroid_from_json(d) for d in doc["parts"]]
        if not parts:
            raise ArityError("direct_sum needs at least one part")
        out = parts[0]
        for m in parts[1:]:
            out = direct_sum(out, m)
        return out
    if kind == "vector":
        return vector_matroid(doc["matrix"], int(doc["p"]), name=doc.get("name"))
    raise ValueError(f"unknown matroid type {kind!r}")


def matroid_to_json(M: Matroid) -> dict:
    doc = {"type": "bases", "ground": M.ground_size,
           "bases": sorted(sorted(b) for b in M.bases)}
    if M.name:
        doc["name"] = M.name
    return doc


def fixture_from_json(doc: dict) -> SubdivisionFixture:
    parent = matroid_from_json(doc["parent"])
    pieces = [matroid_from_json(d) for d in doc["pieces"]]
    inter = {}
    for item in doc.get("intersections", []):
        S = frozenset(item["pieces"])
        inter[S] = matroid_from_json(item["matroid"]) if item.get("matroid") else None
    return SubdivisionFixture(parent, pieces, inter, name=doc.get("name"))


def fixture_to_json(fix: SubdivisionFixture) -> dict:
    return {
        "name": fix.name,
        "parent": matroid_to_json(fix.parent),
        "pieces": [matroid_to_json(m) for m in fix.pieces],
        "intersections": [{"pieces": sorted(S), "matroid": matroid_to_json(m) if m else None}
                          for S, m in sorted(fix.intersections.items(), key=lambda kv: sorted(kv[0]))],
    }


# -- small simple matroids up to isomorphism -------------------------------------------------

def _linear_space_bases(n: int, lines) -> list[tuple[int, ...]]:
    return [S for S in itertools.combinations(range(n), 3)
            if not any(set(S) <= L for L in lines)]


def _rank2_flats(n: int, lines) -> list[frozenset]:
    covered = set()
    for L in lines:
        covered |= {frozenset(pr) for pr in itertools.combinations(sorted(L), 2)}
    pairs = [frozenset(pr) for pr in itertools.combinations(range(n), 2)
             if frozenset(pr) not in covered]
    return list(lines) + pairs


def _disjoint_families(flats_):
    """All families of pairwise disjoint sets (including the empty family)."""
    def rec(i, used, chosen):
        if i == len(flats_):
            yield list(chosen)
            return
        yield from rec(i + 1, used, chosen)
        F = flats_[i]
        if not (F & used):
            chosen.append(F)
            yield from rec(i + 1, used | F, chosen)
            chosen.pop()
    yield from rec(0, frozenset(), [])


def _incidence_graph(n: int, lines):
    import networkx as nx
    g = nx.Graph()
    g.add_nodes_from(((("p", i), {"kind": "p"}) for i in range(n)))
    for j, L in enumerate(lines):
        g.add_node(("l", j), kind="l")
        g.add_edges_from((("l", j), ("p", i)) for i in L)
    return g


def _dedupe(spaces):
    import networkx as nx
    from networkx.algorithms.isomorphism import categorical_node_match
    match = categorical_node_match("kind", None)
    buckets: dict = {}
    out = []
    for n, lines in spaces:
        deg = sorted(sum(i in L for L in lines) for i in range(n))
        key = (n, tuple(sorted(len(L) for L in lines)), tuple(deg))
        g = _incidence_graph(n, lines)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(g, h, node_match=match) for h in bucket):
            continue
        bucket.append(g)
        out.append((n, lines))
    return out


def simple_rank3_matroids(max_ground: int) -> list[Matroid]:
    """Simple rank-3 matroids with at most ``max_ground`` points, one per isomorphism class.

    A rank-3 simple matroid is a linear space: its nontrivial lines are sets of
    >= 3 points, two of which share at most one point.  Each class arises from
    one on fewer points by adding a point to a family of pairwise disjoint
    rank-2 flats, or from a line plus one free point.
    """
    by_size: dict[int, list] = {3: [(3, [])]}
    for n in range(4, max_ground + 1):
        cand = [(n, [frozenset(range(n - 1))])]       # n-1 collinear points + 1 free
        for m, lines in by_size.get(n - 1, []):
            new = m
            for fam in _disjoint_families(_rank2_flats(m, lines)):
                extended = [L | {new} if L in fam else L for L in lines]
                extended += [F | {new} for F in fam if len(F) == 2]
                cand.append((n, [frozenset(L) for L in extended]))
        by_size[n] = _dedupe(cand)
    out = []
    for n in range(3, max_ground + 1):
        for k, (m, lines) in enumerate(by_size.get(n, [])):
            lines = sorted((sorted(L) for L in lines))
            name = f"rank3-n{m}-{k}"
            out.append(Matroid(m, _linear_space_bases(m, [set(L) for L in lines]),
                               name=name, check=False))
    return out


def simple_matroids(max_ground: int, max_rank: int) -> list[Matroid]:
    """Loopless matroids without parallel elements, rank 1..max_rank, up to isomorphism."""
    if max_rank > 3:
        raise SizeBoundError("enumeration is implemented up to rank 3")
    out: list[Matroid] = []
    if max_rank >= 1 and max_ground >= 1:
        out.append(uniform(1, 1))
    if max_rank >= 2:
        out.extend(uniform(2, n) for n in range(2, max_ground + 1))
    if max_rank >= 3 and max_ground >= 3:
        out.extend(simple_rank3_matroids(max_ground))
    return out


def k33_edges() -> list[tuple[int, int]]:
    return [(a, b) for a in range(3) for b in range(3, 6)]


def k_edges(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))
