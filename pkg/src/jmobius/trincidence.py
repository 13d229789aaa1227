"""Functions on 3-flags and the ⋗ ("tri") product.

``(f ⋗ g)(x, y, z) = Σ f(x, a, a) g(a, y, b) f(b, b, z)`` over all
``x <= a <= y <= b <= z``.  The product is left-unital with unit ``delta3``,
left- but not right-distributive, and neither commutative nor associative.

The J-function is the unique ``J`` with ``zeta3 ⋗ J = delta3``; it factors as
``J(x, y, z) = mu(x, y) mu(y, z)``.  :func:`j_recursive` solves the defining
sums directly and :func:`j_fast` uses the factorization, so each checks the
other.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import kernels
from .errors import (HypothesisError, InvalidCrossCutError, NotALatticeError,
                     OrderError, PosetMismatchError)
from .incidence import CrossCut, IncFn2, convolve2, mobius, tensor2
from .poset import (Poset, chain_count_cij, flags, is_lattice, join, join_all,
                    longest_chain, meet, meet_all, product)


class IncFn3:
    """A function on Fl^3(P)."""

    __slots__ = ("poset", "values")

    def __init__(self, poset: Poset, values: dict):
        self.poset = poset
        self.values = values

    @classmethod
    def from_callable(cls, poset: Poset, fn) -> "IncFn3":
        return cls(poset, {t: fn(*t) for t in flags(poset, 3)})

    def __getitem__(self, flag):
        try:
            return self.values[flag]
        except KeyError:
            raise OrderError(f"{flag} is not a 3-flag of the poset") from None

    def __call__(self, x, y, z):
        return self[(x, y, z)]

    def _same(self, other):
        if not isinstance(other, IncFn3):
            raise TypeError("expected an IncFn3")
        if other.poset is not self.poset and other.poset != self.poset:
            raise PosetMismatchError("functions live on different posets")

    def __add__(self, other):
        return tri_add(self, other)

    def __neg__(self):
        return IncFn3(self.poset, {k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return tri_add(self, -other)

    def __rmul__(self, scalar):
        return IncFn3(self.poset, {k: scalar * v for k, v in self.values.items()})

    def __eq__(self, other):
        if not isinstance(other, IncFn3):
            return NotImplemented
        return self.poset == other.poset and self.values == other.values

    def support(self) -> list[tuple[int, int, int]]:
        return [t for t, v in self.values.items() if v != 0]

    def __repr__(self):
        return f"IncFn3({self.poset!r}, {len(self.values)} values)"


def delta3(p: Poset) -> IncFn3:
    return IncFn3(p, {t: int(t[0] == t[2]) for t in flags(p, 3)})


def zeta3(p: Poset) -> IncFn3:
    return IncFn3(p, {t: 1 for t in flags(p, 3)})


def zero3(p: Poset) -> IncFn3:
    return IncFn3(p, {t: 0 for t in flags(p, 3)})


def tri_add(f: IncFn3, g: IncFn3) -> IncFn3:
    f._same(g)
    return IncFn3(f.poset, {k: v + g.values[k] for k, v in f.values.items()})


def tri_mul(f: IncFn3, g: IncFn3) -> IncFn3:
    """The ⋗ product, by direct double sum over (a, b)."""
    f._same(g)
    return IncFn3(f.poset, kernels.tri_mul(f.poset, f.values, g.values))


def diamond(f: IncFn2, g: IncFn2) -> IncFn3:
    """(f ◇ g)(x, y, z) = f(x, y) g(y, z)."""
    f._check(g)
    fv, gv = f.values, g.values
    return IncFn3(f.poset, {(x, y, z): fv[(x, y)] * gv[(y, z)]
                            for (x, y, z) in flags(f.poset, 3)})


def tensor3(f: IncFn3, g: IncFn3) -> IncFn3:
    """Pointwise product on P x Q; element (a, b) has index a * |Q| + b."""
    pq = product(f.poset, g.poset)
    m = g.poset.size
    fv, gv = f.values, g.values
    out = {}
    for (x, y, z) in flags(pq, 3):
        out[(x, y, z)] = fv[(x // m, y // m, z // m)] * gv[(x % m, y % m, z % m)]
    return IncFn3(pq, out)


# -- the J-function ----------------------------------------------------------------

def j_recursive(p: Poset) -> IncFn3:
    """Solve Σ_{x<=a<=y<=b<=z} J(a, y, b) = δ3(x, y, z) flag by flag.

    For fixed y the sum runs over the box [x, y] x [y, z]; every term other
    than (a, b) = (x, z) lives on a strictly smaller box, so processing x in
    reverse linear-extension order and z in linear-extension order makes
    every term available.
    """
    ext = p.linear_extension
    J: dict = {}
    for y in range(p.size):
        downs = [a for a in reversed(ext) if p.leq[a, y]]   # y first
        ups = [b for b in ext if p.leq[y, b]]               # y first
        for x in downs:
            box_a = [a for a in p.up[x] if p.leq[a, y]]
            for z in ups:
                if x == y == z:
                    J[(x, y, z)] = 1
                    continue
                box_b = [b for b in p.up[y] if p.leq[b, z]]
                s = 0
                for a in box_a:
                    for b in box_b:
                        if a != x or b != z:
                            s += J[(a, y, b)]
                J[(x, y, z)] = -s
    return IncFn3(p, {t: J[t] for t in flags(p, 3)})


def j_fast(p: Poset) -> IncFn3:
    """J = μ ◇ μ."""
    mu = mobius(p)
    return diamond(mu, mu)


def otherside_sum(p: Poset, x: int, y: int, z: int, form: str = "J") -> int:
    """Σ over (a, b) of J(x, a, a) J(b, b, z), or of μ(x, a) μ(b, z) with form="mu".

    Both equal δ3(x, y, z).
    """
    if not (p.leq[x, y] and p.leq[y, z]):
        raise OrderError(f"({x}, {y}, {z}) is not a 3-flag")
    A = [a for a in p.up[x] if p.leq[a, y]]
    B = [b for b in p.up[y] if p.leq[b, z]]
    if form == "J":
        J = j_fast(p).values
        return sum(J[(x, a, a)] * J[(b, b, z)] for a in A for b in B)
    if form == "mu":
        mu = mobius(p).values
        return sum(mu[(x, a)] * mu[(b, z)] for a in A for b in B)
    raise ValueError(f"unknown form {form!r}")


def hall_gen_sum(p: Poset, x: int, y: int, z: int) -> int:
    """Σ_{i,j} (-1)^(i+j) c_{i,j}(x, y, z)."""
    if not (p.leq[x, y] and p.leq[y, z]):
        raise OrderError(f"({x}, {y}, {z}) is not a 3-flag")
    li, lj = longest_chain(p, x, y), longest_chain(p, y, z)
    return sum((-1) ** (i + j) * chain_count_cij(p, x, y, z, i, j)
               for i in range(li + 1) for j in range(lj + 1))


# -- double cross-cuts ---------------------------------------------------------------

@dataclass(frozen=True)
class DoubleCrossCut:
    """Cross-cuts on [x, y] and [y, z]; component kinds select the S/T/ST/TS variants."""
    triple: tuple[int, int, int]
    first: CrossCut
    second: CrossCut

    @property
    def variant(self) -> str:
        return {"lower": "S", "upper": "T"}[self.first.kind] + \
            {"lower": "S", "upper": "T"}[self.second.kind]

    def validate(self, p: Poset) -> None:
        x, y, z = self.triple
        if self.first.interval != (x, y) or self.second.interval != (y, z):
            raise InvalidCrossCutError("components do not match the triple")
        self.first.validate(p)
        self.second.validate(p)


def atom_double_cut(p: Poset, x: int, y: int, z: int) -> DoubleCrossCut:
    from .incidence import atom_cut
    return DoubleCrossCut((x, y, z), atom_cut(p, x, y), atom_cut(p, y, z))


def coatom_double_cut(p: Poset, x: int, y: int, z: int) -> DoubleCrossCut:
    from .incidence import coatom_cut
    return DoubleCrossCut((x, y, z), coatom_cut(p, x, y), coatom_cut(p, y, z))


def _spans(p: Poset, cut: CrossCut, A) -> bool:
    lo, hi = cut.interval
    if cut.kind == "lower":
        return join_all(p, A, lo) == hi
    return meet_all(p, A, hi) == lo


def double_crosscut_sum(p: Poset, cut: DoubleCrossCut) -> int:
    """Σ (-1)^|A| over A = A1 ⊔ A2 with each part spanning its interval."""
    if not is_lattice(p):
        raise NotALatticeError("cross-cut sums need a lattice")
    cut.validate(p)
    total = 0
    first = sorted(cut.first.members)
    second = sorted(cut.second.members)
    hits2 = [k for k in range(len(second) + 1)
             for A2 in itertools.combinations(second, k) if _spans(p, cut.second, A2)]
    for k1 in range(len(first) + 1):
        for A1 in itertools.combinations(first, k1):
            if _spans(p, cut.first, A1):
                total += sum((-1) ** (k1 + k2) for k2 in hits2)
    return total


# -- Weisner-type sums ------------------------------------------------------------------

def weisner_gen_sum(p: Poset, a: int, b: int) -> int:
    """Σ over {x : x ^ a = 0} of J(x, b, 1); zero when 0 < a < b."""
    if not is_lattice(p):
        raise NotALatticeError("poset is not a lattice")
    if p.size < 3:
        raise HypothesisError("lattice needs at least three elements")
    bot, top = p.bottom, p.top
    if not (p.lt(bot, a) and p.lt(a, b)):
        raise HypothesisError("need 0 < a < b")
    J = j_fast(p).values
    return sum(J[(x, b, top)] for x in p.down[b] if meet(p, x, a) == bot)


def weisner_gen_sum_dual(p: Poset, a: int, b: int) -> int:
    """Σ over {z : z v a = 1} of J(0, b, z); zero when b < a < 1."""
    if not is_lattice(p):
        raise NotALatticeError("poset is not a lattice")
    if p.size < 3:
        raise HypothesisError("lattice needs at least three elements")
    bot, top = p.bottom, p.top
    if not (p.lt(b, a) and p.lt(a, top)):
        raise HypothesisError("need b < a < 1")
    J = j_fast(p).values
    return sum(J[(bot, b, z)] for z in p.up[b] if join(p, z, a) == top)


# -- structural checks ------------------------------------------------------------------

def left_distributivity_check(f: IncFn3, g: IncFn3, h: IncFn3) -> bool:
    """f ⋗ (g + h) == f ⋗ g + f ⋗ h."""
    return tri_mul(f, tri_add(g, h)) == tri_add(tri_mul(f, g), tri_mul(f, h))


@dataclass
class Witness:
    prop: str                  # what fails
    flag: tuple[int, int, int]
    function: dict             # the non-ζ3 values of the constructed f
    lhs: int
    rhs: int
    basis: str                 # "poset" (comparable elements) or "ring" (Z is not Boolean)

    @property
    def holds(self) -> bool:
        return self.lhs != self.rhs


@dataclass
class WitnessReport:
    witnesses: list[Witness] = field(default_factory=list)

    def get(self, prop: str) -> Witness:
        for w in self.witnesses:
            if w.prop == prop:
                return w
        raise KeyError(prop)

    @property
    def all_hold(self) -> bool:
        return all(w.holds for w in self.witnesses)


def _perturbed_zeta(p: Poset, changes: dict) -> IncFn3:
    f = zeta3(p)
    f.values.update(changes)
    return f


def _first_flag(p: Poset, pred):
    return next((t for t in flags(p, 3) if pred(*t)), None)


def structure_witnesses(p: Poset, allow_ring_witness: bool = True) -> WitnessReport:
    """Explicit integer functions exhibiting the failures of the ⋗ product.

    Each witness perturbs ζ3 at one flag.  When the poset is too small for the
    order-theoretic construction, the fallback uses that 2 is not idempotent
    in Z; pass ``allow_ring_witness=False`` to refuse that instead.
    """
    if p.size == 0:
        raise HypothesisError("empty poset: no witness required")
    d3 = delta3(p)
    report = WitnessReport()

    def need_ring(what):
        if not allow_ring_witness:
            raise HypothesisError(f"{what}: poset hypothesis fails; no witness required")

    # f(x,y,z) != f(x,y,y) f(y,y,z): then (f ⋗ δ3) and (δ3 ⋗ f) = f differ.
    t = _first_flag(p, lambda x, y, z: x != y or y != z)
    if t is not None:
        x, y, z = t
        key = (y, y, y) if (x == y or y == z) else t
        basis = "poset"
    else:
        need_ring("non-commutativity")
        t = key = flags(p, 3)[0]
        basis = "ring"
    f = _perturbed_zeta(p, {key: 2})
    left, right = tri_mul(f, d3), tri_mul(d3, f)
    report.witnesses.append(Witness("commutativity", t, {key: 2}, left[t], right[t], basis))
    report.witnesses.append(Witness("right-identity", t, {key: 2}, left[t], f[t], basis))

    # f(y,y,y) = 2 makes ((f ⋗ δ3) ⋗ δ3) pick up f(y,y,y)^2 at a chain x < y < z.
    t = _first_flag(p, lambda x, y, z: x != y and y != z)
    if t is not None:
        basis = "poset"
    else:
        need_ring("non-associativity")
        t = flags(p, 3)[0]
        basis = "ring"
    key = (t[1], t[1], t[1])
    f = _perturbed_zeta(p, {key: 2})
    lhs = tri_mul(tri_mul(f, d3), d3)
    rhs = tri_mul(f, tri_mul(d3, d3))
    report.witnesses.append(Witness("associativity", t, {key: 2}, lhs[t], rhs[t], basis))

    # With f = ζ3, f(x,y,y) + f(y,y,z) = 2 != 0.
    t = _first_flag(p, lambda x, y, z: x != y or y != z)
    if t is not None:
        basis = "poset"
    else:
        need_ring("non-right-distributivity")
        t = flags(p, 3)[0]
        basis = "ring"
    z3 = zeta3(p)
    f = zeta3(p)
    lhs = tri_mul(tri_add(f, z3), d3)
    rhs = tri_add(tri_mul(f, d3), tri_mul(z3, d3))
    report.witnesses.append(Witness("right-distributivity", t, {}, lhs[t], rhs[t], basis))
    return report


def almosthom_check(f: IncFn2, g: IncFn2, r: IncFn2, s: IncFn2) -> bool:
    """(f ◇ g) ⋗ (r ◇ s) == (f * r) ◇ (s * g), given f(b,b) g(a,a) = 1 for all a, b."""
    p = f.poset
    for a in range(p.size):
        for b in range(p.size):
            if f.values[(b, b)] * g.values[(a, a)] != 1:
                raise HypothesisError(f"f({b},{b}) g({a},{a}) != 1")
    return tri_mul(diamond(f, g), diamond(r, s)) == diamond(convolve2(f, r), convolve2(s, g))


def addhom_check(f: IncFn2, g: IncFn2, r: IncFn2, s: IncFn2) -> bool:
    """(f + g) ◇ (r + s) == f◇r + f◇s + g◇r + g◇s."""
    lhs = diamond(f + g, r + s)
    rhs = diamond(f, r) + diamond(f, s) + diamond(g, r) + diamond(g, s)
    return lhs == rhs


def dia_tensor_check(f, g, r, s) -> bool:
    """Product factorizations with f, g on P and r, s on Q.

    For 2-variable inputs: (f ◇ g) x (r ◇ s) == (f x r) ◇ (g x s).
    For 3-variable inputs: (f ⋗ g) x (r ⋗ s) == (f x r) ⋗ (g x s).
    """
    if all(isinstance(v, IncFn2) for v in (f, g, r, s)):
        return tensor3(diamond(f, g), diamond(r, s)) == diamond(tensor2(f, r), tensor2(g, s))
    if all(isinstance(v, IncFn3) for v in (f, g, r, s)):
        return tensor3(tri_mul(f, g), tri_mul(r, s)) == tri_mul(tensor3(f, r), tensor3(g, s))
    raise TypeError("pass four IncFn2 or four IncFn3")
