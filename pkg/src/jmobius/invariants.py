"""Polynomial invariants of ranked posets built from μ and J.

* ``char_poly``     χ(L, t) = Σ_x μ(0, x) t^crk(x)
* ``j_char_poly``   𝒥(L, t) = (-1)^rk(L) Σ_x J(0, x, 1) t^crk(x)
* ``j_mobius_poly`` ℳ(L, t) = Σ_{x<=y<=z} J(x, y, z) t^(3 rk(L) - rk x - rk y - rk z)
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import kernels
from .errors import HypothesisError, NoBoundsError, NotALatticeError, RankError
from .incidence import mobius
from .laurent import LaurentPoly
from .poset import (Poset, flags, is_geometric, is_lattice, is_modular_lattice,
                    is_semimodular, opposite, upper_interval)
from .trincidence import IncFn3, j_fast


@dataclass(frozen=True)
class RankedLatticeView:
    """A graded poset with its bounds identified."""
    poset: Poset
    bottom: int
    top: int

    @classmethod
    def of(cls, p: Poset) -> "RankedLatticeView":
        if p.ranks is None:
            raise RankError("poset carries no ranks")
        if p.bottom is None or p.top is None:
            raise NoBoundsError("poset needs a unique minimum and maximum")
        return cls(p, p.bottom, p.top)

    @property
    def rank(self) -> int:
        return self.poset.ranks[self.top]

    def crk(self, x: int) -> int:
        return self.rank - self.poset.ranks[x]

    def rho(self, x: int, y: int, z: int) -> int:
        r = self.poset.ranks
        return 3 * self.rank - r[x] - r[y] - r[z]

    def level(self, k: int) -> list[int]:
        """L_k, the elements of rank k."""
        return [x for x, r in enumerate(self.poset.ranks) if r == k]


def _poset(L) -> Poset:
    return L.poset if isinstance(L, RankedLatticeView) else L


def _ranked(L) -> Poset:
    p = _poset(L)
    if p.ranks is None:
        raise RankError("poset carries no ranks")
    return p


# -- polynomial plumbing ---------------------------------------------------------------

def poly_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a + b


def poly_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def poly_eval_int(a: LaurentPoly, v: int):
    return a.eval(v)


def poly_reciprocal_subst(a: LaurentPoly, degree_shift: int = 0) -> LaurentPoly:
    """a(1/t) * t^degree_shift."""
    return a.reciprocal().shift(degree_shift)


# -- the invariants ----------------------------------------------------------------------

def char_poly(L) -> LaurentPoly:
    p = _ranked(L)
    bot = p.bottom
    if bot is None:
        raise NoBoundsError("characteristic polynomial needs a minimum")
    mu = mobius(p).values
    R = p.rank
    return LaurentPoly.from_dict(_accumulate((R - p.ranks[x], mu[(bot, x)]) for x in p.up[bot]))


def _accumulate(pairs) -> dict[int, int]:
    out: dict[int, int] = {}
    for e, c in pairs:
        out[e] = out.get(e, 0) + c
    return out


def j_char_poly(L, J: IncFn3 | None = None) -> LaurentPoly:
    view = L if isinstance(L, RankedLatticeView) else RankedLatticeView.of(L)
    p = view.poset
    J = (j_fast(p) if J is None else J).values
    R = view.rank
    sign = -1 if R % 2 else 1
    return LaurentPoly.from_dict(_accumulate(
        (view.crk(x), sign * J[(view.bottom, x, view.top)]) for x in range(p.size)))


def j_mobius_poly(L, J: IncFn3 | None = None) -> LaurentPoly:
    """ℳ by its defining sum over Fl^3.

    Without an explicit ``J`` the sum runs in the compiled kernel with
    J(x, y, z) = μ(x, y) μ(y, z) fused in.
    """
    p = _ranked(L)
    if J is None:
        mu = kernels.mobius_matrix(p)
        return LaurentPoly(kernels.jmobius_coeffs(p, mu))
    R, r = p.rank, p.ranks
    Jv = J.values
    return LaurentPoly.from_dict(_accumulate(
        (3 * R - r[x] - r[y] - r[z], Jv[(x, y, z)]) for (x, y, z) in flags(p, 3)))


def m_decomposition(L) -> LaurentPoly:
    """t^rk Σ_y t^crk(y) χ(L^y, t) χ((L^op)^y, 1/t)."""
    p = _ranked(L)
    if not is_lattice(p):
        raise NotALatticeError("decomposition needs a lattice")
    R = p.rank
    op = opposite(p)
    total = LaurentPoly()
    for y in range(p.size):
        up_y = upper_interval(p, y).poset
        down_y = upper_interval(op, y).poset
        term = char_poly(up_y) * char_poly(down_y).reciprocal()
        total = total + term.shift(R - p.ranks[y])
    return total.shift(R)


# -- theorem checks --------------------------------------------------------------------

def check_positive_coeffs(L, strict: bool = True, force: bool = False) -> bool:
    """Coefficients of 𝒥 on a semimodular lattice are >= 0.

    ``strict`` additionally requires every coefficient of t^0..t^rk to be
    nonzero (true for geometric lattices).
    """
    p = _ranked(L)
    if not force and not is_semimodular(p):
        raise HypothesisError("lattice is not semimodular")
    poly = j_char_poly(p)
    cs = [poly.coefficient(k) for k in range(p.rank + 1)]
    if strict:
        return all(c > 0 for c in cs)
    return all(c >= 0 for c in cs)


def check_root_at_one(L, force: bool = False) -> bool:
    p = _ranked(L)
    if not force and not (is_lattice(p) and p.size >= 2):
        raise HypothesisError("need a lattice with at least two elements")
    return j_mobius_poly(p).eval(1) == 0


def eval_at_minus_one(L) -> int:
    return j_mobius_poly(_ranked(L)).eval(-1)


def check_root_at_minus_one(L, force: bool = False) -> bool:
    """ℳ(L, -1) == 0; guaranteed for modular geometric lattices."""
    p = _ranked(L)
    if not force and not (is_geometric(p) and is_modular_lattice(p)):
        raise HypothesisError("lattice is not modular geometric")
    return eval_at_minus_one(p) == 0


def level_sign_sums(L) -> list[int]:
    """(-1)^rk Σ_{x in L_k} μ(0, x) μ(x, 1) for k = 0..rk."""
    view = L if isinstance(L, RankedLatticeView) else RankedLatticeView.of(L)
    mu = mobius(view.poset).values
    sign = -1 if view.rank % 2 else 1
    return [sign * sum(mu[(view.bottom, x)] * mu[(x, view.top)] for x in view.level(k))
            for k in range(view.rank + 1)]


# -- deletion-contraction fitting --------------------------------------------------------

@dataclass
class FitResult:
    """Outcome of fitting f(M) = a f(M\\e) + b f(M/e) across triples.

    ``verdict`` is "fit" (then ``a``/``b`` are set) or "contradiction" (then
    ``certificate`` explains why no a, b exist in the searched space).
    """
    verdict: str
    a: LaurentPoly | None = None
    b: LaurentPoly | None = None
    residuals: list[LaurentPoly] = field(default_factory=list)
    certificate: dict | None = None
    unique: bool = True

    @property
    def fits(self) -> bool:
        return self.verdict == "fit"


def _root_certificate(triples) -> dict | None:
    """An integer t where every f(M\\e), f(M/e) vanishes but some f(M) does not."""
    cands: set[int] = set()
    for _, d, c in triples:
        for poly in (d, c):
            if poly.is_zero():
                continue
            low = poly.coefficient(poly.min_exp)
            n = abs(low)
            cands |= {s * k for k in range(1, n + 1) if n % k == 0 for s in (1, -1)}
    cands.add(0)
    for r in sorted(cands, key=lambda v: (abs(v), v)):
        if r == 0 and any(not p.is_polynomial() for t in triples for p in t):
            continue
        if all(d.eval(r) == 0 and c.eval(r) == 0 for _, d, c in triples):
            for i, (m, _, _) in enumerate(triples):
                val = m.eval(r)
                if val != 0:
                    return {"kind": "common-root", "t": r, "triple": i,
                            "lhs": val, "rhs": 0}
    return None


def _solve_rational(rows: list[list[Fraction]], rhs: list[Fraction]):
    """Gaussian elimination; returns (solution or None, consistent, free_vars)."""
    m = [row[:] + [v] for row, v in zip(rows, rhs)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                fac = m[i][c]
                m[i] = [vi - fac * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    consistent = all(any(v != 0 for v in row[:-1]) or row[-1] == 0 for row in m)
    if not consistent:
        return None, False, []
    free = [c for c in range(ncols) if c not in pivots]
    sol = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        sol[c] = m[i][-1]
    return sol, True, free


def tutte_grothendieck_fit(triples: Sequence[tuple[LaurentPoly, LaurentPoly, LaurentPoly]],
                           max_degree: int = 2, fixed: tuple | None = None) -> FitResult:
    """Look for a, b with f(M) = a f(M\\e) + b f(M/e) for every (f(M), f(M\\e), f(M/e)).

    a and b range over integer polynomials of degree <= ``max_degree``
    (degree 0 is the constant case).  With ``fixed=(a, b)`` the given pair is
    tested instead of solved for.
    """
    triples = [tuple(LaurentPoly._coerce(p) for p in t) for t in triples]
    if not triples:
        raise ValueError("need at least one triple")
    if fixed is not None:
        a, b = (LaurentPoly._coerce(v) for v in fixed)
        residuals = [m - a * d - b * c for m, d, c in triples]
        if all(r.is_zero() for r in residuals):
            return FitResult("fit", a, b, residuals)
        bad = next(i for i, r in enumerate(residuals) if not r.is_zero())
        cert = _root_certificate([triples[bad]]) or {"kind": "nonzero-residual", "triple": bad}
        return FitResult("contradiction", a, b, residuals, cert)

    cert = _root_certificate(triples)
    if cert is not None:
        return FitResult("contradiction", certificate=cert)
    for deg in range(max_degree + 1):
        # unknowns a_0..a_deg, b_0..b_deg; one equation per exponent
        lo = min(min(p.min_exp for p in t if not p.is_zero()) for t in triples)
        hi = max(max(p.max_exp for p in t if not p.is_zero()) for t in triples) + deg
        rows, rhs = [], []
        for m, d, c in triples:
            for e in range(lo, hi + 1):
                rows.append([Fraction(d.coefficient(e - i)) for i in range(deg + 1)]
                            + [Fraction(c.coefficient(e - i)) for i in range(deg + 1)])
                rhs.append(Fraction(m.coefficient(e)))
        sol, ok, free = _solve_rational(rows, rhs)
        if not ok or any(v.denominator != 1 for v in sol):
            continue
        a = LaurentPoly([int(v) for v in sol[:deg + 1]])
        b = LaurentPoly([int(v) for v in sol[deg + 1:]])
        return FitResult("fit", a, b, [m - a * d - b * c for m, d, c in triples],
                         unique=not free)
    return FitResult("contradiction",
                     certificate={"kind": "no-solution", "max_degree": max_degree})
