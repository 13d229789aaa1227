"""Exact q-series: Gaussian binomials, q-multinomials, (-1; q)_n, and ℳ(L_q^n, t).

Polynomials in ``q`` are plain :class:`LaurentPoly` values (``min_exp >= 0``);
the alias ``QPoly`` is only documentation.  A :class:`BiPoly` is a polynomial
in ``t`` whose coefficients are polynomials in ``q``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ArityError
from .laurent import LaurentPoly

QPoly = LaurentPoly
Q = LaurentPoly.t()


def qpoly_to_json(p: LaurentPoly) -> dict:
    if not p.is_polynomial():
        raise ValueError("QPoly must not contain negative powers of q")
    return {"coeffs": [p.coefficient(i) for i in range(p.max_exp + 1)] if not p.is_zero() else []}


def qpoly_from_json(doc: dict) -> LaurentPoly:
    return LaurentPoly(doc["coeffs"])


@lru_cache(maxsize=None)
def qbinom(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial [n k]_q by the Pascal rule [n k] = q^k [n-1 k] + [n-1 k-1]."""
    if n < 0 or not 0 <= k <= n:
        raise ArityError(f"need 0 <= k <= n, got n={n}, k={k}")
    if k == 0 or k == n:
        return LaurentPoly([1])
    return qbinom(n - 1, k).shift(k) + qbinom(n - 1, k - 1)


def qmultinom(n: int, ks: Sequence[int]) -> LaurentPoly:
    """[n; k1, ..., km]_q = [n k1][n-k1 k2]...; ``ks`` may sum to less than n."""
    if any(k < 0 for k in ks) or sum(ks) > n:
        raise ArityError(f"parts {list(ks)} do not fit in {n}")
    out, rest = LaurentPoly([1]), n
    for k in ks:
        out = out * qbinom(rest, k)
        rest -= k
    return out


@lru_cache(maxsize=None)
def qpoch_minus_one(n: int) -> LaurentPoly:
    """(-1; q)_n = (1 + 1)(1 + q)...(1 + q^(n-1))."""
    if n < 0:
        raise ArityError("n must be >= 0")
    out = LaurentPoly([1])
    for i in range(n):
        out = out * LaurentPoly.monomial(i) + out
    return out


def john_identity_sum(n: int) -> LaurentPoly:
    """Σ_k (-1)^k [n k] (-1; q)_{n-k} (-1; q)_k, which vanishes for n >= 1."""
    if n < 1:
        raise ArityError("the alternating sum is only claimed for n >= 1")
    total = LaurentPoly()
    for k in range(n + 1):
        term = qbinom(n, k) * qpoch_minus_one(n - k) * qpoch_minus_one(k)
        total = total + (term if k % 2 == 0 else -term)
    return total


class BiPoly:
    """Σ_i t_coeffs[i](q) t^i."""

    __slots__ = ("t_coeffs",)

    def __init__(self, t_coeffs: Iterable = ()):
        cs = [LaurentPoly._coerce(c) for c in t_coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.t_coeffs = tuple(cs)

    @classmethod
    def from_terms(cls, terms: dict[int, LaurentPoly]) -> "BiPoly":
        terms = {e: c for e, c in terms.items() if not c.is_zero()}
        if any(e < 0 for e in terms):
            raise ValueError("BiPoly holds nonnegative powers of t only")
        top = max(terms, default=-1)
        return cls(terms.get(e, LaurentPoly()) for e in range(top + 1))

    @classmethod
    def from_t(cls, p: LaurentPoly) -> "BiPoly":
        """Lift a polynomial in t with integer coefficients."""
        return cls.from_terms({e: LaurentPoly([c]) for e, c in p.terms().items()})

    def coefficient(self, i: int) -> LaurentPoly:
        return self.t_coeffs[i] if 0 <= i < len(self.t_coeffs) else LaurentPoly()

    def is_zero(self) -> bool:
        return not self.t_coeffs

    def __add__(self, other: "BiPoly") -> "BiPoly":
        n = max(len(self.t_coeffs), len(other.t_coeffs))
        return BiPoly(self.coefficient(i) + other.coefficient(i) for i in range(n))

    def __neg__(self):
        return BiPoly(-c for c in self.t_coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            return BiPoly(c * other for c in self.t_coeffs)
        if not self.t_coeffs or not other.t_coeffs:
            return BiPoly()
        out = [LaurentPoly()] * (len(self.t_coeffs) + len(other.t_coeffs) - 1)
        for i, a in enumerate(self.t_coeffs):
            for j, b in enumerate(other.t_coeffs):
                out[i + j] = out[i + j] + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def shift_t(self, k: int) -> "BiPoly":
        return BiPoly([LaurentPoly()] * k + list(self.t_coeffs))

    def eval_t(self, v: int) -> LaurentPoly:
        """Substitute an integer for t, leaving a polynomial in q."""
        acc = LaurentPoly()
        for c in reversed(self.t_coeffs):
            acc = acc * v + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.t_coeffs == other.t_coeffs

    def __hash__(self):
        return hash(self.t_coeffs)

    def __repr__(self):
        body = " + ".join(f"({c.format('q')})t^{i}" for i, c in enumerate(self.t_coeffs)
                          if not c.is_zero())
        return f"BiPoly({body or '0'})"

    def to_json(self) -> dict:
        return {"t_coeffs": [qpoly_to_json(c) for c in self.t_coeffs]}

    @classmethod
    def from_json(cls, doc: dict) -> "BiPoly":
        return cls(qpoly_from_json(d) for d in doc["t_coeffs"])


def specialize(b: BiPoly, q_value: int) -> LaurentPoly:
    """Substitute an integer for q, giving a polynomial in t."""
    return LaurentPoly([c.eval(q_value) for c in b.t_coeffs])


def _choose2(m: int) -> int:
    return m * (m - 1) // 2


def m_subspace_formula(n: int) -> BiPoly:
    """ℳ(L_q^n, t) summed over dimension triples i <= j <= k of flags x <= y <= z.

    The number of such flags is the q-multinomial [n; i, j-i, k-j, n-k] and
    J(x, y, z) = (-1)^(k-i) q^(C(j-i, 2) + C(k-j, 2)).
    """
    if n < 0:
        raise ArityError("n must be >= 0")
    terms: dict[int, LaurentPoly] = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                c = qmultinom(n, (i, j - i, k - j, n - k)).shift(_choose2(j - i) + _choose2(k - j))
                if (k - i) % 2:
                    c = -c
                e = 3 * n - i - j - k
                terms[e] = terms.get(e, LaurentPoly()) + c
    return BiPoly.from_terms(terms)


def _falling(m: int, reverse: bool) -> BiPoly:
    """Π_{i<m} (t - q^i), or with ``reverse`` Π_{i<m} (1 - q^i t)."""
    out = BiPoly([LaurentPoly([1])])
    for i in range(m):
        qi = LaurentPoly.monomial(i)
        factor = BiPoly([LaurentPoly([1]), -qi]) if reverse else BiPoly([-qi, LaurentPoly([1])])
        out = out * factor
    return out


def m_subspace_decomposed(n: int) -> BiPoly:
    """ℳ(L_q^n, t) grouped by the middle element y of the flag.

    For dim y = k the upper interval is L_q^(n-k) with χ = Π (t - q^i), and the
    lower interval, read upside down, is L_q^k evaluated at 1/t.  Clearing
    the 1/t powers gives Σ_k t^(2n-2k) [n k] Π_{i<n-k} (t - q^i) Π_{j<k} (1 - q^j t).
    """
    if n < 0:
        raise ArityError("n must be >= 0")
    total = BiPoly()
    for k in range(n + 1):
        term = _falling(n - k, False) * _falling(k, True) * qbinom(n, k)
        total = total + term.shift_t(2 * n - 2 * k)
    return total


def subspace_mobius_top(n: int) -> LaurentPoly:
    """μ(0, 1) on L_q^n, (-1)^n q^C(n, 2)."""
    return LaurentPoly.monomial(_choose2(n), -1 if n % 2 else 1)


def subspace_char_poly(n: int) -> BiPoly:
    """χ(L_q^n, t) = Π_{i<n} (t - q^i)."""
    return _falling(n, False)
