"""Integer Laurent polynomials in one variable ``t``."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class LaurentPoly:
    """Sum of ``coeffs[i] * t**(min_exp + i)`` with exact integer coefficients.

    Always normalized: no leading or trailing zero coefficients; the zero
    polynomial has ``coeffs == ()`` and ``min_exp == 0``.
    """

    __slots__ = ("min_exp", "coeffs")

    def __init__(self, coeffs: Iterable[int] = (), min_exp: int = 0):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        hi = len(cs)
        while hi > lo and cs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.coeffs, self.min_exp = (), 0
        else:
            self.coeffs = tuple(cs[lo:hi])
            self.min_exp = int(min_exp) + lo

    @classmethod
    def from_dict(cls, terms: dict[int, int]) -> "LaurentPoly":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(e, 0) for e in range(lo, hi + 1)], lo)

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls([coeff], exp)

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls([1], 1)

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls([c])

    # -- inspection ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_polynomial(self) -> bool:
        return self.min_exp >= 0 or self.is_zero()

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1 if self.coeffs else 0

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.max_exp

    def coefficient(self, exp: int) -> int:
        i = exp - self.min_exp
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def terms(self) -> dict[int, int]:
        return {self.min_exp + i: c for i, c in enumerate(self.coeffs) if c}

    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __iter__(self):
        """(exponent, coefficient) pairs in ascending order, zeros skipped."""
        return iter(sorted(self.terms().items()))

    # -- arithmetic ------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_exp, other.min_exp)
        hi = max(self.max_exp, other.max_exp)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_exp - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_exp - lo + i] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.min_exp)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPoly(out, self.min_exp + other.min_exp)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.coeffs) == 1 and self.coeffs[0] in (1, -1):
                return LaurentPoly([self.coeffs[0] ** -k], self.min_exp * k)
            raise ValueError("negative powers only for unit monomials")
        result = LaurentPoly([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs, self.min_exp + k)

    def reciprocal(self) -> "LaurentPoly":
        """Substitute ``t -> 1/t``."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs[::-1], -self.max_exp)

    def __call__(self, v: int):
        return self.eval(v)

    def eval(self, v: int):
        """Exact value at an integer; a Fraction only if negative powers demand it."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        if self.min_exp >= 0:
            return acc * v ** self.min_exp
        if v == 0:
            raise ZeroDivisionError("negative powers of t at t = 0")
        val = Fraction(acc, v ** -self.min_exp)
        return int(val) if val.denominator == 1 else val

    def divmod_exact(self, other: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        """Long division in Z[t, 1/t] by an ordinary polynomial; raises if a quotient
        coefficient is not an integer."""
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self.terms())
        lead_e, lead_c = other.max_exp, other.leading_coefficient()
        quot: dict[int, int] = {}
        floor = self.min_exp + (other.max_exp - other.min_exp)
        while rem:
            e = max(rem)
            if e < floor:
                break
            c = rem[e]
            if c % lead_c:
                raise ValueError("division is not exact over the integers")
            qc, qe = c // lead_c, e - lead_e
            quot[qe] = qc
            for oe, oc in other.terms().items():
                k = qe + oe
                rem[k] = rem.get(k, 0) - qc * oc
                if rem[k] == 0:
                    del rem[k]
        return LaurentPoly.from_dict(quot), LaurentPoly.from_dict(rem)

    def divides(self, other: "LaurentPoly") -> bool:
        """True when ``self`` divides ``other`` exactly over Z[t]."""
        try:
            _, r = other.divmod_exact(self)
        except ValueError:
            return False
        return r.is_zero()

    # -- comparison / display -------------------------------------------------

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.min_exp, self.coeffs))

    def __repr__(self):
        return f"LaurentPoly({list(self.coeffs)}, min_exp={self.min_exp})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "t") -> str:
        """Descending powers, e.g. ``t^3 - t^2 - t + 1``."""
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(self.max_exp, self.min_exp - 1, -1):
            c = self.coefficient(e)
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = var if e == 1 else f"{var}^{e}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"min_exp": self.min_exp, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, doc: dict) -> "LaurentPoly":
        return cls(doc["coeffs"], doc.get("min_exp", 0))


T = LaurentPoly.t()
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()
