"""Exact Laurent polynomials in one variable q over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]


class LaurentPoly:
    """Immutable map exponent -> nonzero Fraction.

    The empty map is the zero polynomial.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Scalar] | Iterable[tuple[int, Scalar]] = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, Fraction] = {}
        for e, v in items:
            v = Fraction(v)
            if v:
                e = int(e)
                s = c.get(e, 0) + v
                if s:
                    c[e] = s
                else:
                    c.pop(e, None)
        self._c = c
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: Scalar = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def constant(cls, value: Scalar) -> "LaurentPoly":
        return cls({0: value})

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def exponents(self) -> list[int]:
        return sorted(self._c)

    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no exponents")
        return max(self._c)

    def coeff(self, exp: int) -> Fraction:
        return self._c.get(exp, Fraction(0))

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly(list(self._c.items()) + list(other._c.items()))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, Fraction] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            (e, v), = self._c.items()
            return LaurentPoly({e * k: Fraction(1) / v ** (-k)})
        out = LaurentPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q**k."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def __call__(self, q: Scalar) -> Fraction:
        q = Fraction(q)
        if not q and any(e < 0 for e in self._c):
            raise ZeroDivisionError("negative power of q at q = 0")
        return sum((v * q ** e for e, v in self._c.items()), Fraction(0))

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c, reverse=True):
            v = self._c[e]
            if e == 0:
                parts.append(str(v))
            else:
                mono = "q" if e == 1 else f"q^{e}"
                parts.append(mono if v == 1 else f"{v}*{mono}")
        return " + ".join(parts)

    def to_json(self) -> dict[str, str]:
        return {str(e): f"{self._c[e].numerator}/{self._c[e].denominator}" for e in sorted(self._c)}

    @classmethod
    def from_json(cls, data: Mapping[str, str]) -> "LaurentPoly":
        return cls({int(e): Fraction(v) for e, v in data.items()})


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
Q = LaurentPoly.monomial(1)
