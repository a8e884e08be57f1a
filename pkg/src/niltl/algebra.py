"""
The algebra T(n) in its basis of minuscule elements.

An element is a finite map from canonical minuscule words to nonzero
Fractions. A product of basis elements is the basis element of the
concatenated word when that word is minuscule, and zero otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Union

from .diagram import Word, cf_normal_form, has_full_support, validate_word
from .errors import (
    NotMinusculeError,
    RankMismatchError,
    RankTooSmallError,
    ZeroElementError,
)
from .heaps import all_weights, coxeter_word, is_minuscule, weights_of

Scalar = Union[int, Fraction]


class TElement:
    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Word, Scalar] | Iterable[tuple[Word, Scalar]] = ()):
        if n < 2:
            raise RankTooSmallError(f"T(n) needs n >= 2, got {n}")
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for w, c in items:
            c = Fraction(c)
            if not c:
                continue
            w = validate_word(n, w)
            if not is_minuscule(n, w):
                raise NotMinusculeError(f"{list(w)} is not a basis word")
            w = cf_normal_form(n, w)
            acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict[Word, Fraction]) -> "TElement":
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = {w: c for w, c in terms.items() if c}
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, n: int) -> "TElement":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "TElement":
        return cls._raw(n, {(): Fraction(1)})

    @classmethod
    def basis(cls, n: int, word: Iterable[int]) -> "TElement":
        return cls(n, {tuple(word): 1})

    @classmethod
    def generator(cls, n: int, i: int) -> "TElement":
        return cls(n, {(i,): 1})

    @classmethod
    def from_word(cls, n: int, word: Iterable[int]) -> "TElement":
        """The product u_{i1} u_{i2} ... of generators; zero unless minuscule."""
        w = validate_word(n, word)
        if not is_minuscule(n, w):
            return cls.zero(n)
        return cls._raw(n, {cf_normal_form(n, w): Fraction(1)})

    # container protocol

    @property
    def terms(self) -> dict[Word, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0])))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self._terms.get(cf_normal_form(self.n, word), Fraction(0))

    def degrees(self) -> set[int]:
        return {len(w) for w in self._terms}

    def homogeneous_part(self, d: int) -> "TElement":
        return TElement._raw(self.n, {w: c for w, c in self._terms.items() if len(w) == d})

    # arithmetic

    def _same_rank(self, other: "TElement") -> None:
        if not isinstance(other, TElement):
            raise TypeError(f"expected TElement, got {type(other).__name__}")
        if other.n != self.n:
            raise RankMismatchError(f"T({self.n}) vs T({other.n})")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TElement.one(self.n) * other
        self._same_rank(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return TElement._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return TElement._raw(self.n, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TElement._raw(self.n, {w: c * other for w, c in self._terms.items()})
        return mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int) -> "TElement":
        out = TElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = TElement.one(self.n) * other
        if not isinstance(other, TElement):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        if not self._terms:
            return f"TElement({self.n}, 0)"
        parts = []
        for w, c in self.items():
            name = "u[" + ",".join(map(str, w)) + "]" if w else "1"
            parts.append(name if c == 1 else f"{c}*{name}")
        return f"TElement({self.n}, " + " + ".join(parts) + ")"

    # serialization

    def to_json(self) -> list[dict]:
        return [
            {"word": list(w), "num": c.numerator, "den": c.denominator}
            for w, c in self.items()
        ]

    @classmethod
    def from_json(cls, n: int, data: Iterable[Mapping]) -> "TElement":
        return cls(n, [(tuple(t["word"]), Fraction(int(t["num"]), int(t.get("den", 1)))) for t in data])


@lru_cache(maxsize=1 << 18)
def _word_product(n: int, a: Word, b: Word) -> Word | None:
    cat = a + b
    if not is_minuscule(n, cat):
        return None
    return cf_normal_form(n, cat)


def mul(a: TElement, b: TElement) -> TElement:
    a._same_rank(b)
    n = a.n
    out: dict[Word, Fraction] = {}
    for w1, c1 in a._terms.items():
        for w2, c2 in b._terms.items():
            w = _word_product(n, w1, w2)
            if w is not None:
                out[w] = out.get(w, 0) + c1 * c2
    return TElement._raw(n, out)


def commutator(a: TElement, b: TElement) -> TElement:
    return a * b - b * a


@lru_cache(maxsize=None)
def q_element(n: int) -> TElement:
    """Q: the sum of the 2^n Coxeter basis elements."""
    if n < 2:
        raise RankTooSmallError(f"T(n) needs n >= 2, got {n}")
    return TElement(n, {coxeter_word(n, lam): 1 for lam in all_weights(n)})


def u_weight(n: int, lam: str) -> TElement:
    return TElement.basis(n, coxeter_word(n, lam))


def factor_c_form(n: int, word: Iterable[int]) -> tuple[str, str, int] | None:
    """(upper weight, lower weight, number of 0s) of a full-support minuscule
    word; None when the support is not full."""
    w = validate_word(n, word)
    if not is_minuscule(n, w):
        raise NotMinusculeError(f"{list(w)} is not minuscule")
    if not has_full_support(n, w):
        return None
    lower, upper = weights_of(n, w)
    return upper, lower, w.count(0)


def strip_top(n: int, word: Word) -> Word:
    """Remove the highest element of every vertex chain (the leftmost
    occurrence of each label)."""
    seen: set[int] = set()
    rest = []
    for a in word:
        if a in seen:
            rest.append(a)
        else:
            seen.add(a)
    return cf_normal_form(n, rest)


def coxeter_factorization(n: int, word: Iterable[int]) -> tuple[str | None, int, Word]:
    """Write u_w = u_lam^c u_x with x not of full support.

    Returns (lam, c, x); lam is None and c is 0 when w itself lacks full
    support. When c >= 1 this gives u_w = Q^(c-1) u_lam u_x.
    """
    w = cf_normal_form(n, validate_word(n, word))
    if not is_minuscule(n, w):
        raise NotMinusculeError(f"{list(w)} is not minuscule")
    lam = None
    c = 0
    while has_full_support(n, w):
        top = weights_of(n, w)[1]
        if lam is not None and top != lam:
            raise AssertionError("upper weight changed while stripping")
        lam = top
        w = strip_top(n, w)
        c += 1
    return lam, c, w


def divide_by_q(a: TElement) -> TElement | None:
    """The unique b with Q*b == a, or None if a is not in Q*T(n).

    Q*u_x is the sum of u_lam*u_x over lam, and distinct pairs (lam, x) give
    distinct basis words, so the terms of a must group exactly into such sums.
    """
    n = a.n
    groups: dict[Word, dict[Word, Fraction]] = {}
    for w, c in a._terms.items():
        if not has_full_support(n, w):
            return None
        groups.setdefault(strip_top(n, w), {})[w] = c
    b: dict[Word, Fraction] = {}
    for x, got in groups.items():
        image = _q_times_basis(n, x)
        coeffs = set(got.values())
        if set(got) != image or len(coeffs) != 1:
            return None
        b[x] = coeffs.pop()
    return TElement._raw(n, b)


@lru_cache(maxsize=1 << 16)
def _q_times_basis(n: int, x: Word) -> frozenset[Word]:
    out = set()
    for lam in all_weights(n):
        w = _word_product(n, coxeter_word(n, lam), x)
        if w is not None:
            out.add(w)
    return frozenset(out)


def q_valuation(a: TElement) -> int:
    """Largest j with a in Q^j T(n)."""
    if not a:
        raise ZeroElementError("valuation of zero is undefined")
    n = a.n
    # lower bound from the Coxeter factorization of each basis term
    bound = min(max(coxeter_factorization(n, w)[1] - 1, 0) for w in a._terms)
    cur = a
    for _ in range(bound):
        cur = divide_by_q(cur)
        if cur is None:
            raise AssertionError("factorization bound not confirmed by division")
    j = bound
    while True:
        nxt = divide_by_q(cur)
        if nxt is None:
            return j
        cur = nxt
        j += 1


def defining_relations(n: int) -> list[tuple[Word, Word | None]]:
    """The presentation of T(n) as pairs (lhs, rhs) meaning u_lhs = u_rhs;
    rhs None means u_lhs = 0."""
    if n < 2:
        raise RankTooSmallError(f"T(n) needs n >= 2, got {n}")
    rels: list[tuple[Word, Word | None]] = [((i, i), None) for i in range(n + 1)]
    for i in range(n + 1):
        for j in range(i + 2, n + 1):
            rels.append(((i, j), (j, i)))
    for i in range(1, n - 1):
        rels.append(((i, i + 1, i), None))
        rels.append(((i + 1, i, i + 1), None))
    rels.append(((1, 0, 1), None))
    rels.append(((n - 1, n, n - 1), None))
    return rels


def relation_failures(n: int) -> list[tuple[Word, Word | None]]:
    """Relations that fail under mul (empty when T(n) is set up correctly)."""
    bad = []
    for lhs, rhs in defining_relations(n):
        left = TElement.one(n)
        for i in lhs:
            left = left * TElement.generator(n, i)
        if rhs is None:
            ok = not left
        else:
            right = TElement.one(n)
            for i in rhs:
                right = right * TElement.generator(n, i)
            ok = left == right and bool(left)
        if not ok:
            bad.append((lhs, rhs))
    return bad
