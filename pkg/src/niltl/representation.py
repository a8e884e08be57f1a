"""
The faithful representation of T(n) on particle configurations.

A weight is a length-n string over "+-". The same string is read as a
particle configuration r_0 ... r_{n-1} and as the contour of a Coxeter
element: position i-1 is '+' exactly when label i sits one rank above label
i-1. Generators act by

    u_0:            +r_1...  ->  q . -r_1...
    u_i (0<i<n):    ...-+... ->  ...+-...   at positions (i-1, i)
    u_n:            ...-     ->  ...+

and by zero when the pattern is absent.

Proper ideals of E(n) are stored as boundary vectors h (rank of the top cell
in each vertex chain). psi sends h to (h_0/2, contour of h) and generators act
on ideals by adding one cell. Both models give the same matrices.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from . import _kernels
from .algebra import TElement
from .diagram import Word, cf_normal_form, validate_word
from .errors import (
    InvariantError,
    LetterRangeError,
    NotMinusculeError,
    RankMismatchError,
    RankTooSmallError,
)
from .heaps import (
    Region,
    all_weights,
    contour_from_ranks,
    is_minuscule,
    ranks_from_contour,
    region_word,
    validate_weight,
)
from .laurent import ONE, LaurentPoly
from . import linalg

Weight = str


def weight_to_mask(weight: Weight) -> int:
    return sum(1 << j for j, s in enumerate(weight) if s == "+")


def mask_to_weight(mask: int, n: int) -> Weight:
    return "".join("+" if mask >> j & 1 else "-" for j in range(n))


def apply_generator(n: int, i: int, weight: Weight) -> tuple[Weight, LaurentPoly] | None:
    """u_i applied to a basis string; None stands for zero."""
    if n < 2:
        raise RankTooSmallError(f"n must be >= 2, got {n}")
    if not 0 <= i <= n:
        raise LetterRangeError(f"generator {i} outside [0, {n}]")
    r = list(validate_weight(n, weight))
    if i == 0:
        if r[0] != "+":
            return None
        r[0] = "-"
        return "".join(r), LaurentPoly.monomial(1)
    if i == n:
        if r[-1] != "-":
            return None
        r[-1] = "+"
        return "".join(r), ONE
    if r[i - 1] == "-" and r[i] == "+":
        r[i - 1], r[i] = "+", "-"
        return "".join(r), ONE
    return None


# ---------------------------------------------------------------------------
# vectors


class StateVector:
    """Finite combination of weights with Laurent polynomial coefficients."""

    __slots__ = ("n", "_entries")

    def __init__(self, n: int, entries: Mapping[Weight, LaurentPoly] = None):
        self.n = n
        out = {}
        for w, p in (entries or {}).items():
            w = validate_weight(n, w)
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.constant(p)
            if p:
                out[w] = out.get(w, LaurentPoly()) + p
        self._entries = {w: p for w, p in out.items() if p}

    @classmethod
    def basis(cls, n: int, weight: Weight) -> "StateVector":
        return cls(n, {weight: ONE})

    @property
    def entries(self) -> dict[Weight, LaurentPoly]:
        return dict(self._entries)

    def __getitem__(self, w: Weight) -> LaurentPoly:
        return self._entries.get(w, LaurentPoly())

    def __bool__(self):
        return bool(self._entries)

    def __add__(self, other: "StateVector") -> "StateVector":
        if other.n != self.n:
            raise RankMismatchError(f"n={self.n} vs n={other.n}")
        out = dict(self._entries)
        for w, p in other._entries.items():
            out[w] = out.get(w, LaurentPoly()) + p
        return StateVector(self.n, out)

    def scale(self, p: LaurentPoly) -> "StateVector":
        return StateVector(self.n, {w: v * p for w, v in self._entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, StateVector) and self.n == other.n and self._entries == other._entries

    def __repr__(self) -> str:
        inner = ", ".join(f"{w}: {p}" for w, p in sorted(self._entries.items()))
        return f"StateVector({self.n}, {{{inner}}})"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [{"weight": w, "poly": p.to_json()} for w, p in sorted(self._entries.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "StateVector":
        return cls(int(data["n"]), {e["weight"]: LaurentPoly.from_json(e["poly"]) for e in data["entries"]})


@lru_cache(maxsize=1 << 16)
def _word_action(n: int, word: Word) -> tuple[tuple[int, int], ...]:
    """(target mask or -1, q-exponent) for every input mask."""
    target, exps = _kernels.act_on_configs(_kernels.as_array(word), n)
    return tuple(zip(target.tolist(), exps.tolist()))


def apply_word(n: int, word: Iterable[int], weight: Weight) -> tuple[Weight, LaurentPoly] | None:
    w = validate_word(n, word)
    t, e = _word_action(n, w)[weight_to_mask(validate_weight(n, weight))]
    if t < 0:
        return None
    return mask_to_weight(t, n), LaurentPoly.monomial(e)


def apply_element(a: TElement, v: StateVector) -> StateVector:
    if a.n != v.n:
        raise RankMismatchError(f"element in T({a.n}) acting on M_q({v.n})")
    n = a.n
    out: dict[Weight, LaurentPoly] = {}
    for word, c in a.items():
        table = _word_action(n, word)
        for w, p in v.entries.items():
            t, e = table[weight_to_mask(w)]
            if t < 0:
                continue
            key = mask_to_weight(t, n)
            out[key] = out.get(key, LaurentPoly()) + p.shift(e) * c
    return StateVector(n, out)


# ---------------------------------------------------------------------------
# matrices


class WeightMatrix:
    """Sparse 2^n x 2^n matrix indexed by weights; absent entries are 0."""

    __slots__ = ("n", "_entries")

    def __init__(self, n: int, entries: Mapping[tuple[Weight, Weight], LaurentPoly] = None):
        self.n = n
        out = {}
        for (r, c), p in (entries or {}).items():
            if not isinstance(p, LaurentPoly):
                p = LaurentPoly.constant(p)
            if p:
                out[(validate_weight(n, r), validate_weight(n, c))] = p
        self._entries = out

    @classmethod
    def identity(cls, n: int) -> "WeightMatrix":
        return cls(n, {(w, w): ONE for w in all_weights(n)})

    @classmethod
    def unit(cls, n: int, row: Weight, col: Weight, p: LaurentPoly = ONE) -> "WeightMatrix":
        return cls(n, {(row, col): p})

    @property
    def dim(self) -> int:
        return 1 << self.n

    @property
    def entries(self) -> dict[tuple[Weight, Weight], LaurentPoly]:
        return dict(self._entries)

    def __getitem__(self, key: tuple[Weight, Weight]) -> LaurentPoly:
        return self._entries.get(key, LaurentPoly())

    def _check(self, other: "WeightMatrix") -> None:
        if not isinstance(other, WeightMatrix):
            raise TypeError(f"expected WeightMatrix, got {type(other).__name__}")
        if other.n != self.n:
            raise RankMismatchError(f"n={self.n} vs n={other.n}")

    def __add__(self, other: "WeightMatrix") -> "WeightMatrix":
        self._check(other)
        out = dict(self._entries)
        for k, p in other._entries.items():
            out[k] = out.get(k, LaurentPoly()) + p
        return WeightMatrix(self.n, out)

    def __neg__(self):
        return WeightMatrix(self.n, {k: -p for k, p in self._entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other: "WeightMatrix") -> "WeightMatrix":
        self._check(other)
        by_row: dict[Weight, list[tuple[Weight, LaurentPoly]]] = {}
        for (k, c), p in other._entries.items():
            by_row.setdefault(k, []).append((c, p))
        out: dict[tuple[Weight, Weight], LaurentPoly] = {}
        for (r, k), p in sorted(self._entries.items()):
            for c, p2 in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), LaurentPoly()) + p * p2
        return WeightMatrix(self.n, out)

    __mul__ = __matmul__

    def scale(self, p) -> "WeightMatrix":
        if not isinstance(p, LaurentPoly):
            p = LaurentPoly.constant(p)
        return WeightMatrix(self.n, {k: v * p for k, v in self._entries.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, WeightMatrix) and self.n == other.n and self._entries == other._entries

    def __hash__(self):
        return hash((self.n, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        inner = ", ".join(f"({r},{c}): {p}" for (r, c), p in sorted(self._entries.items()))
        return f"WeightMatrix({self.n}, {{{inner}}})"

    def evaluate(self, q) -> list[list[Fraction]]:
        """Dense rational matrix at a nonzero rational q, rows/cols in all_weights order."""
        idx = {w: k for k, w in enumerate(all_weights(self.n))}
        d = self.dim
        out = [[Fraction(0)] * d for _ in range(d)]
        for (r, c), p in self._entries.items():
            out[idx[r]][idx[c]] = p(q)
        return out

    def min_exponent(self) -> int | None:
        if not self._entries:
            return None
        return min(p.min_exp() for p in self._entries.values())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "entries": [
                {"row": r, "col": c, "poly": p.to_json()}
                for (r, c), p in sorted(self._entries.items())
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "WeightMatrix":
        return cls(
            int(data["n"]),
            {(e["row"], e["col"]): LaurentPoly.from_json(e["poly"]) for e in data["entries"]},
        )

    def to_csv(self) -> str:
        """row,col,exponent lines; only defined for monomial entries with coefficient 1."""
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["row", "col", "exponent"])
        for (r, c), p in sorted(self._entries.items()):
            if not p.is_monomial() or p.coeff(p.min_exp()) != 1:
                raise InvariantError(f"entry ({r},{c}) = {p} is not a monic monomial")
            wr.writerow([r, c, p.min_exp()])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, n: int, text: str) -> "WeightMatrix":
        rows = list(csv.DictReader(io.StringIO(text)))
        return cls(n, {(r["row"], r["col"]): LaurentPoly.monomial(int(r["exponent"])) for r in rows})


def matrix_of_word(n: int, word: Iterable[int]) -> WeightMatrix:
    w = validate_word(n, word)
    out = {}
    for s, (t, e) in enumerate(_word_action(n, w)):
        if t >= 0:
            out[(mask_to_weight(t, n), mask_to_weight(s, n))] = LaurentPoly.monomial(e)
    return WeightMatrix(n, out)


def matrix_of(a: TElement) -> WeightMatrix:
    """Matrix of the action of a; rows are output weights, columns input weights."""
    n = a.n
    out: dict[tuple[Weight, Weight], LaurentPoly] = {}
    for word, c in a.items():
        for s, (t, e) in enumerate(_word_action(n, word)):
            if t >= 0:
                key = (mask_to_weight(t, n), mask_to_weight(s, n))
                out[key] = out.get(key, LaurentPoly()) + LaurentPoly.monomial(e, c)
    return WeightMatrix(n, out)


# ---------------------------------------------------------------------------
# proper ideals of E(n)


@dataclass(frozen=True)
class IdealBoundary:
    """h[p] is the rank of the top cell of vertex chain p in a proper ideal."""

    h: tuple[int, ...]

    def __post_init__(self):
        h = tuple(int(x) for x in self.h)
        object.__setattr__(self, "h", h)
        if len(h) < 3:
            raise InvariantError(f"boundary needs n+1 >= 3 entries, got {len(h)}")
        for p, x in enumerate(h):
            if (x - p) % 2:
                raise InvariantError(f"h[{p}]={x} has the wrong parity")
            if p and abs(x - h[p - 1]) != 1:
                raise InvariantError(f"h[{p - 1}], h[{p}] = {h[p - 1]}, {x} differ by more than 1")

    @property
    def n(self) -> int:
        return len(self.h) - 1

    def shift(self, k: int) -> "IdealBoundary":
        """tau^k: every chain grows by k cells."""
        return IdealBoundary(tuple(x + 2 * k for x in self.h))

    def contains(self, other: "IdealBoundary") -> bool:
        return all(a >= b for a, b in zip(self.h, other.h))

    def to_json(self) -> list[int]:
        return list(self.h)


def psi(J: IdealBoundary) -> tuple[int, Weight]:
    return J.h[0] // 2, contour_from_ranks(J.h)


def psi_inv(n: int, c: int, weight: Weight) -> IdealBoundary:
    return IdealBoundary(tuple(ranks_from_contour(validate_weight(n, weight), 2 * c)))


def raise_ideal(i: int, J: IdealBoundary) -> IdealBoundary | None:
    """Add the cell (i, h_i + 2) if that leaves an ideal; None otherwise."""
    n = J.n
    if not 0 <= i <= n:
        raise LetterRangeError(f"generator {i} outside [0, {n}]")
    h = list(J.h)
    for p in (i - 1, i + 1):
        if 0 <= p <= n and h[p] != h[i] + 1:
            return None
    h[i] += 2
    return IdealBoundary(tuple(h))


def raise_word(word: Iterable[int], J: IdealBoundary) -> IdealBoundary | None:
    """Act by a word, rightmost letter first."""
    cur = J
    for i in reversed(tuple(word)):
        cur = raise_ideal(i, cur)
        if cur is None:
            return None
    return cur


def interval_region(J: IdealBoundary, J2: IdealBoundary) -> Region:
    """The cells of J2 that are not in J."""
    if J.n != J2.n:
        raise RankMismatchError(f"n={J.n} vs n={J2.n}")
    if not J2.contains(J):
        raise InvariantError(f"{J2.h} does not contain {J.h}")
    cells = frozenset((p, b) for p in range(J.n + 1) for b in range(J.h[p] + 2, J2.h[p] + 1, 2))
    return Region(J.n, cells)


def theta(J: IdealBoundary) -> tuple[Weight, LaurentPoly]:
    """Image of b_J in the string model: q^c times the weight."""
    c, lam = psi(J)
    return lam, LaurentPoly.monomial(c)


def boundary_matrix_of_word(n: int, word: Iterable[int]) -> WeightMatrix:
    """Matrix of a word computed in the ideal model and transported by theta."""
    w = validate_word(n, word)
    out = {}
    for mu in all_weights(n):
        J = psi_inv(n, 0, mu)
        J2 = raise_word(w, J)
        if J2 is not None:
            lam, p = theta(J2)
            out[(lam, mu)] = p
    return WeightMatrix(n, out)


def faithfulness_witness(n: int, word: Iterable[int]) -> tuple[IdealBoundary, IdealBoundary]:
    """(J, J') with u_w b_J = b_J' and J' minus J shaped like the heap of w."""
    w = cf_normal_form(n, validate_word(n, word))
    if not is_minuscule(n, w):
        raise NotMinusculeError(f"{list(w)} is not minuscule")
    for mu in all_weights(n):
        J = psi_inv(n, 0, mu)
        J2 = raise_word(w, J)
        if J2 is not None:
            if region_word(interval_region(J, J2)) != w:
                raise InvariantError(f"interval for {list(w)} has a different heap")
            return J, J2
    raise InvariantError(f"{list(w)} acts by zero on every weight")


def independent_by_coefficients(mats: list[WeightMatrix]) -> bool:
    """Linear independence over the rationals, reading each matrix as a
    vector indexed by (row, col, exponent)."""
    rows = []
    for m in mats:
        row = {}
        for (r, c), p in m.entries.items():
            for e, v in p.coeffs.items():
                row[(r, c, e)] = v
        rows.append(row)
    return linalg.rank(rows) == len(mats)


def independent_by_evaluation(mats: list[WeightMatrix]) -> bool:
    """Linear independence over the rationals, checked by evaluating at
    q = 1, 2, ..., D+1 where D bounds every entry's degree.

    A rational combination vanishing at D+1 points vanishes identically,
    so this decides the same question as the coefficient test.
    """
    if not mats:
        return True
    if any(p.min_exp() < 0 for m in mats for p in m.entries.values()):
        raise InvariantError("evaluation test expects polynomial entries")
    degree = max((p.max_exp() for m in mats for p in m.entries.values()), default=0)
    rows = []
    for m in mats:
        row = {}
        for (r, c), p in m.entries.items():
            for k in range(1, degree + 2):
                v = p(k)
                if v:
                    row[(r, c, k)] = v
        rows.append(row)
    return linalg.rank(rows) == len(mats)


def random_boundary(n: int, rng: random.Random, spread: int = 5) -> IdealBoundary:
    c = rng.randint(-spread, spread)
    return psi_inv(n, c, "".join(rng.choice("+-") for _ in range(n)))
