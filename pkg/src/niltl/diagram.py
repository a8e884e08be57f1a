"""
Coxeter data for the Dynkin diagram D_{n+1}^(2) and word primitives.

Generators are the integers 0..n on a path 0 - 1 - ... - n. The two end edges
{0,1} and {n-1,n} are double edges whose arrows point outward (toward 0 and
toward n); every other edge is single.

A word is a tuple of labels. Its leftmost letter is the maximal element of the
heap, so under a left action the rightmost letter acts first.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from . import _kernels
from .errors import LetterRangeError, RankTooSmallError

Word = tuple[int, ...]


@dataclass(frozen=True)
class CoxeterData:
    n: int
    # Reverses both arrows. Only used to check that the verification harness
    # notices a wrong diagram.
    flipped: bool = False

    @property
    def generators(self) -> range:
        return range(self.n + 1)

    def _check(self, i: int) -> None:
        if not 0 <= i <= self.n:
            raise LetterRangeError(f"generator {i} outside [0, {self.n}]")

    def bond(self, i: int, j: int) -> int:
        self._check(i)
        self._check(j)
        if i == j:
            return 1
        if abs(i - j) > 1:
            return 2
        if {i, j} in ({0, 1}, {self.n - 1, self.n}):
            return 4
        return 3

    def adjacent(self, i: int, j: int) -> bool:
        return abs(i - j) == 1

    def arrow(self, i: int, j: int) -> int | None:
        """Endpoint the arrow on edge {i, j} points toward, or None."""
        if self.bond(i, j) != 4:
            return None
        if {i, j} == {0, 1}:
            return 1 if self.flipped else 0
        return self.n - 1 if self.flipped else self.n

    def forbidden_triple(self, i: int, j: int) -> bool:
        """True if s_i s_j s_i is a forbidden subword."""
        if not self.adjacent(i, j):
            return False
        b = self.bond(i, j)
        return b == 3 or (b == 4 and self.arrow(i, j) == j)


def build_diagram(n: int, *, flipped: bool = False) -> CoxeterData:
    if n < 2:
        raise RankTooSmallError(f"D_(n+1)^(2) needs n >= 2, got n={n}")
    return CoxeterData(n, flipped)


def validate_word(n: int, word: Iterable[int]) -> Word:
    w = tuple(int(a) for a in word)
    for a in w:
        if not 0 <= a <= n:
            raise LetterRangeError(f"letter {a} outside [0, {n}]")
    return w


def commutes(i: int, j: int) -> bool:
    return abs(i - j) > 1


def support(word: Sequence[int]) -> frozenset[int]:
    return frozenset(word)


def has_full_support(n: int, word: Sequence[int]) -> bool:
    return len(set(word)) == n + 1


def cf_normal_form(n: int, word: Iterable[int]) -> Word:
    """Canonical representative of the commutation class of ``word``.

    Letters are grouped into layers by their height above the bottom of the
    heap; each layer is sorted ascending and layers are written top first.
    """
    w = validate_word(n, word)
    return _cf_cached(w)


@lru_cache(maxsize=1 << 18)
def _cf_cached(w: Word) -> Word:
    if len(w) < 2:
        return w
    depth = _kernels.layer_depths(_kernels.as_array(w))
    layers: dict[int, list[int]] = {}
    for a, d in zip(w, depth.tolist()):
        layers.setdefault(d, []).append(a)
    out: list[int] = []
    for d in sorted(layers, reverse=True):
        out.extend(sorted(layers[d]))
    return tuple(out)


def commutation_class(word: Sequence[int], limit: int = 1_000_000) -> set[Word]:
    """All words reachable by swapping adjacent commuting letters (BFS)."""
    start = tuple(word)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for k in range(len(w) - 1):
                if commutes(w[k], w[k + 1]):
                    v = w[:k] + (w[k + 1], w[k]) + w[k + 2:]
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
        if len(seen) > limit:
            raise RuntimeError("commutation class exceeds limit")
        frontier = nxt
    return seen


def parse_word(text: str) -> Word:
    text = text.strip()
    if text.startswith("["):
        return tuple(int(a) for a in json.loads(text))
    if not text:
        return ()
    return tuple(int(a) for a in text.split(","))


def word_to_json(word: Sequence[int]) -> list[int]:
    return [int(a) for a in word]
