"""Breadth-first enumeration of minuscule elements by length."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping

from .diagram import Word, cf_normal_form
from .errors import BudgetExceededError, RankTooSmallError
from .heaps import is_minuscule

DEFAULT_MAX_LEN = {2: 12, 3: 10}
FALLBACK_MAX_LEN = 8
WORD_BUDGET = 2_000_000


def default_max_len(n: int) -> int:
    return DEFAULT_MAX_LEN.get(n, FALLBACK_MAX_LEN)


@dataclass
class EnumerationReport:
    n: int
    max_len: int
    counts: list[int]
    words: list[list[Word]] | None = field(default=None, repr=False)

    def window_sums(self, width: int) -> list[int]:
        c = self.counts
        return [sum(c[d:d + width]) for d in range(len(c) - width + 1)]

    def to_json(self, include_words: bool = False) -> dict:
        out = {"n": self.n, "maxLen": self.max_len, "countsPerLength": list(self.counts)}
        if include_words and self.words is not None:
            out["words"] = [[list(w) for w in layer] for layer in self.words]
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "EnumerationReport":
        words = data.get("words")
        if words is not None:
            words = [[tuple(w) for w in layer] for layer in words]
        return cls(int(data["n"]), int(data["maxLen"]), [int(x) for x in data["countsPerLength"]], words)


def enumerate_minuscule(n: int, max_len: int | None = None, *, budget: int = WORD_BUDGET) -> EnumerationReport:
    """All minuscule elements of length <= max_len, as canonical words.

    Removing the top of a minuscule heap leaves a minuscule heap, so every
    element of length d+1 is a letter prepended to one of length d.
    """
    if n < 2:
        raise RankTooSmallError(f"n must be >= 2, got {n}")
    if max_len is None:
        max_len = default_max_len(n)
    if max_len < 0:
        raise BudgetExceededError(f"max_len must be non-negative, got {max_len}")
    layers: list[list[Word]] = [[()]]
    total = 1
    for _ in range(max_len):
        nxt: set[Word] = set()
        for w in layers[-1]:
            for i in range(n + 1):
                v = (i,) + w
                if is_minuscule(n, v):
                    nxt.add(cf_normal_form(n, v))
        total += len(nxt)
        if total > budget:
            raise BudgetExceededError(f"more than {budget} words; lower max_len")
        layers.append(sorted(nxt))
    return EnumerationReport(n, max_len, [len(layer) for layer in layers], layers)


def minuscule_words(n: int, max_len: int) -> list[Word]:
    """Flat list of canonical minuscule words of length <= max_len."""
    rep = enumerate_minuscule(n, max_len)
    return [w for layer in rep.words for w in layer]


def brute_force_counts(n: int, max_len: int) -> list[int]:
    """Counts per length by filtering every word; slow, used as a cross-check."""
    counts = []
    for d in range(max_len + 1):
        seen = set()
        for w in itertools.product(range(n + 1), repeat=d):
            if is_minuscule(n, w):
                seen.add(cf_normal_form(n, w))
        counts.append(len(seen))
    return counts
