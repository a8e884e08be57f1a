"""
Heaps of words, minuscule recognition, and convex regions of the full heap E(n).

E(n) is the set of cells (a, b) with 0 <= a <= n and a - b even, ordered by
(a, b) <= (c, d) iff b <= d and |c - a| <= d - b. The second coordinate is
the rank. E(n) is never materialised; every question about it is answered
from that closed form.

Weights are strings over "+-" of length n. Position i-1 of the string
records whether the rank goes up ("+") or down ("-") from label i-1 to
label i.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .diagram import (
    CoxeterData,
    Word,
    build_diagram,
    cf_normal_form,
    commutation_class,
    has_full_support,
    validate_word,
)
from .errors import (
    BudgetExceededError,
    InvariantError,
    NoSuchElementError,
    NotFullSupportError,
    NotMinusculeError,
)

Cell = tuple[int, int]

ORACLE_MAX_LEN = 12


# --------------------------------------------------------------------------
# heaps of words


@dataclass(frozen=True)
class Heap:
    """Heap of a word: element k is the letter at position k.

    ``below[i, j]`` is True when element i lies strictly above element j.
    """

    labels: Word
    below: np.ndarray
    n: int

    def __len__(self) -> int:
        return len(self.labels)

    def less(self, x: int, y: int) -> bool:
        """x < y in the heap order."""
        return bool(self.below[y, x])

    @cached_property
    def covers(self) -> frozenset[tuple[int, int]]:
        """Pairs (x, y) with x covered by y."""
        out = set()
        b = self.below
        for y in range(len(self)):
            for x in np.flatnonzero(b[y]):
                x = int(x)
                if not np.any(b[y] & b[:, x]):
                    out.add((x, y))
        return frozenset(out)

    def open_interval(self, x: int, y: int) -> list[int]:
        return [z for z in range(len(self)) if self.less(x, z) and self.less(z, y)]

    def vertex_chain(self, p: int) -> list[int]:
        """Elements labelled p, bottom to top."""
        return [k for k in reversed(range(len(self))) if self.labels[k] == p]

    def edge_chain(self, p: int, q: int) -> list[int]:
        return [k for k in reversed(range(len(self))) if self.labels[k] in (p, q)]

    def is_alternating(self) -> bool:
        """No edge chain has two consecutive elements with the same label."""
        for p in range(self.n):
            chain = [self.labels[k] for k in self.edge_chain(p, p + 1)]
            if any(a == b for a, b in zip(chain, chain[1:])):
                return False
        return True

    def components(self) -> list[list[int]]:
        adj: dict[int, set[int]] = {k: set() for k in range(len(self))}
        for x, y in self.covers:
            adj[x].add(y)
            adj[y].add(x)
        seen: set[int] = set()
        comps = []
        for k in range(len(self)):
            if k in seen:
                continue
            stack, comp = [k], []
            seen.add(k)
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def rank_function(self) -> list[int]:
        """A rank function, with each component's minimum rank set to 0.

        Raises NotMinusculeError if the heap is not ranked.
        """
        rank: dict[int, int] = {}
        up: dict[int, list[int]] = {k: [] for k in range(len(self))}
        down: dict[int, list[int]] = {k: [] for k in range(len(self))}
        for x, y in self.covers:
            up[x].append(y)
            down[y].append(x)
        for comp in self.components():
            start = comp[0]
            rank[start] = 0
            stack = [start]
            while stack:
                v = stack.pop()
                for u, step in [(u, 1) for u in up[v]] + [(u, -1) for u in down[v]]:
                    want = rank[v] + step
                    if u not in rank:
                        rank[u] = want
                        stack.append(u)
                    elif rank[u] != want:
                        raise NotMinusculeError("heap is not ranked")
            low = min(rank[k] for k in comp)
            for k in comp:
                rank[k] -= low
        return [rank[k] for k in range(len(self))]


def heap_from_word(n: int, word: Iterable[int]) -> Heap:
    w = validate_word(n, word)
    return Heap(w, _kernels.below_matrix(_kernels.as_array(w)), n)


# --------------------------------------------------------------------------
# minuscule recognition


def is_minuscule(n: int, word: Iterable[int]) -> bool:
    w = validate_word(n, word)
    return _is_minuscule_cached(n, w)


@lru_cache(maxsize=1 << 18)
def _is_minuscule_cached(n: int, w: Word) -> bool:
    return bool(_kernels.is_minuscule_kernel(_kernels.as_array(w), n))


def has_forbidden_subword(diagram: CoxeterData, w: Sequence[int]) -> bool:
    for k in range(len(w) - 1):
        if w[k] == w[k + 1]:
            return True
        if k + 2 < len(w) and w[k] == w[k + 2] and diagram.forbidden_triple(w[k], w[k + 1]):
            return True
    return False


_oracle_memo: dict[tuple[CoxeterData, Word], bool] = {}


def forbidden_oracle(diagram: CoxeterData, word: Iterable[int], max_len: int = ORACLE_MAX_LEN) -> bool:
    """True if some word commutation equivalent to ``word`` has a forbidden subword.

    Exhaustive search over the commutation class; results are memoised per class.
    """
    w = validate_word(diagram.n, word)
    if len(w) > max_len:
        raise BudgetExceededError(f"oracle limited to {max_len} letters, got {len(w)}")
    key = (diagram, w)
    hit = _oracle_memo.get(key)
    if hit is not None:
        return hit
    cls = commutation_class(w)
    verdict = any(has_forbidden_subword(diagram, v) for v in cls)
    for v in cls:
        _oracle_memo[(diagram, v)] = verdict
    return verdict


# --------------------------------------------------------------------------
# regions of E(n)


def e_leq(x: Cell, y: Cell) -> bool:
    (a, b), (c, d) = x, y
    return b <= d and abs(c - a) <= d - b


def e_covers(x: Cell, y: Cell) -> bool:
    """x is covered by y in E(n)."""
    return abs(y[0] - x[0]) == 1 and y[1] == x[1] + 1


@dataclass(frozen=True)
class Region:
    """Finite set of cells of E(n)."""

    n: int
    cells: frozenset[Cell]

    def __post_init__(self):
        for a, b in self.cells:
            if not 0 <= a <= self.n or (a - b) % 2:
                raise InvariantError(f"({a}, {b}) is not a cell of E({self.n})")

    @classmethod
    def of(cls, n: int, cells: Iterable[Sequence[int]]) -> "Region":
        return cls(n, frozenset((int(a), int(b)) for a, b in cells))

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(sorted(self.cells))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(a for a, _ in self.cells)

    def has_full_support(self) -> bool:
        return len(self.support) == self.n + 1

    def chain(self, p: int) -> list[int]:
        """Ranks of the cells labelled p, ascending."""
        return sorted(b for a, b in self.cells if a == p)

    def covering_pairs(self) -> list[tuple[Cell, Cell]]:
        cs = sorted(self.cells)
        return [(x, y) for x in cs for y in cs if e_covers(x, y)]

    def word(self) -> Word:
        """A word for the region: cells read by descending rank."""
        return tuple(a for a, b in sorted(self.cells, key=lambda c: (-c[1], c[0])))

    def shift(self, k: int) -> "Region":
        return tau_shift(self, k)

    def normalized(self) -> "Region":
        """Shift by an even amount so that the lowest rank is 0 or 1."""
        if not self.cells:
            return self
        low = min(b for _, b in self.cells)
        return tau_shift(self, -(low // 2))

    def to_json(self) -> list[list[int]]:
        return [[a, b] for a, b in sorted(self.cells)]


def tau_shift(region: Region, k: int) -> Region:
    return Region(region.n, frozenset((a, b + 2 * k) for a, b in region.cells))


def same_up_to_tau(r1: Region, r2: Region) -> bool:
    return r1.n == r2.n and r1.normalized() == r2.normalized()


def _convex_direct(region: Region) -> bool:
    n, cells = region.n, region.cells
    for (a, b), (c, d) in itertools.permutations(cells, 2):
        if not e_leq((a, b), (c, d)):
            continue
        for e in range(b, d + 1):
            for x in range(e % 2, n + 1, 2):
                mid = (x, e)
                if mid in cells:
                    continue
                if e_leq((a, b), mid) and e_leq(mid, (c, d)):
                    return False
    return True


def _convex_edge_chains(region: Region) -> bool:
    # Each edge chain of E(n) has exactly one cell per rank.
    for p in range(region.n):
        ranks = sorted(b for a, b in region.cells if a in (p, p + 1))
        if ranks and ranks[-1] - ranks[0] != len(ranks) - 1:
            return False
    return True


def is_convex_region(region: Region) -> bool:
    direct = _convex_direct(region)
    if region.has_full_support():
        chains = _convex_edge_chains(region)
        if chains != direct:
            raise RuntimeError(
                f"edge-chain and direct convexity disagree on {region.to_json()}"
            )
    return direct


def region_word(region: Region) -> Word:
    return cf_normal_form(region.n, region.word())


# --------------------------------------------------------------------------
# embedding and weights


def complete_full_support(n: int, word: Iterable[int]) -> Word:
    w = validate_word(n, word)
    if not is_minuscule(n, w):
        raise NotMinusculeError(f"{list(w)} is not minuscule")
    missing = sorted(set(range(n + 1)) - set(w))
    return w + tuple(missing)


def rank_and_embed(n: int, word: Iterable[int]) -> Region:
    """Image of the heap of a minuscule word in E(n).

    Ranks come from the full-support completion of the word, so that the
    image is convex even when the support is disconnected; the result is
    then shifted by an even amount so its lowest rank is 0 or 1.
    """
    w = validate_word(n, word)
    if not is_minuscule(n, w):
        raise NotMinusculeError(f"{list(w)} is not minuscule")
    if not w:
        return Region(n, frozenset())
    full = complete_full_support(n, w)
    heap = heap_from_word(n, full)
    rank = heap.rank_function()
    fix = (heap.labels[0] - rank[0]) % 2
    cells = frozenset((heap.labels[k], rank[k] + fix) for k in range(len(w)))
    return Region(n, cells).normalized()


def validate_weight(n: int, weight: str) -> str:
    weight = weight.replace("−", "-")
    if len(weight) != n or set(weight) - {"+", "-"}:
        raise InvariantError(f"weight must be a length-{n} string over '+-', got {weight!r}")
    return weight


def all_weights(n: int) -> list[str]:
    return ["".join(s) for s in itertools.product("+-", repeat=n)]


def contour_from_ranks(ranks: Sequence[int]) -> str:
    out = []
    for i in range(1, len(ranks)):
        step = ranks[i] - ranks[i - 1]
        if step not in (1, -1):
            raise InvariantError(f"ranks {list(ranks)} do not form a contour")
        out.append("+" if step == 1 else "-")
    return "".join(out)


def ranks_from_contour(weight: str, start: int = 0) -> list[int]:
    ranks = [start]
    for s in weight:
        ranks.append(ranks[-1] + (1 if s == "+" else -1))
    return ranks


def region_weights(region: Region) -> tuple[str, str]:
    """(lower, upper) weights of a full-support region."""
    if not region.has_full_support():
        raise NotFullSupportError("weights need full support")
    low = [region.chain(p)[0] for p in range(region.n + 1)]
    high = [region.chain(p)[-1] for p in range(region.n + 1)]
    return contour_from_ranks(low), contour_from_ranks(high)


def weights_of(n: int, word: Iterable[int]) -> tuple[str, str]:
    w = validate_word(n, word)
    if not is_minuscule(n, w):
        raise NotMinusculeError(f"{list(w)} is not minuscule")
    if not has_full_support(n, w):
        raise NotFullSupportError(f"{list(w)} does not have full support")
    return region_weights(rank_and_embed(n, w))


def coxeter_word(n: int, weight: str) -> Word:
    lam = validate_weight(n, weight)
    ranks = ranks_from_contour(lam)
    order = sorted(range(n + 1), key=lambda p: (-ranks[p], p))
    return tuple(order)


def c_region(n: int, lam: str, mu: str, r: int) -> Region:
    """Cells with lower boundary mu, upper boundary lam and r cells labelled 0.

    The lowest 0 sits at rank 0. Raises NoSuchElementError when some vertex
    chain would be empty.
    """
    lam = validate_weight(n, lam)
    mu = validate_weight(n, mu)
    if r < 1:
        raise NoSuchElementError("r must be at least 1")
    low = ranks_from_contour(mu, 0)
    high = ranks_from_contour(lam, 2 * (r - 1))
    cells = set()
    for p in range(n + 1):
        if high[p] < low[p]:
            raise NoSuchElementError(
                f"no minuscule element C^{r}_({lam},{mu}): label {p} chain is empty"
            )
        cells.update((p, b) for b in range(low[p], high[p] + 1, 2))
    return Region(n, frozenset(cells))


def construct_C(n: int, lam: str, mu: str, r: int) -> Word:
    """Canonical word of the full-support minuscule element with upper weight
    lam, lower weight mu and r letters equal to 0."""
    region = c_region(n, lam, mu, r)
    if not is_convex_region(region):
        raise NoSuchElementError(f"C^{r}_({lam},{mu}) region is not convex")
    word = region_word(region)
    if not is_minuscule(n, word):
        raise NoSuchElementError(f"C^{r}_({lam},{mu}) is not minuscule")
    if region_weights(rank_and_embed(n, word)) != (mu, lam):
        raise NoSuchElementError(f"C^{r}_({lam},{mu}) has the wrong weights")
    return word


def glue(upper_part: Region, lower_part: Region) -> tuple[int, Region]:
    """Stack ``upper_part`` on top of ``lower_part``.

    ``lower_part``'s upper weight must equal ``upper_part``'s lower weight.
    Returns the tau-shift k applied to ``upper_part`` and the union, in which
    ``lower_part`` is an ideal.
    """
    if upper_part.n != lower_part.n:
        raise InvariantError("regions live in different E(n)")
    n = upper_part.n
    if region_weights(lower_part)[1] != region_weights(upper_part)[0]:
        raise InvariantError("upper weight of the lower part must equal lower weight of the upper part")
    # lowest 0 of the top piece two ranks above the highest 0 of the bottom piece
    k2 = lower_part.chain(0)[-1] + 2 - upper_part.chain(0)[0]
    k = k2 // 2
    moved = tau_shift(upper_part, k)
    return k, Region(n, lower_part.cells | moved.cells)


def is_ideal_of(sub: Region, whole: Region) -> bool:
    return sub.cells <= whole.cells and all(
        x in sub.cells for y in sub.cells for x in whole.cells if e_leq(x, y)
    )


def is_filter_of(sub: Region, whole: Region) -> bool:
    return sub.cells <= whole.cells and all(
        x in sub.cells for y in sub.cells for x in whole.cells if e_leq(y, x)
    )


# --------------------------------------------------------------------------
# rendering


def region_to_dot(region: Region, name: str = "heap") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for a, b in sorted(region.cells):
        lines.append(f'  "{a},{b}" [label="{a}"];')
    for x, y in region.covering_pairs():
        lines.append(f'  "{x[0]},{x[1]}" -> "{y[0]},{y[1]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def region_to_tikz(region: Region) -> str:
    lines = ["\\begin{tikzpicture}[xscale=1,yscale=1]"]
    for a, b in sorted(region.cells):
        lines.append(f"\\node[draw] at ({a / 2:g},{b / 2:g}) ({a}_{b}) {{${a}$}};")
    for x, y in region.covering_pairs():
        lines.append(f"\\draw ({x[0]}_{x[1]}) -- ({y[0]}_{y[1]});")
    lines.append("\\end{tikzpicture}")
    return "\n".join(lines) + "\n"


def region_from_json(n: int, data) -> Region:
    if isinstance(data, str):
        data = json.loads(data)
    return Region.of(n, data)

