"""
Finite-dimensional T(n)-modules obtained by specializing q.

M(c, m) is the string module tensored with k[q]/((q-c)^m). In the basis
weight (x) (q-c)^j, 0 <= j < m, multiplication by q is c*I + N where N sends
(q-c)^j to (q-c)^(j+1), so a generator coefficient q^e becomes (cI + N)^e.
The trivial module is one-dimensional with every generator acting by zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from . import linalg
from .algebra import TElement, defining_relations, q_element
from .errors import InvariantError, RankTooSmallError
from .heaps import all_weights
from .representation import apply_generator

Matrix = list[list[Fraction]]

DEFAULT_SEED = 20240601
RANDOM_TEST_VECTORS = 20


@dataclass(frozen=True)
class FiniteModule:
    n: int
    c: Fraction
    m: int
    generators: tuple[Matrix, ...] = field(repr=False)
    trivial: bool = False

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def action(self, i: int) -> Matrix:
        return self.generators[i]

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c": _frac_str(self.c),
            "m": self.m,
            "trivial": self.trivial,
            "dim": self.dim,
            "generators": [[[_frac_str(x) for x in row] for row in g] for g in self.generators],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FiniteModule":
        gens = tuple(
            [[Fraction(x) for x in row] for row in g] for g in data["generators"]
        )
        mod = cls(int(data["n"]), Fraction(data["c"]), int(data["m"]), gens, bool(data.get("trivial", False)))
        if len(gens) != mod.n + 1 or any(len(g) != mod.dim or any(len(r) != mod.dim for r in g) for g in gens):
            raise InvariantError("generator matrices have inconsistent shapes")
        return mod


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _q_block(c: Fraction, m: int, e: int) -> Matrix:
    """(cI + N)^e on k[q]/((q-c)^m) in the basis (q-c)^j."""
    base = linalg.dense_identity(m)
    step = [[c if r == col else Fraction(int(r == col + 1)) for col in range(m)] for r in range(m)]
    for _ in range(e):
        base = linalg.dense_mul(step, base)
    return base


def build_module(n: int, c, m: int) -> FiniteModule:
    if n < 2:
        raise RankTooSmallError(f"n must be >= 2, got {n}")
    c = Fraction(c)
    if c == 0:
        raise InvariantError("c must be nonzero; q acting nilpotently is out of range")
    if m < 1:
        raise InvariantError(f"m must be at least 1, got {m}")
    weights = all_weights(n)
    idx = {w: k for k, w in enumerate(weights)}
    d = len(weights) * m
    blocks = {}
    gens = []
    for i in range(n + 1):
        mat = [[Fraction(0)] * d for _ in range(d)]
        for mu in weights:
            hit = apply_generator(n, i, mu)
            if hit is None:
                continue
            lam, poly = hit
            e = poly.min_exp()
            if e not in blocks:
                blocks[e] = _q_block(c, m, e)
            blk = blocks[e]
            r0, c0 = idx[lam] * m, idx[mu] * m
            for a in range(m):
                for b in range(m):
                    mat[r0 + a][c0 + b] = blk[a][b]
        gens.append(mat)
    return FiniteModule(n, c, m, tuple(gens))


def trivial_module(n: int) -> FiniteModule:
    if n < 2:
        raise RankTooSmallError(f"n must be >= 2, got {n}")
    return FiniteModule(n, Fraction(0), 1, tuple([[Fraction(0)]] for _ in range(n + 1)), trivial=True)


def word_action(M: FiniteModule, word: Iterable[int]) -> Matrix:
    out = linalg.dense_identity(M.dim)
    for i in word:
        out = linalg.dense_mul(out, M.action(i))
    return out


def element_action(M: FiniteModule, a: TElement) -> Matrix:
    if a.n != M.n:
        raise InvariantError(f"element of T({a.n}) on a T({M.n})-module")
    out = [[Fraction(0)] * M.dim for _ in range(M.dim)]
    for w, coeff in a.items():
        out = linalg.dense_add(out, linalg.dense_scale(word_action(M, w), coeff))
    return out


def relations_hold(M: FiniteModule) -> bool:
    for lhs, rhs in defining_relations(M.n):
        left = word_action(M, lhs)
        if rhs is None:
            if not linalg.dense_is_zero(left):
                return False
        elif left != word_action(M, rhs):
            return False
    return True


def q_action(M: FiniteModule) -> Matrix:
    """Action of the central element Q, computed from the generators."""
    return element_action(M, q_element(M.n))


def q_substitution(M: FiniteModule) -> Matrix:
    """What Q should act as: I on weights tensored with cI + N."""
    if M.trivial:
        return [[Fraction(0)]]
    blk = _q_block(M.c, M.m, 1)
    d, m = M.dim, M.m
    out = [[Fraction(0)] * d for _ in range(d)]
    for k in range(d // m):
        for a in range(m):
            for b in range(m):
                out[k * m + a][k * m + b] = blk[a][b]
    return out


def q_charpoly(M: FiniteModule) -> list[Fraction]:
    return linalg.charpoly(q_action(M))


def endomorphism_dim(M: FiniteModule) -> int:
    """dim of {X : X A_i = A_i X for all generators}, by exact elimination."""
    d = M.dim
    cols = [(r, c) for r in range(d) for c in range(d)]
    rows = []
    for A in M.generators:
        nz_by_row = [[(k, v) for k, v in enumerate(A[r]) if v] for r in range(d)]
        nz_by_col = [[(k, A[k][c]) for k in range(d) if A[k][c]] for c in range(d)]
        for r in range(d):
            for c in range(d):
                eq: dict = {}
                # (X A)[r][c] - (A X)[r][c]
                for k, v in nz_by_col[c]:
                    eq[(r, k)] = eq.get((r, k), 0) + v
                for k, v in nz_by_row[r]:
                    eq[(k, c)] = eq.get((k, c), 0) - v
                eq = {key: val for key, val in eq.items() if val}
                if eq:
                    rows.append(eq)
    return len(cols) - linalg.rank(rows)


def _apply(A: Matrix, v: list[Fraction]) -> list[Fraction]:
    return [sum((a * x for a, x in zip(row, v) if a and x), Fraction(0)) for row in A]


def generated_dim(M: FiniteModule, v: list[Fraction]) -> int:
    """Dimension of the submodule generated by v."""
    span_rows: list[dict] = []
    queue = [v]
    while queue:
        x = queue.pop()
        row = {k: val for k, val in enumerate(x) if val}
        if not row:
            continue
        trial = span_rows + [row]
        if linalg.rank(trial) == len(span_rows):
            continue
        span_rows.append(row)
        for A in M.generators:
            queue.append(_apply(A, x))
    return len(span_rows)


def probe_vectors(M: FiniteModule, seed: int = DEFAULT_SEED, count: int = RANDOM_TEST_VECTORS) -> list[list[Fraction]]:
    d = M.dim
    vecs = [[Fraction(int(k == j)) for k in range(d)] for j in range(d)]
    rng = random.Random(seed)
    for _ in range(count):
        v = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(d)]
        if any(v):
            vecs.append(v)
    return vecs


def is_irreducible(M: FiniteModule, seed: int = DEFAULT_SEED) -> bool:
    """True iff every test vector (basis vectors plus seeded random ones)
    generates the whole module."""
    return all(generated_dim(M, v) == M.dim for v in probe_vectors(M, seed))
