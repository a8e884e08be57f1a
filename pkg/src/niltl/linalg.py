"""Exact sparse Gaussian elimination over the rationals.

Rows are dicts column -> Fraction. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

def _normalize(row: Mapping) -> dict:
    return {k: Fraction(v) for k, v in row.items() if v}


def echelon(rows: Iterable[Mapping], last=None) -> tuple[list[dict], list]:
    """Reduced row echelon form of sparse rows.

    Returns (basis rows, pivot columns); each basis row has coefficient 1
    at its pivot and 0 at every other pivot. Column ``last`` is only used as
    a pivot when nothing else is left in the row.
    """
    basis: list[dict] = []
    pivots: list = []
    pivot_row: dict = {}
    for raw in rows:
        row = _normalize(raw)
        # eliminate against existing pivots
        changed = True
        while changed:
            changed = False
            for col in [c for c in row if c in pivot_row]:
                f = row.get(col)
                if not f:
                    continue
                for k, v in basis[pivot_row[col]].items():
                    nv = row.get(k, 0) - f * v
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                changed = True
        if not row:
            continue
        col = next((c for c in row if c != last), last)
        inv = 1 / row[col]
        row = {k: v * inv for k, v in row.items()}
        # keep the basis reduced
        for other in basis:
            f = other.get(col)
            if f:
                for k, v in row.items():
                    nv = other.get(k, 0) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivot_row[col] = len(basis)
        basis.append(row)
        pivots.append(col)
    return basis, pivots


def rank(rows: Iterable[Mapping]) -> int:
    return len(echelon(rows)[1])


def nullspace(rows: Sequence[Mapping], columns: Sequence[Hashable]) -> list[dict]:
    """Basis of {x : row . x = 0 for every row}, x indexed by ``columns``."""
    basis, pivots = echelon(rows)
    pivset = set(pivots)
    free = [c for c in columns if c not in pivset]
    out = []
    for f in free:
        vec = {f: Fraction(1)}
        for row, p in zip(basis, pivots):
            v = row.get(f)
            if v:
                vec[p] = -v
        out.append(vec)
    return out


def solve(rows: Sequence[Mapping], rhs: Sequence, columns: Sequence[Hashable]) -> dict | None:
    """One solution of A x = b, or None if inconsistent."""
    marker = object()
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[marker] = Fraction(b)
        aug.append(r)
    basis, pivots = echelon(aug, last=marker)
    if marker in pivots:
        return None
    x = {c: Fraction(0) for c in columns}
    for row, p in zip(basis, pivots):
        x[p] = row.get(marker, Fraction(0))
    return x


# dense helpers for small square matrices


def dense_identity(d: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]


def dense_mul(a: Sequence[Sequence[Fraction]], b: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    m, k, n = len(a), len(b), len(b[0]) if b else 0
    out = [[Fraction(0)] * n for _ in range(m)]
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(n):
                    if bt[j]:
                        oi[j] += v * bt[j]
    return out


def dense_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def dense_scale(a, s):
    return [[x * s for x in r] for r in a]


def dense_is_zero(a) -> bool:
    return all(not x for r in a for x in r)


def charpoly(a: Sequence[Sequence[Fraction]]) -> list[Fraction]:
    """Coefficients c_0..c_d of det(x I - a), lowest degree first (Faddeev-LeVerrier)."""
    d = len(a)
    coeffs = [Fraction(0)] * (d + 1)
    coeffs[d] = Fraction(1)
    m = [[Fraction(0)] * d for _ in range(d)]
    ident = dense_identity(d)
    for k in range(1, d + 1):
        m = dense_add(dense_mul(a, m), dense_scale(ident, coeffs[d - k + 1]))
        am = dense_mul(a, m)
        tr = sum(am[i][i] for i in range(d))
        coeffs[d - k] = -tr / k
    return coeffs
