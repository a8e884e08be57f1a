"""
Integer kernels for word combinatorics.

Every kernel exists twice: a numba ``@njit`` version and a plain numpy/python
version with the same signature. The jitted path is used when numba imports
and the environment variable ``NILTL_DISABLE_NUMBA`` is unset (or "0").
Both paths are exercised by the test suite and compared in
``benchmarks/bench_kernels.py``.

Words are int64 arrays of generator labels in [0, n]. Position 0 is the top
of the heap; a letter is comparable with every later letter whose label is
equal or adjacent, and the order is the transitive closure of that.
Particle configurations are bitmasks: bit j set means r_j = '+'.
"""

from __future__ import annotations

import os
import time

import numpy as np

_FLAG = os.environ.get("NILTL_DISABLE_NUMBA", "0").strip().lower()

try:
    if _FLAG not in ("", "0", "false", "no"):
        raise ImportError("numba disabled by NILTL_DISABLE_NUMBA")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


# --------------------------------------------------------------------------
# pure numpy / python reference versions


def _layer_depths_py(word):
    L = word.shape[0]
    depth = np.zeros(L, dtype=np.int64)
    # best[l] = max depth + 1 among already-scanned letters with label l
    top = int(word.max()) + 2 if L else 2
    best = np.zeros(top + 1, dtype=np.int64)
    for i in range(L - 1, -1, -1):
        a = int(word[i])
        d = best[a]
        if a > 0 and best[a - 1] > d:
            d = best[a - 1]
        if best[a + 1] > d:
            d = best[a + 1]
        depth[i] = d
        if d + 1 > best[a]:
            best[a] = d + 1
    return depth


def _below_matrix_py(word):
    L = word.shape[0]
    below = np.zeros((L, L), dtype=np.bool_)
    for i in range(L - 1, -1, -1):
        for j in range(i + 1, L):
            if abs(int(word[i]) - int(word[j])) <= 1 and not below[i, j]:
                below[i, j] = True
                below[i] |= below[j]
    return below


def _is_minuscule_py(word, n):
    L = word.shape[0]
    if L < 2:
        return True
    below = _below_matrix_py(word)
    for a in range(L):
        p = int(word[a])
        b = a + 1
        while b < L and word[b] != p:
            b += 1
        if b == L:
            continue
        mids = [c for c in range(a + 1, b) if below[a, c] and below[c, b]]
        labels = sorted(int(word[c]) for c in mids)
        if p == 0:
            ok = labels == [1]
        elif p == n:
            ok = labels == [n - 1]
        else:
            ok = labels == [p - 1, p + 1]
        if not ok:
            return False
    return True


def _act_on_configs_py(word, n):
    size = 1 << n
    conf = np.arange(size, dtype=np.int64)
    alive = np.ones(size, dtype=np.bool_)
    exps = np.zeros(size, dtype=np.int64)
    for k in range(word.shape[0] - 1, -1, -1):
        i = int(word[k])
        if i == 0:
            hit = (conf & 1) != 0
            conf = np.where(hit, conf & ~np.int64(1), conf)
            exps = exps + hit
        elif i == n:
            bit = np.int64(1) << (n - 1)
            hit = (conf & bit) == 0
            conf = np.where(hit, conf | bit, conf)
        else:
            lo = np.int64(1) << (i - 1)
            hi = np.int64(1) << i
            hit = ((conf & lo) == 0) & ((conf & hi) != 0)
            conf = np.where(hit, (conf | lo) & ~hi, conf)
        alive &= hit
    target = np.where(alive, conf, -1)
    return target, np.where(alive, exps, 0)


# --------------------------------------------------------------------------
# jitted versions

if HAVE_NUMBA:

    @njit(cache=True)
    def _layer_depths_nb(word):
        L = word.shape[0]
        depth = np.zeros(L, dtype=np.int64)
        top = 2
        for i in range(L):
            if word[i] + 2 > top:
                top = word[i] + 2
        best = np.zeros(top + 1, dtype=np.int64)
        for i in range(L - 1, -1, -1):
            a = word[i]
            d = best[a]
            if a > 0 and best[a - 1] > d:
                d = best[a - 1]
            if best[a + 1] > d:
                d = best[a + 1]
            depth[i] = d
            if d + 1 > best[a]:
                best[a] = d + 1
        return depth

    @njit(cache=True)
    def _below_matrix_nb(word):
        L = word.shape[0]
        below = np.zeros((L, L), dtype=np.bool_)
        for i in range(L - 1, -1, -1):
            for j in range(i + 1, L):
                if abs(word[i] - word[j]) <= 1 and not below[i, j]:
                    below[i, j] = True
                    for k in range(j + 1, L):
                        if below[j, k]:
                            below[i, k] = True
        return below

    @njit(cache=True)
    def _is_minuscule_nb(word, n):
        L = word.shape[0]
        if L < 2:
            return True
        below = _below_matrix_nb(word)
        for a in range(L):
            p = word[a]
            b = a + 1
            while b < L and word[b] != p:
                b += 1
            if b == L:
                continue
            count = 0
            n_lo = 0
            n_hi = 0
            for c in range(a + 1, b):
                if below[a, c] and below[c, b]:
                    count += 1
                    if word[c] == p - 1:
                        n_lo += 1
                    elif word[c] == p + 1:
                        n_hi += 1
            if p == 0:
                if not (count == 1 and n_hi == 1):
                    return False
            elif p == n:
                if not (count == 1 and n_lo == 1):
                    return False
            else:
                if not (count == 2 and n_lo == 1 and n_hi == 1):
                    return False
        return True

    @njit(cache=True)
    def _act_on_configs_nb(word, n):
        size = 1 << n
        target = np.empty(size, dtype=np.int64)
        exps = np.zeros(size, dtype=np.int64)
        for s in range(size):
            conf = s
            e = 0
            dead = False
            for k in range(word.shape[0] - 1, -1, -1):
                i = word[k]
                if i == 0:
                    if conf & 1:
                        conf &= ~1
                        e += 1
                    else:
                        dead = True
                        break
                elif i == n:
                    bit = 1 << (n - 1)
                    if conf & bit:
                        dead = True
                        break
                    conf |= bit
                else:
                    lo = 1 << (i - 1)
                    hi = 1 << i
                    if (conf & lo) == 0 and (conf & hi) != 0:
                        conf = (conf | lo) & ~hi
                    else:
                        dead = True
                        break
            if dead:
                target[s] = -1
                exps[s] = 0
            else:
                target[s] = conf
                exps[s] = e
        return target, exps

    layer_depths = _layer_depths_nb
    below_matrix = _below_matrix_nb
    is_minuscule_kernel = _is_minuscule_nb
    act_on_configs = _act_on_configs_nb
else:
    layer_depths = _layer_depths_py
    below_matrix = _below_matrix_py
    is_minuscule_kernel = _is_minuscule_py
    act_on_configs = _act_on_configs_py

PY_KERNELS = {
    "layer_depths": _layer_depths_py,
    "below_matrix": _below_matrix_py,
    "is_minuscule": _is_minuscule_py,
    "act_on_configs": _act_on_configs_py,
}


def as_array(word) -> np.ndarray:
    return np.asarray(tuple(word), dtype=np.int64)


def warm_up() -> float:
    """Compile (or load from cache) every jitted kernel; returns seconds spent."""
    t0 = time.perf_counter()
    w = np.asarray((0, 1, 0), dtype=np.int64)
    layer_depths(w)
    below_matrix(w)
    is_minuscule_kernel(w, 2)
    act_on_configs(w, 2)
    return time.perf_counter() - t0
