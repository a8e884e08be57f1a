import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from niltl import _kernels

from oracles import act_string, minuscule_by_orbit, strictly_above, weights

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not active")


def word_arrays(n, max_len=10):
    return st.lists(st.integers(0, n), max_size=max_len).map(lambda w: np.asarray(w, dtype=np.int64))


@pytest.mark.parametrize("n", [2, 3, 4])
@given(data=st.data())
def test_pure_below_matrix_matches_closure(n, data):
    w = data.draw(word_arrays(n, 8))
    below = _kernels.PY_KERNELS["below_matrix"](w)
    pairs = {(i, j) for i in range(len(w)) for j in range(len(w)) if below[i, j]}
    assert pairs == strictly_above(tuple(w.tolist()))


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_pure_minuscule_matches_orbit_oracle(n, data):
    w = data.draw(word_arrays(n, 7))
    assert _kernels.PY_KERNELS["is_minuscule"](w, n) == minuscule_by_orbit(n, tuple(w.tolist()))


@pytest.mark.parametrize("n", [2, 3, 4])
@given(data=st.data())
def test_pure_action_matches_string_rules(n, data):
    w = tuple(data.draw(word_arrays(n, 8)).tolist())
    target, exps = _kernels.PY_KERNELS["act_on_configs"](np.asarray(w, dtype=np.int64), n)
    for s in weights(n):
        mask = sum(1 << j for j, c in enumerate(s) if c == "+")
        got = act_string(n, w, s)
        if got is None:
            assert target[mask] == -1
        else:
            s2, e = got
            assert target[mask] == sum(1 << j for j, c in enumerate(s2) if c == "+")
            assert exps[mask] == e


@needs_numba
@pytest.mark.parametrize("n", [2, 3, 5])
@given(data=st.data())
def test_jitted_equals_pure(n, data):
    w = data.draw(word_arrays(n, 12))
    assert np.array_equal(_kernels.layer_depths(w), _kernels.PY_KERNELS["layer_depths"](w))
    assert np.array_equal(_kernels.below_matrix(w), _kernels.PY_KERNELS["below_matrix"](w))
    assert _kernels.is_minuscule_kernel(w, n) == _kernels.PY_KERNELS["is_minuscule"](w, n)
    t1, e1 = _kernels.act_on_configs(w, n)
    t2, e2 = _kernels.PY_KERNELS["act_on_configs"](w, n)
    assert np.array_equal(t1, t2) and np.array_equal(e1, e2)


def test_env_flag_selects_pure_path():
    script = (
        "import json\n"
        "from niltl import _kernels, enumerate_minuscule, matrix_of, q_element\n"
        "print(json.dumps([_kernels.HAVE_NUMBA, enumerate_minuscule(2, 8).counts,"
        " matrix_of(q_element(3)).to_json()]))\n"
    )
    env = dict(os.environ, NILTL_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True, check=True)
    have, counts, mat = json.loads(out.stdout)
    assert have is False
    assert counts == [1, 3, 5, 6, 5, 5, 6, 5, 5]
    from niltl import matrix_of, q_element

    assert mat == matrix_of(q_element(3)).to_json()


def test_empty_and_single_words():
    e = np.zeros(0, dtype=np.int64)
    assert _kernels.layer_depths(e).shape == (0,)
    assert _kernels.is_minuscule_kernel(e, 2)
    assert _kernels.is_minuscule_kernel(np.asarray([1]), 2)


def test_warm_up_returns_elapsed_time():
    assert _kernels.warm_up() >= 0
