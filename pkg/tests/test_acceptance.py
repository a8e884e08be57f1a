"""The ten acceptance criteria, each with exact equality and a runtime bound.

Every test appends a pass/fail line that conftest prints in the terminal summary.
"""

import itertools
import time
from contextlib import contextmanager

import pytest

from niltl import _kernels, linalg
from niltl.algebra import TElement, factor_c_form, q_element, relation_failures, u_weight
from niltl.diagram import build_diagram, cf_normal_form, has_full_support
from niltl.enumeration import brute_force_counts, minuscule_words
from niltl.heaps import (
    Region,
    _convex_direct,
    _convex_edge_chains,
    all_weights,
    construct_C,
    forbidden_oracle,
    is_minuscule,
    rank_and_embed,
    region_word,
    same_up_to_tau,
    weights_of,
)
from niltl.laurent import LaurentPoly
from niltl.modules import build_module, endomorphism_dim, is_irreducible, q_charpoly, relations_hold
from niltl.representation import (
    WeightMatrix,
    faithfulness_witness,
    independent_by_coefficients,
    interval_region,
    matrix_of,
    raise_word,
)

import conftest
from oracles import convex_naive, dense_rank, minuscule_by_orbit


@pytest.fixture(scope="module", autouse=True)
def jit_ready():
    # one-time compilation is process startup, not part of any criterion
    seconds = _kernels.warm_up()
    conftest.ACCEPTANCE_LINES.append(f"criterion 00: kernel warm-up before timing ({seconds:.2f}s, numba={_kernels.HAVE_NUMBA})")


@contextmanager
def criterion(number, title, limit):
    t0 = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        dt = time.perf_counter() - t0
        ok = ok and dt < limit
        line = f"criterion {number:02d}: {'PASS' if ok else 'FAIL'} {title} ({dt:.2f}s, limit {limit}s)"
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
    assert dt < limit, line


def qpow(k):
    return LaurentPoly.monomial(k)


def test_01_relations():
    with criterion(1, "defining relations hold, n=2,3,4", 1):
        for n in (2, 3, 4):
            assert relation_failures(n) == []
            # spot checks by hand
            assert not TElement.from_word(n, (0, 0))
            assert not TElement.from_word(n, (1, 0, 1))
            assert TElement.from_word(n, (0, 1, 0)) == TElement.basis(n, (0, 1, 0))
            assert TElement.from_word(n, (0, 2)) == TElement.from_word(n, (2, 0))


def test_02_oracle_agreement():
    with criterion(2, "minuscule test equals forbidden-subword oracle, length <= 8", 120):
        for n in (2, 3):
            diagram = build_diagram(n)
            for d in range(9):
                for w in itertools.product(range(n + 1), repeat=d):
                    assert is_minuscule(n, w) == (not forbidden_oracle(diagram, w)), w
                    if d <= 6:
                        assert is_minuscule(n, w) == minuscule_by_orbit(n, w), w


def test_03_faithfulness():
    with criterion(3, "basis matrices independent with ideal witnesses, length <= 8", 120):
        for n in (2, 3):
            words = minuscule_words(n, 8)
            for w in words:
                J, J2 = faithfulness_witness(n, w)
                assert raise_word(w, J) == J2
                assert cf_normal_form(n, interval_region(J, J2).word()) == w
            mats = [matrix_of(TElement.basis(n, w)) for w in words]
            assert independent_by_coefficients(mats)
            keys = sorted({(r, c, e) for M in mats for (r, c), p in M.entries.items() for e in p.coeffs})
            rows = [[M[(r, c)].coeff(e) for (r, c, e) in keys] for M in mats]
            assert dense_rank(rows) == len(words)


def test_04_centre():
    with criterion(4, "Q acts as qI, is central, and short central elements are scalars", 60):
        for n in (2, 3, 4):
            assert matrix_of(q_element(n)) == WeightMatrix.identity(n).scale(qpow(1))
            Q = q_element(n)
            for i in range(n + 1):
                g = TElement.generator(n, i)
                assert Q * g == g * Q
        n = 2
        basis = minuscule_words(n, n)
        gens = [TElement.generator(n, i) for i in range(n + 1)]
        comms = [[g * TElement.basis(n, w) - TElement.basis(n, w) * g for g in gens] for w in basis]
        keys = sorted({(i, x) for col in comms for i, c in enumerate(col) for x in c.terms})
        # rows = equations, columns = unknown coefficients
        system = [[comms[j][i].terms.get(x, 0) for j in range(len(basis))] for (i, x) in keys]
        assert dense_rank(system) == len(basis) - 1
        assert all(comms[basis.index(())][i] == TElement.zero(n) for i in range(n + 1))
        null = linalg.nullspace([{basis[j]: v for j, v in enumerate(row) if v} for row in system], basis)
        assert len(null) == 1 and set(null[0]) == {()}


def test_05_weight_calculus():
    with criterion(5, "reference n=6 word has the expected weights and C-form", 1):
        w = (6, 1, 3, 5, 0, 2, 4, 6, 3)
        assert is_minuscule(6, w)
        assert weights_of(6, w) == ("+--++-", "+-+-++")
        assert factor_c_form(6, w) == ("+-+-++", "+--++-", 1)


def test_06_idempotents_and_units():
    with criterion(6, "u_lam u_mu, C-product law and C^r acting as q^r E", 180):
        for n in (2, 3):
            Q = q_element(n)
            for lam, mu in itertools.product(all_weights(n), repeat=2):
                want = Q * u_weight(n, mu) if lam == mu else TElement.zero(n)
                assert u_weight(n, lam) * u_weight(n, mu) == want
        n = 2
        full = [w for w in minuscule_words(n, 2 * (n + 1) + 2) if has_full_support(n, w)]
        assert len(full) > 0
        forms = {w: factor_c_form(n, w) for w in full}
        for w1, w2 in itertools.product(full, repeat=2):
            (lam, mu, r), (nu, xi, s) = forms[w1], forms[w2]
            prod = TElement.basis(n, w1) * TElement.basis(n, w2)
            want = TElement.basis(n, construct_C(n, lam, xi, r + s)) if mu == nu else TElement.zero(n)
            assert prod == want, (w1, w2)
        for n in (2, 3):
            for lam, mu in itertools.product(all_weights(n), repeat=2):
                for r in range(1, n + 4):
                    try:
                        w = construct_C(n, lam, mu, r)
                    except ValueError:
                        continue
                    assert matrix_of(TElement.basis(n, w)) == WeightMatrix.unit(n, lam, mu, qpow(r))


def test_07_surjectivity():
    with criterion(7, "every matrix unit hit by some C^r with r <= n+2", 60):
        for n in (2, 3):
            for lam, mu in itertools.product(all_weights(n), repeat=2):
                hit = None
                for r in range(1, n + 3):
                    try:
                        w = construct_C(n, lam, mu, r)
                    except ValueError:
                        continue
                    hit = matrix_of(TElement.basis(n, w)), r
                    break
                assert hit is not None, (lam, mu)
                M, r = hit
                assert M == WeightMatrix.unit(n, lam, mu, qpow(r))


def test_08_window():
    with criterion(8, "three consecutive counts sum to 16 from D <= 9 to length 12", 120):
        counts = brute_force_counts(2, 12)
        sums = [sum(counts[d:d + 3]) for d in range(len(counts) - 2)]
        D = next(d for d in range(len(sums)) if all(s == 16 for s in sums[d:]))
        assert D <= 9
        assert counts[:3] == [1, 3, 5]


def test_09_modules():
    with criterion(9, "finite modules: dimension, irreducibility, End, charpoly", 60):
        for n, c, m in itertools.product((2, 3), (1, 2), (1, 2, 3)):
            assert build_module(n, c, m).dim == 2**n * m
        polys = set()
        for c in (1, 2, 3, 5, 7):
            assert is_irreducible(build_module(2, c, 1)) is True
            assert is_irreducible(build_module(2, c, 2)) is False
            for m in (1, 2, 3):
                M = build_module(2, c, m)
                assert relations_hold(M)
                assert endomorphism_dim(M) == m
            polys.add(tuple(q_charpoly(build_module(2, c, 1))))
        assert len(polys) == 5


def test_10_convexity():
    with criterion(10, "direct and edge-chain convexity agree on the E(2) window", 60):
        n = 2
        window = [(a, b) for b in range(8) for a in range(n + 1) if (a - b) % 2 == 0]
        assert not _convex_direct(Region.of(n, [(0, 0), (2, 2)]))
        assert not convex_naive(n, [(0, 0), (2, 2)], 0, 7)
        full = 0
        for k in range(1, 9):
            for cells in itertools.combinations(window, k):
                region = Region.of(n, cells)
                direct = _convex_direct(region)
                assert direct == convex_naive(n, cells, 0, 7)
                if region.has_full_support():
                    full += 1
                    assert _convex_edge_chains(region) == direct
                if direct:
                    w = region_word(region)
                    assert is_minuscule(n, w)
                    assert same_up_to_tau(rank_and_embed(n, w), region)
        assert full > 0
