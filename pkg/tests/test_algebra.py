import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from niltl.algebra import (
    TElement,
    coxeter_factorization,
    defining_relations,
    divide_by_q,
    factor_c_form,
    q_element,
    q_valuation,
    relation_failures,
    strip_top,
    u_weight,
)
from niltl.diagram import cf_normal_form, has_full_support
from niltl.enumeration import minuscule_words
from niltl.errors import NotMinusculeError, RankMismatchError, RankTooSmallError, ZeroElementError
from niltl.heaps import all_weights, construct_C, coxeter_word

from oracles import minuscule_by_orbit, solve_dense

FIG = (6, 1, 3, 5, 0, 2, 4, 6, 3)


def gen(n, i):
    return TElement.generator(n, i)


def prod(n, word):
    out = TElement.one(n)
    for i in word:
        out = out * gen(n, i)
    return out


@pytest.mark.parametrize("n", [2, 3, 4])
def test_defining_relations(n):
    assert relation_failures(n) == []
    for i in range(n + 1):
        assert not gen(n, i) * gen(n, i)
        for j in range(i + 2, n + 1):
            assert gen(n, i) * gen(n, j) == gen(n, j) * gen(n, i)
    for i in range(1, n - 1):
        assert not prod(n, (i, i + 1, i)) and not prod(n, (i + 1, i, i + 1))
    assert not prod(n, (1, 0, 1))
    assert not prod(n, (n - 1, n, n - 1))
    assert prod(n, (0, 1, 0)) and prod(n, (n, n - 1, n))


def test_relation_list_size():
    n = 4
    rels = defining_relations(n)
    assert len(rels) == (n + 1) + 6 + 2 * (n - 2) + 2


@pytest.mark.parametrize("n", [2, 3])
def test_products_of_generators_follow_oracle(n):
    for d in range(6):
        for w in itertools.product(range(n + 1), repeat=d):
            p = prod(n, w)
            if minuscule_by_orbit(n, w):
                assert p == TElement.basis(n, cf_normal_form(n, w))
            else:
                assert not p


def test_mul_examples():
    n = 2
    assert not gen(n, 1) * gen(n, 0) * gen(n, 1)
    u = TElement.basis(n, (2, 1, 0))
    assert TElement.one(n) * u == u == u * TElement.one(n)
    assert gen(2, 0) * gen(2, 2) == gen(2, 2) * gen(2, 0)


def test_mul_rank_mismatch():
    with pytest.raises(RankMismatchError):
        gen(2, 0) * gen(3, 0)


def test_element_validation():
    with pytest.raises(NotMinusculeError):
        TElement(2, {(1, 0, 1): 1})
    with pytest.raises(RankTooSmallError):
        TElement(1)
    assert not TElement.from_word(2, (1, 0, 1))
    a = TElement(2, {(2, 0): 1, (0, 2): 2})
    assert a.terms == {(0, 2): Fraction(3)}


def test_element_arithmetic():
    n = 2
    a = TElement(n, {(0,): 2, (1,): Fraction(1, 2)})
    b = TElement(n, {(0,): -2})
    assert (a + b).terms == {(1,): Fraction(1, 2)}
    assert a - a == TElement.zero(n)
    assert 3 * a == a * 3
    assert a + 1 == 1 + a
    assert a ** 0 == 1
    assert (gen(n, 0) + gen(n, 2)) ** 2 == 2 * gen(n, 0) * gen(n, 2)


def test_json_round_trip():
    a = TElement(3, {(0, 1): Fraction(-3, 7), (3, 2, 1, 0): 5, (): 1})
    assert TElement.from_json(3, a.to_json()) == a


def test_q_element_n2():
    Q = q_element(2)
    assert Q.terms == {(2, 1, 0): 1, (1, 0, 2): 1, (0, 2, 1): 1, (0, 1, 2): 1}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_q_element_shape(n):
    Q = q_element(n)
    assert len(Q) == 2**n
    assert Q.degrees() == {n + 1}
    assert set(Q.terms.values()) == {1}
    for i in range(n + 1):
        assert Q * gen(n, i) == gen(n, i) * Q


def test_q_element_rank():
    with pytest.raises(RankTooSmallError):
        q_element(1)


@pytest.mark.parametrize("n", [2, 3])
def test_centrality_on_short_words(n):
    Q = q_element(n)
    for w in minuscule_words(n, 6):
        u = TElement.basis(n, w)
        assert Q * u == u * Q


@pytest.mark.parametrize("n", [2, 3])
def test_associativity_random(n):
    rng = random.Random(11 + n)
    words = minuscule_words(n, 6)
    for _ in range(200):
        a, b, c = (TElement.basis(n, rng.choice(words)) for _ in range(3))
        assert (a * b) * c == a * (b * c)


@pytest.mark.parametrize("n", [2, 3])
@given(data=st.data())
def test_distributivity(n, data):
    words = minuscule_words(n, 5)
    pick = st.sampled_from(words)
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    elem = st.dictionaries(pick, coeff, max_size=3).map(lambda d: TElement(n, d))
    a, b, c = data.draw(elem), data.draw(elem), data.draw(elem)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


def test_idempotent_products():
    for n in (2, 3):
        Q = q_element(n)
        for lam, mu in itertools.product(all_weights(n), repeat=2):
            got = u_weight(n, lam) * u_weight(n, mu)
            assert got == (Q * u_weight(n, mu) if lam == mu else TElement.zero(n))


# C-forms


def test_factor_c_form_examples():
    assert factor_c_form(6, FIG) == ("+-+-++", "+--++-", 1)
    for n in (2, 3):
        for lam in all_weights(n):
            cw = coxeter_word(n, lam)
            assert factor_c_form(n, cw) == (lam, lam, 1)
            assert factor_c_form(n, cw + cw) == (lam, lam, 2)
    assert factor_c_form(2, (0, 1)) is None
    with pytest.raises(NotMinusculeError):
        factor_c_form(2, (1, 0, 1))


def test_factor_c_form_reproduced_by_construct():
    for n in (2, 3):
        for w in minuscule_words(n, 9):
            form = factor_c_form(n, w)
            if form is not None:
                assert construct_C(n, *form) == w


def test_c_form_product_law():
    n = 2
    full = [w for w in minuscule_words(n, 2 * (n + 1) + 2) if has_full_support(n, w)]
    assert len(full) > 20
    for w1, w2 in itertools.product(full, repeat=2):
        lam, mu, r = factor_c_form(n, w1)
        nu, xi, s = factor_c_form(n, w2)
        got = TElement.basis(n, w1) * TElement.basis(n, w2)
        if mu == nu:
            assert got == TElement.basis(n, construct_C(n, lam, xi, r + s))
        else:
            assert not got


def test_q_times_c():
    n = 2
    Q = q_element(n)
    for lam, mu in itertools.product(all_weights(n), repeat=2):
        for r in range(1, 4):
            try:
                w = construct_C(n, lam, mu, r)
            except ValueError:
                continue
            assert Q * TElement.basis(n, w) == TElement.basis(n, construct_C(n, lam, mu, r + 1))


@pytest.mark.parametrize("n", [2, 3])
def test_sandwich(n):
    for w in minuscule_words(n, 6):
        u = TElement.basis(n, w)
        for lam in all_weights(n):
            left = u_weight(n, lam) * u
            if left:
                hits = [mu for mu in all_weights(n) if u * u_weight(n, mu) == left]
                assert len(hits) == 1


# Q-valuation


def valuation_by_solve(n, w, words_by_len):
    """Largest j with u_w = Q^j b, found by solving linear systems degree by degree."""
    a = TElement.basis(n, w)
    target = a.terms
    j = 0
    Qj = TElement.one(n)
    while True:
        Qj = Qj * q_element(n)
        d = len(w) - (j + 1) * (n + 1)
        if d < 0:
            return j
        cols = [(Qj * TElement.basis(n, x)).terms for x in words_by_len.get(d, [])]
        if not cols or solve_dense(cols, target) is None:
            return j
        j += 1


def test_valuation_examples():
    for n in (2, 3):
        assert q_valuation(TElement.one(n)) == 0
        assert q_valuation(q_element(n)) == 1
        assert q_valuation(q_element(n) * q_element(n) + q_element(n)) == 1
        for lam in all_weights(n):
            for r in range(1, 4):
                assert q_valuation(TElement.basis(n, construct_C(n, lam, lam, r))) == r - 1
    with pytest.raises(ZeroElementError):
        q_valuation(TElement.zero(2))


def test_valuation_off_diagonal_can_exceed_r_minus_one():
    # C^1_(++,-+) is Q times a length-2 basis element
    w = construct_C(2, "++", "-+", 1)
    b = divide_by_q(TElement.basis(2, w))
    assert b is not None and q_element(2) * b == TElement.basis(2, w)
    assert q_valuation(TElement.basis(2, w)) == 1


@pytest.mark.parametrize("n,max_len", [(2, 11), (3, 9)])
def test_valuation_matches_linear_solve(n, max_len):
    words = minuscule_words(n, max_len)
    by_len = {}
    for w in words:
        by_len.setdefault(len(w), []).append(w)
    for w in words:
        assert q_valuation(TElement.basis(n, w)) == valuation_by_solve(n, w, by_len)


def test_divide_by_q_rejects_non_multiples():
    n = 2
    assert divide_by_q(gen(n, 0)) is None
    assert divide_by_q(TElement.basis(n, (2, 1, 0))) is None
    Q = q_element(n)
    x = TElement(n, {(0, 1): 2, (2,): -1})
    assert divide_by_q(Q * x) == x


def test_coxeter_factorization():
    n = 2
    lam = "+-"
    cw = coxeter_word(n, lam)
    lam2, c, x = coxeter_factorization(n, cw + cw + (1,))
    assert (lam2, c) == (lam, 2)
    assert not has_full_support(n, x)
    assert coxeter_factorization(n, (0, 1)) == (None, 0, (0, 1))
    assert strip_top(n, cw) == ()
