"""
Self-check battery: every structural property the library relies on, run
against independent recomputations. Failures are data, not exceptions.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import linalg
from .algebra import (
    TElement,
    factor_c_form,
    q_element,
    q_valuation,
    relation_failures,
    u_weight,
)
from .diagram import build_diagram, cf_normal_form, commutation_class, has_full_support
from .enumeration import default_max_len, enumerate_minuscule
from .heaps import (
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
from .laurent import LaurentPoly
from .modules import build_module, endomorphism_dim, is_irreducible, q_action, q_charpoly, q_substitution, relations_hold
from .representation import (
    WeightMatrix,
    boundary_matrix_of_word,
    faithfulness_witness,
    independent_by_coefficients,
    independent_by_evaluation,
    matrix_of,
)

SEED = 1729
LEVELS = ("quick", "standard", "full")

FIGURE_WORD = (6, 1, 3, 5, 0, 2, 4, 6, 3)
FIGURE_LOWER = "+--++-"
FIGURE_UPPER = "+-+-++"


@dataclass
class CheckResult:
    check_name: str
    paper_ref: str
    status: str
    witness: object = None
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {
            "check_name": self.check_name,
            "paper_ref": self.paper_ref,
            "status": self.status,
            "witness": self.witness,
            "seconds": round(self.seconds, 3),
        }


@dataclass
class Params:
    n: int
    level: str
    fault: bool
    seed: int

    @property
    def word_len(self) -> int:
        return {"quick": 5, "standard": 7, "full": 8}[self.level]

    @property
    def samples(self) -> int:
        return {"quick": 30, "standard": 100, "full": 200}[self.level]

    @property
    def enum_len(self) -> int:
        cap = {"quick": 8, "standard": 10, "full": 12}[self.level]
        return min(cap, default_max_len(self.n))


class _Skip(Exception):
    pass


def _ok(witness=None):
    return True, witness


def _fail(witness):
    return False, witness


# ---------------------------------------------------------------------------
# individual checks; each returns (passed, witness)


def check_relations(p: Params):
    bad = relation_failures(p.n)
    return (not bad), [[list(l), None if r is None else list(r)] for l, r in bad]


def check_oracle(p: Params):
    diagram = build_diagram(p.n, flipped=p.fault)
    for d in range(p.word_len + 1):
        for w in itertools.product(range(p.n + 1), repeat=d):
            if is_minuscule(p.n, w) == forbidden_oracle(diagram, w):
                return _fail({"word": list(w), "is_minuscule": is_minuscule(p.n, w)})
    return _ok()


def check_normal_form(p: Params):
    rng = random.Random(p.seed)
    for _ in range(p.samples):
        w = tuple(rng.randrange(p.n + 1) for _ in range(rng.randint(0, 7)))
        nf = cf_normal_form(p.n, w)
        if cf_normal_form(p.n, nf) != nf:
            return _fail({"word": list(w), "reason": "not idempotent"})
        if {cf_normal_form(p.n, v) for v in commutation_class(w)} != {nf}:
            return _fail({"word": list(w), "reason": "not constant on the commutation class"})
    return _ok()


def check_associativity(p: Params):
    rng = random.Random(p.seed)
    words = _words(p.n, 6)
    n = p.n
    for _ in range(p.samples):
        a, b, c = (TElement.basis(n, rng.choice(words)) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return _fail([list(next(iter(x.terms))) for x in (a, b, c)])
    return _ok()


def check_centrality(p: Params):
    Q = q_element(p.n)
    for w in _words(p.n, 6):
        u = TElement.basis(p.n, w)
        if Q * u != u * Q:
            return _fail(list(w))
    for i in range(p.n + 1):
        u = TElement.generator(p.n, i)
        if Q * u != u * Q:
            return _fail([i])
    return _ok()


def check_idempotent_products(p: Params):
    n = p.n
    Q = q_element(n)
    for lam in all_weights(n):
        for mu in all_weights(n):
            got = u_weight(n, lam) * u_weight(n, mu)
            want = Q * u_weight(n, mu) if lam == mu else TElement.zero(n)
            if got != want:
                return _fail({"lambda": lam, "mu": mu})
    return _ok()


def check_c_products(p: Params):
    n = p.n
    full = [w for w in _words(n, 2 * (n + 1) + 2) if has_full_support(n, w)]
    forms = {w: factor_c_form(n, w) for w in full}
    for w1, w2 in itertools.product(full, repeat=2):
        lam, mu, r = forms[w1]
        nu, xi, s = forms[w2]
        prod = TElement.basis(n, w1) * TElement.basis(n, w2)
        if mu != nu:
            if prod:
                return _fail({"left": list(w1), "right": list(w2), "reason": "expected zero"})
            continue
        want = construct_C(n, lam, xi, r + s)
        if prod != TElement.basis(n, want):
            return _fail({"left": list(w1), "right": list(w2), "reason": "wrong product"})
    return _ok({"full_support_words": len(full)})


def check_sandwich(p: Params):
    n = p.n
    for w in _words(n, 6):
        u = TElement.basis(n, w)
        for lam in all_weights(n):
            left = u_weight(n, lam) * u
            if not left:
                continue
            hits = [mu for mu in all_weights(n) if u * u_weight(n, mu) == left]
            if len(hits) != 1:
                return _fail({"word": list(w), "lambda": lam, "matches": hits})
    return _ok()


def check_valuation(p: Params):
    n = p.n
    if q_valuation(TElement.one(n)) != 0 or q_valuation(q_element(n)) != 1:
        return _fail("valuation of 1 or Q")
    for lam in all_weights(n):
        for r in range(1, 4):
            if q_valuation(TElement.basis(n, construct_C(n, lam, lam, r))) != r - 1:
                return _fail({"lambda": lam, "r": r})
    return _ok()


def check_valuation_stabilizes(p: Params):
    n = p.n
    if n > 3:
        raise _Skip("enumeration budget too small for n > 3")
    rep = enumerate_minuscule(n, p.enum_len)
    zero_by_len = [sum(1 for w in layer if q_valuation(TElement.basis(n, w)) == 0) for layer in rep.words]
    cumulative = list(itertools.accumulate(zero_by_len))
    start = 2 * (n + 1)
    tail = cumulative[start:]
    if len(tail) < 2 or len(set(tail)) != 1:
        return _fail({"cumulative": cumulative})
    return _ok({"cumulative": cumulative})


def check_centre_nullspace(p: Params):
    """Elements of degree <= n commuting with every generator are scalars."""
    n = p.n
    basis = _words(n, n)
    eqs: dict = {}
    for i in range(n + 1):
        g = TElement.generator(n, i)
        for w in basis:
            u = TElement.basis(n, w)
            for word, c in (g * u - u * g).items():
                eqs.setdefault((i, word), {})[w] = c
    null = linalg.nullspace(list(eqs.values()), basis)
    if len(null) != 1 or set(null[0]) != {()}:
        return _fail({"nullspace": [{",".join(map(str, k)): str(v) for k, v in vec.items()} for vec in null]})
    return _ok()


def check_q_matrix(p: Params):
    n = p.n
    if matrix_of(q_element(n)) != WeightMatrix.identity(n).scale(LaurentPoly.monomial(1)):
        return _fail("matrix of Q")
    if matrix_of(TElement.one(n)) != WeightMatrix.identity(n):
        return _fail("matrix of 1")
    return _ok()


def check_idempotent_matrices(p: Params):
    n = p.n
    inv_q = LaurentPoly.monomial(-1)
    es = {lam: matrix_of(u_weight(n, lam)).scale(inv_q) for lam in all_weights(n)}
    total = WeightMatrix(n)
    for lam, e in es.items():
        if e != WeightMatrix.unit(n, lam, lam):
            return _fail({"lambda": lam})
        for mu, f in es.items():
            want = e if lam == mu else WeightMatrix(n)
            if e @ f != want:
                return _fail({"lambda": lam, "mu": mu})
        total = total + e
    if total != WeightMatrix.identity(n):
        return _fail("idempotents do not sum to 1")
    return _ok()


def check_homomorphism(p: Params):
    n = p.n
    rng = random.Random(p.seed + 1)
    words = _words(n, 6)

    def rand_elem():
        return TElement(n, {rng.choice(words): Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))})

    for _ in range(p.samples):
        a, b = rand_elem(), rand_elem()
        if matrix_of(a * b) != matrix_of(a) @ matrix_of(b):
            return _fail({"a": a.to_json(), "b": b.to_json()})
    return _ok()


def check_positivity(p: Params):
    n = p.n
    for w in _words(n, p.word_len):
        M = matrix_of(TElement.basis(n, w))
        cols = [c for (_, c) in M.entries]
        if len(cols) != len(set(cols)):
            return _fail({"word": list(w), "reason": "two entries in one column"})
        for poly in M.entries.values():
            if not poly.is_monomial() or poly.min_exp() < 0 or poly.coeff(poly.min_exp()) != 1:
                return _fail({"word": list(w), "entry": str(poly)})
    return _ok()


def check_theta(p: Params):
    n = p.n
    for w in [(i,) for i in range(n + 1)] + _words(n, 4):
        if boundary_matrix_of_word(n, w) != matrix_of(TElement.from_word(n, w)):
            return _fail(list(w))
    return _ok()


def check_faithfulness(p: Params):
    n = p.n
    words = _words(n, p.word_len)
    mats = [matrix_of(TElement.basis(n, w)) for w in words]
    for w in words:
        try:
            faithfulness_witness(n, w)
        except Exception as exc:  # noqa: BLE001 - report any failure as data
            return _fail({"word": list(w), "error": str(exc)})
    if not independent_by_coefficients(mats):
        return _fail("coefficient rank deficient")
    if not independent_by_evaluation(mats):
        return _fail("evaluation rank deficient")
    return _ok({"words": len(words)})


def check_surjectivity(p: Params):
    n = p.n
    hits = {}
    for lam in all_weights(n):
        for mu in all_weights(n):
            for r in range(1, n + 3):
                try:
                    w = construct_C(n, lam, mu, r)
                except Exception:  # noqa: BLE001 - no element for this r
                    continue
                if matrix_of(TElement.basis(n, w)) != WeightMatrix.unit(n, lam, mu, LaurentPoly.monomial(r)):
                    return _fail({"lambda": lam, "mu": mu, "r": r})
                hits[f"{lam},{mu}"] = r
                break
            else:
                return _fail({"lambda": lam, "mu": mu, "reason": "no r <= n+2"})
    return _ok({"minimal_r": hits})


def check_window(p: Params):
    n = p.n
    if n > 3:
        raise _Skip("enumeration budget too small for n > 3")
    rep = enumerate_minuscule(n, p.enum_len)
    width, target = n + 1, 4**n
    sums = rep.window_sums(width)
    start = next((d for d in range(len(sums)) if all(s == target for s in sums[d:])), None)
    if start is None or start > 9:
        return _fail({"counts": rep.counts, "window_sums": sums})
    return _ok({"counts": rep.counts, "stable_from": start})


def check_figure_word(p: Params):
    w = FIGURE_WORD
    if not is_minuscule(6, w):
        return _fail("figure word not minuscule")
    if weights_of(6, w) != (FIGURE_LOWER, FIGURE_UPPER):
        return _fail({"weights": list(weights_of(6, w))})
    if factor_c_form(6, w) != (FIGURE_UPPER, FIGURE_LOWER, 1):
        return _fail({"c_form": list(factor_c_form(6, w))})
    if construct_C(6, FIGURE_UPPER, FIGURE_LOWER, 1) != cf_normal_form(6, w):
        return _fail("construct_C does not reproduce the figure word")
    return _ok()


def convexity_window(n: int, top_rank: int = 7) -> list[tuple[int, int]]:
    return [(a, b) for b in range(top_rank + 1) for a in range(n + 1) if (a - b) % 2 == 0]


def check_convexity(p: Params):
    n = 2
    window = convexity_window(n)
    if _convex_direct(Region.of(n, [(0, 0), (2, 2)])):
        return _fail("{(0,0),(2,2)} accepted")
    compared = 0
    convex = 0
    for k in range(1, 9):
        for cells in itertools.combinations(window, k):
            region = Region.of(n, cells)
            direct = _convex_direct(region)
            if region.has_full_support():
                compared += 1
                if _convex_edge_chains(region) != direct:
                    return _fail({"region": region.to_json(), "direct": direct})
            if not direct:
                continue
            convex += 1
            w = region_word(region)
            if not is_minuscule(n, w) or not same_up_to_tau(rank_and_embed(n, w), region):
                return _fail({"region": region.to_json(), "word": list(w)})
    return _ok({"full_support_compared": compared, "convex_round_trips": convex})


def check_modules(p: Params):
    n = p.n
    cs = {"quick": (1, 3), "standard": (1, 2, 3), "full": (1, 2, 3, 5, 7)}[p.level]
    polys = {}
    for c in cs:
        for m in (1, 2, 3):
            M = build_module(n, c, m)
            if M.dim != 2**n * m or not relations_hold(M) or q_action(M) != q_substitution(M):
                return _fail({"c": c, "m": m, "reason": "structure"})
            if m <= 2 and is_irreducible(M, seed=p.seed) != (m == 1):
                return _fail({"c": c, "m": m, "reason": "irreducibility"})
            if n == 2 or p.level != "quick":
                if endomorphism_dim(M) != m:
                    return _fail({"c": c, "m": m, "reason": "endomorphism dimension"})
            if m == 1:
                polys[c] = tuple(q_charpoly(M))
    if len(set(polys.values())) != len(polys):
        return _fail("characteristic polynomials coincide")
    return _ok()


CHECKS: list[tuple[str, str, Callable[[Params], tuple]]] = [
    ("relations", "defining relations hold under multiplication", check_relations),
    ("oracle_agreement", "minuscule test agrees with forbidden-subword search", check_oracle),
    ("normal_form", "canonical form is idempotent and constant on commutation classes", check_normal_form),
    ("associativity", "multiplication is associative on random basis triples", check_associativity),
    ("centrality", "Q commutes with short basis elements", check_centrality),
    ("idempotent_products", "u_lam u_mu = delta Q u_mu", check_idempotent_products),
    ("c_products", "C^r_(lam,mu) C^s_(nu,xi) = delta C^(r+s)_(lam,xi)", check_c_products),
    ("sandwich", "u_lam u_w = u_w u_mu for a unique mu", check_sandwich),
    ("valuation", "Q-valuation of 1, Q and C^r_(lam,lam)", check_valuation),
    ("valuation_stabilizes", "valuation-zero basis elements are finitely many", check_valuation_stabilizes),
    ("centre_nullspace", "short central elements are scalars", check_centre_nullspace),
    ("q_matrix", "Q acts as multiplication by q", check_q_matrix),
    ("idempotent_matrices", "u_lam / q are orthogonal idempotents summing to 1", check_idempotent_matrices),
    ("homomorphism", "matrix_of is multiplicative", check_homomorphism),
    ("positivity", "basis matrices are monomial with one entry per column", check_positivity),
    ("theta_compatibility", "ideal and string models give the same matrices", check_theta),
    ("faithfulness", "basis matrices are linearly independent, each with an ideal witness", check_faithfulness),
    ("surjectivity", "every matrix unit is hit by some C^r with r <= n+2", check_surjectivity),
    ("window", "consecutive length counts sum to 4^n", check_window),
    ("figure_word", "weights and C-form of the reference n=6 word", check_figure_word),
    ("convexity", "direct and edge-chain convexity agree; convex regions round-trip", check_convexity),
    ("modules", "finite modules: dimension, relations, irreducibility, endomorphisms", check_modules),
]

CHECK_NAMES = [name for name, _, _ in CHECKS]


_WORD_CACHE: dict[tuple[int, int], list] = {}


def _words(n: int, max_len: int) -> list:
    key = (n, max_len)
    if key not in _WORD_CACHE:
        rep = enumerate_minuscule(n, max_len)
        _WORD_CACHE[key] = [w for layer in rep.words for w in layer]
    return _WORD_CACHE[key]


def run_check(name: str, n: int, level: str = "standard", *, fault: bool = False, seed: int = SEED) -> CheckResult:
    for cname, ref, fn in CHECKS:
        if cname == name:
            break
    else:
        raise KeyError(name)
    params = Params(n, level, fault, seed)
    t0 = time.perf_counter()
    try:
        passed, witness = fn(params)
        status = "pass" if passed else "fail"
    except _Skip as exc:
        status, witness = "skip", str(exc)
    except Exception as exc:  # noqa: BLE001 - failures are reported, not raised
        status, witness = "fail", f"{type(exc).__name__}: {exc}"
    return CheckResult(cname, ref, status, witness, time.perf_counter() - t0)


def verify_suite(n: int, level: str = "standard", *, fault: bool = False, seed: int = SEED,
                 only: list[str] | None = None) -> list[CheckResult]:
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}, got {level!r}")
    names = only or CHECK_NAMES
    return [run_check(name, n, level, fault=fault, seed=seed) for name in names]


def all_passed(results: list[CheckResult]) -> bool:
    return all(r.status != "fail" for r in results)
