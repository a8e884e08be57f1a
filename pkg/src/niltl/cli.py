"""
Command-line interface.

Every subcommand prints one document on stdout. Exit status: 0 success,
1 domain error, 2 usage error, 3 failed verification. ``--from-json PATH``
(``-`` for stdin) reads back a document previously printed by the same
subcommand and prints it again after validation.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import TElement, factor_c_form, q_element, q_valuation
from .diagram import cf_normal_form, parse_word, validate_word
from .enumeration import EnumerationReport, default_max_len, enumerate_minuscule
from .errors import NilTLError, RankTooSmallError
from .heaps import (
    all_weights,
    construct_C,
    coxeter_word,
    is_minuscule,
    rank_and_embed,
    region_from_json,
    region_to_dot,
    region_to_tikz,
    validate_weight,
    weights_of,
)
from .modules import FiniteModule, build_module, trivial_module
from .representation import WeightMatrix, matrix_of
from .verify import LEVELS, SEED, all_passed, verify_suite

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _need(args, *flags: str) -> None:
    for flag in flags:
        attr = flag.lstrip("-").replace("-", "_")
        if getattr(args, "lambda_" if attr == "lambda" else attr) is None:
            raise UsageError(f"{args.command}: {flag} is required")


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _element_doc(a: TElement) -> dict:
    if not a:
        return {"zero": True}
    return {"n": a.n, "element": a.to_json()}


def _element_from_doc(n: int, doc) -> TElement:
    if doc.get("zero"):
        return TElement.zero(n)
    return TElement.from_json(int(doc.get("n", n)), doc["element"])


def _word_arg(args, name: str = "word"):
    return validate_word(args.n, parse_word(getattr(args, name)))


# ---------------------------------------------------------------------------
# subcommands; each returns (document or text, exit code)


def cmd_normalize(args):
    if args.from_json:
        w = validate_word(args.n, _load(args.from_json)["word"])
    else:
        _need(args, "--word")
        w = _word_arg(args)
    return {"word": list(cf_normal_form(args.n, w))}


def cmd_minuscule(args):
    if args.from_json:
        w = validate_word(args.n, _load(args.from_json)["word"])
    else:
        _need(args, "--word")
        w = _word_arg(args)
    return {"word": list(w), "minuscule": is_minuscule(args.n, w)}


def cmd_mul(args):
    n = args.n
    if args.from_json:
        return _element_doc(_element_from_doc(n, _load(args.from_json)))
    _need(args, "--a", "--b")
    out = TElement.one(n)
    for flag in ("a", "b", "c"):
        text = getattr(args, flag)
        if text is not None:
            out = out * TElement.from_word(n, validate_word(n, parse_word(text)))
    return _element_doc(out)


def cmd_q_element(args):
    if args.from_json:
        return _element_doc(_element_from_doc(args.n, _load(args.from_json)))
    return _element_doc(q_element(args.n))


def _cform_doc(n, w):
    form = factor_c_form(n, w)
    if form is None:
        return {"word": list(w), "full_support": False}
    lam, mu, r = form
    return {"word": list(w), "full_support": True, "lambda": lam, "mu": mu, "r": r}


def cmd_cform(args):
    if args.from_json:
        w = validate_word(args.n, _load(args.from_json)["word"])
    else:
        _need(args, "--word")
        w = _word_arg(args)
    return _cform_doc(args.n, cf_normal_form(args.n, w))


def cmd_valuation(args):
    n = args.n
    if args.from_json:
        doc = _load(args.from_json)
        a = _element_from_doc(n, doc["element"] if "valuation" in doc else doc)
    else:
        _need(args, "--word")
        w = _word_arg(args)
        a = TElement.from_word(n, w)
    return {"element": _element_doc(a), "valuation": q_valuation(a)}


def cmd_coxeter(args):
    n = args.n
    if args.from_json:
        doc = _load(args.from_json)
        rows = doc["coxeter"] if "coxeter" in doc else [doc]
        weights = [validate_weight(n, r["weight"]) for r in rows]
        single = "coxeter" not in doc
    elif args.weight is not None:
        weights, single = [validate_weight(n, args.weight)], True
    else:
        weights, single = all_weights(n), False
    rows = [{"weight": lam, "word": list(coxeter_word(n, lam))} for lam in weights]
    return rows[0] if single else {"n": n, "coxeter": rows}


def cmd_construct_c(args):
    n = args.n
    if args.from_json:
        doc = _load(args.from_json)
        lam, mu, r = doc["lambda"], doc["mu"], int(doc["r"])
    else:
        _need(args, "--lambda", "--mu", "--r")
        lam, mu, r = args.lambda_, args.mu, args.r
    lam, mu = validate_weight(n, lam), validate_weight(n, mu)
    return {"lambda": lam, "mu": mu, "r": r, "word": list(construct_C(n, lam, mu, r))}


def cmd_weights(args):
    if args.from_json:
        w = validate_word(args.n, _load(args.from_json)["word"])
    else:
        _need(args, "--word")
        w = _word_arg(args)
    lower, upper = weights_of(args.n, w)
    return {"word": list(w), "lower": lower, "upper": upper}


def cmd_heap(args):
    n = args.n
    fmt = "dot" if args.dot else (args.format or "json")
    if args.from_json:
        region = region_from_json(n, _load(args.from_json)["cells"])
    else:
        _need(args, "--word")
        region = rank_and_embed(n, _word_arg(args))
    if fmt == "dot":
        return region_to_dot(region)
    if fmt == "tikz":
        return region_to_tikz(region)
    if fmt != "json":
        raise UsageError(f"heap: --format must be json, dot or tikz, got {fmt}")
    return {
        "n": n,
        "cells": region.to_json(),
        "covers": [[list(x), list(y)] for x, y in region.covering_pairs()],
    }


def cmd_matrix(args):
    n = args.n
    fmt = args.format or "json"
    if args.from_json:
        if args.from_json != "-" and args.from_json.endswith(".csv"):
            with open(args.from_json, encoding="utf-8") as fh:
                M = WeightMatrix.from_csv(n, fh.read())
        else:
            M = WeightMatrix.from_json(_load(args.from_json))
    elif args.element is not None:
        if args.element.strip().upper() == "Q":
            M = matrix_of(q_element(n))
        else:
            M = matrix_of(TElement.from_word(n, validate_word(n, parse_word(args.element))))
    else:
        _need(args, "--word")
        M = matrix_of(TElement.from_word(n, _word_arg(args)))
    if fmt == "csv":
        return M.to_csv()
    if fmt != "json":
        raise UsageError(f"matrix: --format must be json or csv, got {fmt}")
    return M.to_json()


def cmd_module(args):
    n = args.n
    if args.from_json:
        M = FiniteModule.from_json(_load(args.from_json))
    elif args.trivial:
        M = trivial_module(n)
    else:
        _need(args, "--c", "--m")
        M = build_module(n, Fraction(args.c), args.m)
    return M.to_json()


def cmd_enumerate(args):
    n = args.n
    if args.from_json:
        rep = EnumerationReport.from_json(_load(args.from_json))
        return rep.to_json(include_words=True)
    max_len = args.max_len if args.max_len is not None else default_max_len(n)
    rep = enumerate_minuscule(n, max_len)
    return rep.to_json(include_words=args.words)


def cmd_verify(args):
    if args.from_json:
        doc = _load(args.from_json)
        checks = doc["checks"]
        for c in checks:
            if set(c) < {"check_name", "paper_ref", "status", "witness"}:
                raise NilTLError("malformed verification report")
        passed = all(c["status"] != "fail" for c in checks)
        return {"n": doc["n"], "level": doc["level"], "passed": passed, "checks": checks}, (EXIT_OK if passed else EXIT_VERIFY)
    level = args.level or "standard"
    results = verify_suite(args.n, level, fault=args.fault, seed=args.seed if args.seed is not None else SEED)
    passed = all_passed(results)
    doc = {"n": args.n, "level": level, "passed": passed, "checks": [r.to_json() for r in results]}
    return doc, (EXIT_OK if passed else EXIT_VERIFY)


COMMANDS: dict[str, tuple[Callable, str, tuple[str, ...]]] = {
    "normalize": (cmd_normalize, "canonical form of a word", ("word",)),
    "minuscule": (cmd_minuscule, "test whether a word is minuscule", ("word",)),
    "mul": (cmd_mul, "product of two or three words", ("a", "b", "c")),
    "q-element": (cmd_q_element, "the central element Q", ()),
    "cform": (cmd_cform, "upper weight, lower weight and count of 0s", ("word",)),
    "valuation": (cmd_valuation, "largest j with u_w in Q^j T(n)", ("word",)),
    "coxeter": (cmd_coxeter, "Coxeter word of a weight (or of all weights)", ("weight",)),
    "construct-c": (cmd_construct_c, "the basis element C^r_(lambda,mu)", ("lambda", "mu", "r")),
    "weights": (cmd_weights, "lower and upper weights of a full-support word", ("word",)),
    "heap": (cmd_heap, "embedded heap as JSON, DOT or TikZ", ("word", "format", "dot")),
    "matrix": (cmd_matrix, "matrix of an element on weight strings", ("element", "word", "format")),
    "module": (cmd_module, "finite module M(c, m) or the trivial module", ("c", "m", "trivial")),
    "enumerate": (cmd_enumerate, "count minuscule elements by length", ("max-len", "words")),
    "verify": (cmd_verify, "run the self-check battery", ("level", "seed", "fault")),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="niltl", description="Exact computations in the nil Temperley-Lieb algebra of type affine C.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text, flags) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", type=int, required=True, help="rank (n >= 2)")
        p.add_argument("--from-json", metavar="PATH", help="read a document from PATH ('-' for stdin)")
        for flag in flags:
            if flag in ("word", "a", "b", "c", "weight", "mu", "element"):
                if flag == "c" and name == "module":
                    p.add_argument("--c", help="nonzero rational, e.g. 3 or 5/2")
                else:
                    p.add_argument(f"--{flag}")
            elif flag == "lambda":
                p.add_argument("--lambda", dest="lambda_")
            elif flag in ("r", "m", "max-len", "seed"):
                p.add_argument(f"--{flag}", type=int)
            elif flag == "format":
                p.add_argument("--format", choices=("json", "csv", "dot", "tikz"))
            elif flag == "level":
                p.add_argument("--level", choices=LEVELS)
            elif flag in ("trivial", "fault", "words", "dot"):
                p.add_argument(f"--{flag}", action="store_true")
    return parser


def _emit(out) -> None:
    if isinstance(out, str):
        sys.stdout.write(out)
    else:
        sys.stdout.write(json.dumps(out, sort_keys=False) + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.n < 2:
            raise RankTooSmallError(f"--n must be at least 2, got {args.n}")
        result = COMMANDS[args.command][0](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError, OSError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    _emit(result)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
