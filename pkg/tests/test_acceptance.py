"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

All suites run with their documented defaults (seed 7) unless stated otherwise.
"""

import random
import time
from fractions import Fraction

from littlecubes.factorization import brute_force_decomposable, factor, is_decomposable
from littlecubes.generate import GenParams, derive_seed, gen_word, pinwheel
from littlecubes.homotopy import contract
from littlecubes.rewrite import EQUAL, word_equal_oracle
from littlecubes.suites import DEFAULT_SEED, random_test_config, run_suite
from littlecubes.words import AxisBlocks, arity, evaluate, generator_count

B11 = AxisBlocks((1, 1))
# an inconclusive oracle result is rechecked once at this depth before it is reported
RECHECK_DEPTH = 24


def test_1_round_trip(record):
    start = time.perf_counter()
    reports = [run_suite("roundtrip", 1000, DEFAULT_SEED, AxisBlocks(b)) for b in ((1, 1), (1, 2), (2, 1), (2, 2))]
    elapsed = time.perf_counter() - start
    failures = sum(len(r.failures) for r in reports)
    max_arity = max(
        arity(gen_word(GenParams(seed=derive_seed(DEFAULT_SEED, k), blocks=AxisBlocks(b), max_generators=5)))
        for b in ((1, 1), (2, 2)) for k in range(200)
    )
    ok = failures == 0 and elapsed < 60 and max_arity <= 8
    record("1-roundtrip", ok, f"4x1000 words, {failures} failures, max arity {max_arity}, {elapsed:.1f}s (< 60s)")
    assert ok


def test_2_injectivity_oracle(record):
    report = run_suite("oracle", 200, DEFAULT_SEED, B11)
    resolved = 0
    for entry in report.inconclusive:
        w = gen_word(GenParams(seed=entry["seed"], blocks=B11, max_generators=4))
        assert generator_count(w) <= 4
        if word_equal_oracle(w, factor(evaluate(w, B11), B11).word, RECHECK_DEPTH, B11) == EQUAL:
            resolved += 1
    ok = report.ok
    record("2-oracle", ok,
           f"200 words, {len(report.failures)} eval mismatches, {len(report.inconclusive)} not-found at depth 12 "
           f"({resolved} of them equal at depth {RECHECK_DEPTH})")
    assert ok


def test_3_interchange(record):
    report = run_suite("interchange", 500)
    record("3-interchange", report.ok, f"500 grid pairs, {len(report.failures)} failures")
    assert report.ok


def test_4_gen_pos(record):
    report = run_suite("genpos", 300)
    record("4-genpos", report.ok, f"300 words of arity >= 2, {len(report.failures)} failures")
    assert report.ok


def test_5_non_decomposability(record):
    p4 = pinwheel()
    pinwheel_ok = not factor(p4, B11).decomposable and not brute_force_decomposable(p4, B11)
    report = run_suite("bruteforce", 100)
    kinds = [is_decomposable(random_test_config(random.Random(derive_seed(DEFAULT_SEED, k)), B11), B11)
             for k in range(100)]
    both = any(kinds) and not all(kinds)
    ok = pinwheel_ok and report.ok and both
    record("5-nondecomposable", ok,
           f"P4 rejected by factor and brute force: {pinwheel_ok}; 100 configs j <= 5, "
           f"{kinds.count(True)} decomposable / {kinds.count(False)} not, {len(report.failures)} disagreements")
    assert ok


def test_6_contraction(record):
    report = run_suite("contraction", 100)
    dims = {2 + derive_seed(DEFAULT_SEED, k) % 2 for k in range(100)}
    regression = is_decomposable(contract(pinwheel(), Fraction(1, 2)), B11)
    ok = report.ok and dims == {2, 3} and regression
    record("6-contraction", ok,
           f"100 configs in dims {sorted(dims)}, grid <= 256, {len(report.failures)} failures; "
           f"contract(P4, 1/2) factors: {regression}")
    assert ok


def test_7_multi_factor(record):
    report = run_suite("multifactor", 200, DEFAULT_SEED, AxisBlocks((1, 1, 1)))
    record("7-multifactor", report.ok, f"blocks (1,1,1), 200 words, {len(report.failures)} failures")
    assert report.ok


def test_8_equivariance(record):
    report = run_suite("equivariance", 200)
    record("8-equivariance", report.ok, f"200 (c, sigma) pairs, {len(report.failures)} failures")
    assert report.ok


def test_9_algebraic_laws(record):
    report = run_suite("laws", 500)
    record("9-laws", report.ok, f"500 instances of associativity/unit/equivariance, {len(report.failures)} failures")
    assert report.ok
