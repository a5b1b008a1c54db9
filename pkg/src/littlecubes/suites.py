"""Seeded property suites behind ``littlecubes check``.

Each trial draws its own seed from ``derive_seed(suite seed, trial index)``
and either passes or records a failure; reports list failures in trial order.
"""

from __future__ import annotations

import hashlib
import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .factorization import brute_force_decomposable, factor, is_decomposable
from .generate import GenParams, derive_seed, gen_word, pinwheel, random_boxes
from .geometry import (
    Box,
    Configuration,
    Permutation,
    act,
    block_permutation,
    compose,
    config_to_json,
    identity,
    min_cube_volume,
)
from .homotopy import NoThreshold, contract, decomposability_threshold
from .rewrite import EQUAL, RewriteMove, apply_move, normalize_gen_pos, word_equal_oracle
from .words import (
    AxisBlocks,
    Generator,
    Leaf,
    Node,
    Word,
    arity,
    canonical_order,
    evaluate,
    leaves,
    relabel,
    word_to_json,
)

DEFAULT_SEED = 7
ORACLE_DEPTH = 12
CONTRACTION_GRIDS = (1, 2, 4, 8, 16, 32, 64, 128, 256)


class TrialFailure(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


class Inconclusive(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


@dataclass
class SuiteReport:
    suite: str
    trials: int
    seed: int
    blocks: tuple[int, ...]
    failures: list[dict] = field(default_factory=list)
    inconclusive: list[dict] = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "blocks": list(self.blocks),
            "failures": self.failures,
            "inconclusive": self.inconclusive,
            "elapsed_ms": self.elapsed_ms,
        }


def digest(payload) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def _require(cond, message, payload):
    if not cond:
        raise TrialFailure(message, payload)


def _word(seed, blocks, max_generators=5, **kw) -> Word:
    return gen_word(GenParams(seed=seed, blocks=blocks, max_generators=max_generators, **kw))


def is_gen_pos(w: Word) -> bool:
    """Head of arity ≥ 2 and no input of arity 0."""
    return isinstance(w, Node) and w.gen.arity >= 2 and all(arity(c) > 0 for c in w.children)


def _canonical_shape(w: Word) -> bool:
    # canonical words: no units, and every node of arity ≥ 2 heads a gen-pos subword
    if isinstance(w, Leaf):
        return True
    if w.gen.is_unit():
        return False
    if arity(w) >= 2 and not is_gen_pos(w):
        return False
    return all(_canonical_shape(c) for c in w.children)


# -- suites -------------------------------------------------------------------

def trial_roundtrip(seed: int, blocks: AxisBlocks):
    w = _word(seed, blocks)
    c = evaluate(w, blocks)
    payload = {"word": word_to_json(w)}
    result = factor(c, blocks)
    _require(result.decomposable, "factor rejected the evaluation of a word", payload)
    _require(evaluate(result.word, blocks) == c, "factor(eval(w)) re-evaluates differently", payload)
    _require(_canonical_shape(result.word), "canonical word is not in general position", payload)


def _random_op(rng, blocks, i, a):
    return random_boxes(rng, blocks.blocks[i - 1], a)


def trial_interchange(seed: int, blocks: AxisBlocks):
    rng = random.Random(seed)
    if len(blocks) < 2:
        raise TrialFailure("interchange needs at least two blocks", {"blocks": list(blocks.blocks)})
    i, j = sorted(rng.sample(range(1, len(blocks) + 1), 2))
    a, b = rng.randint(1, 3), rng.randint(1, 3)
    p = Generator(i, _random_op(rng, blocks, i, a))
    q = Generator(j, _random_op(rng, blocks, j, b))
    # W1 = p[q[v_1^1..v_b^1], ..., q[v_1^a..v_b^a]] with v_k^l labeled (l-1)*b + k
    w1 = Node(p, tuple(Node(q, tuple(Leaf(l * b + k + 1) for k in range(b))) for l in range(a)))
    w2 = Node(q, tuple(Node(p, tuple(Leaf(l * b + k + 1) for l in range(a))) for k in range(b)))
    payload = {"p": config_to_json(p.op), "q": config_to_json(q.op), "blocks": [i, j]}
    _require(evaluate(w1, blocks) == evaluate(w2, blocks), "interchange sides evaluate differently", payload)
    moved = apply_move(w1, RewriteMove("interchange-forward", ()))
    _require(moved == w2, "interchange-forward does not produce the transposed word", payload)
    _require(apply_move(moved, RewriteMove("interchange-backward", ())) == w1,
             "interchange-backward does not undo interchange-forward", payload)


def trial_genpos(seed: int, blocks: AxisBlocks):
    for attempt in range(100):
        w = _word(derive_seed(seed, attempt), blocks)
        if arity(w) >= 2:
            break
    else:
        raise TrialFailure("could not draw a word of arity >= 2", {"seed": seed})
    payload = {"word": word_to_json(w)}
    n = normalize_gen_pos(w)
    _require(is_gen_pos(n), "normal form head has arity < 2 or a nullary input", payload)
    _require(evaluate(n, blocks) == evaluate(w, blocks), "normal form changes the evaluation", payload)


def trial_equivariance(seed: int, blocks: AxisBlocks):
    rng = random.Random(seed)
    w = _word(derive_seed(seed, 0), blocks)
    c = evaluate(w, blocks)
    images = list(range(1, c.arity + 1))
    rng.shuffle(images)
    sigma = Permutation(tuple(images))
    payload = {"word": word_to_json(w), "sigma": images}
    base = factor(c, blocks)
    moved = factor(act(c, sigma), blocks)
    _require(base.decomposable and moved.decomposable, "factor rejected a word evaluation", payload)
    inv = sigma.inverse()
    expected = canonical_order(relabel(base.word, {l: inv(l) for l in leaves(base.word)}))
    _require(moved.word == expected, "factor is not Σ-equivariant", payload)


def trial_oracle(seed: int, blocks: AxisBlocks):
    w = _word(seed, blocks, max_generators=4)
    c = evaluate(w, blocks)
    f = factor(c, blocks).word
    payload = {"word": word_to_json(w)}
    _require(f is not None and evaluate(f, blocks) == c, "eval mismatch between word and factor", payload)
    if word_equal_oracle(w, f, ORACLE_DEPTH, blocks) != EQUAL:
        raise Inconclusive(f"no rewrite chain of length <= {ORACLE_DEPTH} found", payload)


def random_test_config(rng: random.Random, blocks: AxisBlocks, max_j: int = 5) -> Configuration:
    """A configuration with at most ``max_j`` cubes: a word image, random boxes, or a grafted pinwheel."""
    kind = rng.randrange(3)
    if kind == 0:
        return evaluate(_word(rng.getrandbits(64), blocks, max_leaves=max_j), blocks)
    if kind == 2 and blocks.dim >= 2:
        # pinwheel on the first two axes, grafted into one cube of a random configuration
        outer = random_boxes(rng, blocks.dim, rng.randint(1, max_j - 3))
        p = pinwheel()
        full = identity(blocks.dim).cubes[0].intervals
        wheel = Configuration(blocks.dim, tuple(
            Box(b.intervals + full[2:]) for b in p.cubes))
        inners = [identity(blocks.dim)] * outer.arity
        inners[rng.randrange(outer.arity)] = wheel
        return compose(outer, inners)
    return random_boxes(rng, blocks.dim, rng.randint(0, max_j))


def trial_bruteforce(seed: int, blocks: AxisBlocks):
    c = random_test_config(random.Random(seed), blocks)
    payload = {"config": config_to_json(c)}
    _require(c.arity <= 5, "generated configuration exceeds 5 cubes", payload)
    fast, slow = is_decomposable(c, blocks), brute_force_decomposable(c, blocks)
    _require(fast == slow, f"factor says {fast}, brute force says {slow}", payload)


def trial_contraction(seed: int, blocks: AxisBlocks):
    rng = random.Random(seed)
    dim = 2 + seed % 2
    singles = AxisBlocks((1,) * dim)
    c = random_boxes(rng, dim, rng.randint(1, 6))
    payload = {"config": config_to_json(c)}
    for grid in CONTRACTION_GRIDS:
        try:
            report = decomposability_threshold(c, singles, grid)
            break
        except NoThreshold:
            continue
    else:
        raise TrialFailure("no threshold up to grid 256", payload)
    t = report.threshold
    _require(t < 1, "threshold not below 1", payload)
    _require(evaluate(report.certificate, singles) == contract(c, t), "certificate does not evaluate to the contraction", payload)
    _require(min_cube_volume(contract(c, t)) == (1 - t) ** dim * min_cube_volume(c), "volume law fails", payload)


def _random_permutation(rng, n):
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def trial_laws(seed: int, blocks: AxisBlocks):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    a = random_boxes(rng, d, rng.randint(0, 3))
    bs = [random_boxes(rng, d, rng.randint(0, 3)) for _ in range(a.arity)]
    cs = [[random_boxes(rng, d, rng.randint(0, 2)) for _ in range(b.arity)] for b in bs]
    payload = {"a": config_to_json(a), "bs": [config_to_json(b) for b in bs]}
    left = compose(compose(a, bs), [c for row in cs for c in row])
    right = compose(a, [compose(b, row) for b, row in zip(bs, cs)])
    _require(left == right, "composition is not associative", payload)
    _require(compose(identity(d), [a]) == a, "left unit law fails", payload)
    _require(compose(a, [identity(d)] * a.arity) == a, "right unit law fails", payload)
    sigma = _random_permutation(rng, a.arity)
    lhs = compose(act(a, sigma), [bs[sigma(i) - 1] for i in range(1, a.arity + 1)])
    rhs = act(compose(a, bs), block_permutation(sigma, [b.arity for b in bs]))
    _require(lhs == rhs, "composition is not equivariant", payload)
    tau = _random_permutation(rng, a.arity)
    _require(act(act(a, sigma), tau) == act(a, sigma * tau), "action is not a right action", payload)


SUITES = {
    "roundtrip": trial_roundtrip,
    "interchange": trial_interchange,
    "genpos": trial_genpos,
    "equivariance": trial_equivariance,
    "oracle": trial_oracle,
    "contraction": trial_contraction,
    "multifactor": trial_roundtrip,
    "bruteforce": trial_bruteforce,
    "laws": trial_laws,
}

# documented defaults: (trials, blocks)
DEFAULTS = {
    "roundtrip": (1000, (1, 1)),
    "interchange": (500, (1, 1)),
    "genpos": (300, (1, 1)),
    "equivariance": (200, (1, 1)),
    "oracle": (200, (1, 1)),
    "contraction": (100, (1, 1)),
    "multifactor": (200, (1, 1, 1)),
    "bruteforce": (100, (1, 1)),
    "laws": (500, (1, 1)),
}


def _pinwheel_regression(report: SuiteReport):
    # frozen: contract(P4, 1/2) factors and the first grid-64 threshold is 1/2
    b = AxisBlocks((1, 1))
    if not is_decomposable(contract(pinwheel(), Fraction(1, 2)), b) or \
            decomposability_threshold(pinwheel(), b, 64).threshold != Fraction(1, 2):
        report.failures.append({"seed": None, "digest": digest("pinwheel"), "message": "pinwheel regression"})


def _pinwheel_oracle(report: SuiteReport):
    b = AxisBlocks((1, 1))
    if is_decomposable(pinwheel(), b) or brute_force_decomposable(pinwheel(), b):
        report.failures.append({"seed": None, "digest": digest("pinwheel"), "message": "pinwheel decomposes"})


def run_suite(name: str, trials: int | None = None, seed: int = DEFAULT_SEED,
              blocks: AxisBlocks | None = None) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    default_trials, default_blocks = DEFAULTS[name]
    trials = default_trials if trials is None else trials
    blocks = AxisBlocks(default_blocks) if blocks is None else blocks
    report = SuiteReport(name, trials, seed, blocks.blocks)
    start = time.perf_counter()
    check = SUITES[name]
    for index in range(trials):
        trial_seed = derive_seed(seed, index)
        try:
            check(trial_seed, blocks)
        except TrialFailure as exc:
            report.failures.append({"seed": trial_seed, "digest": digest(exc.payload), "message": str(exc)})
        except Inconclusive as exc:
            report.inconclusive.append({"seed": trial_seed, "digest": digest(exc.payload), "message": str(exc)})
        except Exception as exc:  # a crash is a failure, not an abort
            report.failures.append({"seed": trial_seed, "digest": digest(str(exc)), "message": repr(exc)})
    if name == "contraction":
        _pinwheel_regression(report)
    if name == "bruteforce":
        _pinwheel_oracle(report)
    report.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return report
