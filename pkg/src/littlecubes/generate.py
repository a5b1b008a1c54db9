"""Seeded random words and configurations with dyadic coordinates.

Randomness comes from :class:`random.Random` (MT19937), so a seed reproduces
the same output on every platform.  Per-trial seeds are derived from a
suite seed with SHA-256.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Box, Configuration, Interval
from .words import AxisBlocks, Generator, Leaf, Node, Word

MAX_TRIES = 200


def derive_seed(seed: int, index: int) -> int:
    digest = hashlib.sha256(f"{seed}:{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def pinwheel() -> Configuration:
    """The four-rectangle pinwheel; no axis cut separates its cubes."""
    return Configuration(2, (
        Box.of((0, "2/3"), (0, "1/3")),
        Box.of(("2/3", 1), (0, "2/3")),
        Box.of(("1/3", 1), ("2/3", 1)),
        Box.of((0, "1/3"), ("1/3", 1)),
    ))


def _dyadic(bound: int) -> int:
    d = 1
    while d * 2 <= bound:
        d *= 2
    return d


def _random_interval(rng: random.Random, den: int) -> Interval:
    lo, hi = sorted(rng.sample(range(den + 1), 2))
    return Interval(Fraction(lo, den), Fraction(hi, den))


def _slabs(rng: random.Random, dim: int, n: int, den: int) -> list[Box]:
    # n disjoint intervals on a random axis; always succeeds when 2n <= den + 1
    axis = rng.randrange(dim)
    points = sorted(rng.sample(range(den + 1), 2 * n))
    boxes = []
    for k in range(n):
        ivs = [_random_interval(rng, den) for _ in range(dim)]
        ivs[axis] = Interval(Fraction(points[2 * k], den), Fraction(points[2 * k + 1], den))
        boxes.append(Box(tuple(ivs)))
    rng.shuffle(boxes)
    return boxes


def random_boxes(rng: random.Random, dim: int, n: int, denominator_bound: int = 16) -> Configuration:
    """``n`` pairwise disjoint random boxes; rejection sampling with a slab fallback."""
    den = _dyadic(denominator_bound)
    while 2 * n > den + 1:
        den *= 2
    if dim >= 2:
        boxes = []
        for _ in range(MAX_TRIES):
            if len(boxes) == n:
                break
            b = Box(tuple(_random_interval(rng, den) for _ in range(dim)))
            if not any(b.overlaps(o) for o in boxes):
                boxes.append(b)
        if len(boxes) == n:
            return Configuration(dim, tuple(boxes))
    return Configuration(dim, tuple(_slabs(rng, dim, n, den)))


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    blocks: AxisBlocks = field(default_factory=lambda: AxisBlocks((1, 1)))
    max_generators: int = 4
    max_arity_per_generator: int = 3
    coordinate_denominator_bound: int = 16
    allow_nullary: bool = True
    max_leaves: int = 8


def gen_word(params: GenParams) -> Word:
    """Grow a word by replacing random leaves with random generators, then shuffle the labels."""
    rng = random.Random(params.seed)
    if params.max_generators <= 0:
        return Leaf(1)
    # mutable tree: a leaf is None, a node is [Generator, children]
    root = None
    slots = [(None, 0)]  # (parent node or None for root, child index)
    n_leaves = 1
    for _ in range(rng.randint(1, params.max_generators)):
        if not slots:
            break
        parent, k = slots.pop(rng.randrange(len(slots)))
        low = 0 if params.allow_nullary else 1
        high = min(params.max_arity_per_generator, params.max_leaves - n_leaves + 1)
        a = rng.randint(low, max(low, high))
        block = rng.randint(1, len(params.blocks))
        dim = params.blocks.blocks[block - 1]
        op = random_boxes(rng, dim, a, params.coordinate_denominator_bound)
        new = [Generator(block, op), [None] * a]
        if parent is None:
            root = new
        else:
            parent[1][k] = new
        slots.extend((new, c) for c in range(a))
        n_leaves += a - 1

    labels = list(range(1, n_leaves + 1))
    rng.shuffle(labels)
    labels = iter(labels)

    def build(v):
        if v is None:
            return Leaf(next(labels))
        return Node(v[0], tuple(build(c) for c in v[1]))

    return build(root)


def gen_config(seed: int, dim: int, j: int, pinwheel_preset: bool = False,
               denominator_bound: int = 16) -> Configuration:
    if pinwheel_preset:
        if dim != 2 or j != 4:
            raise ValueError("the pinwheel preset has dim 2 and 4 cubes")
        return pinwheel()
    if dim < 1 or j < 0:
        raise ValueError(f"bad dim/j: {dim}, {j}")
    return random_boxes(random.Random(seed), dim, j, denominator_bound)
