"""Factor configurations back into tensor words by recursive strip grouping.

A configuration lies in the image of the evaluation map exactly when it can be
split, block by block, into groups whose projection hulls have disjoint
interiors.  :func:`factor` computes the canonical word for such a
configuration; :func:`brute_force_decomposable` answers the same membership
question by exhaustive search and shares no code with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .geometry import (
    Box,
    Configuration,
    GeometryError,
    Interval,
    Permutation,
    box_to_json,
    hull,
    nullary,
)
from .words import AxisBlocks, Generator, Leaf, Node, Word, WordError

BRUTE_FORCE_BOUND = 6


class RefinementError(GeometryError):
    """A cube projection does not sit inside exactly one cube of each head."""


@dataclass(frozen=True)
class StripGrouping:
    block: int
    groups: tuple[tuple[int, ...], ...]
    hulls: tuple[Box, ...]


@dataclass(frozen=True)
class NotDecomposable:
    """Witness: ``labels`` index a sub-configuration no block can split.

    ``groupings`` holds one single-group :class:`StripGrouping` per block for
    that sub-configuration, in the coordinates it was rescaled to.
    """

    config: Configuration
    blocks: AxisBlocks
    labels: tuple[int, ...]
    groupings: tuple[StripGrouping, ...]


@dataclass(frozen=True)
class FactorResult:
    word: Optional[Word] = None
    witness: Optional[NotDecomposable] = None

    @property
    def decomposable(self) -> bool:
        return self.word is not None


def _group(boxes: list[Box]) -> list[list[int]]:
    """Finest partition of ``range(len(boxes))`` whose hulls have disjoint interiors."""
    n = len(boxes)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a in range(n):
        for b in range(a + 1, n):
            if boxes[a].overlaps(boxes[b]):
                parent[find(b)] = find(a)
    groups = {}
    for k in range(n):
        groups.setdefault(find(k), []).append(k)
    groups = list(groups.values())

    merged = True
    while merged:
        merged = False
        hulls = [hull(boxes[k] for k in g) for g in groups]
        for a in range(len(groups)):
            for b in range(a + 1, len(groups)):
                if hulls[a].overlaps(hulls[b]):
                    groups[a] = groups[a] + groups.pop(b)
                    merged = True
                    break
            if merged:
                break
    for g in groups:
        g.sort()
    groups.sort(key=lambda g: g[0])
    return groups


def strip_grouping(c: Configuration, blocks: AxisBlocks, i: int) -> StripGrouping:
    """Group the cubes of ``c`` by their block-``i`` projections (labels are 1-based)."""
    if c.arity == 0:
        raise GeometryError("strip grouping of the nullary configuration")
    if c.dim != blocks.dim:
        raise WordError(f"configuration has dim {c.dim}, blocks need {blocks.dim}")
    axes = blocks.axes(i)
    proj = [b.project(axes) for b in c.cubes]
    groups = _group(proj)
    return StripGrouping(
        block=i,
        groups=tuple(tuple(k + 1 for k in g) for g in groups),
        hulls=tuple(hull(proj[k] for k in g) for g in groups),
    )


class _Stuck(Exception):
    def __init__(self, labels, groupings):
        super().__init__("not decomposable")
        self.labels = labels
        self.groupings = groupings


def _factor_unary(label: int, box: Box, blocks: AxisBlocks) -> Word:
    word: Word = Leaf(label)
    for i in reversed(range(1, len(blocks) + 1)):
        part = box.project(blocks.axes(i))
        if not part.is_full():
            word = Node(Generator(i, Configuration(part.dim, (part,))), (word,))
    return word


def _factor(items: list[tuple[int, Box]], blocks: AxisBlocks) -> Word:
    if len(items) == 1:
        return _factor_unary(items[0][0], items[0][1], blocks)
    singles = []
    for i in range(1, len(blocks) + 1):
        axes = blocks.axes(i)
        proj = [b.project(axes) for _, b in items]
        groups = _group(proj)
        if len(groups) == 1:
            singles.append(StripGrouping(i, (tuple(label for label, _ in items),), (hull(proj),)))
            continue
        hulls = [hull(proj[k] for k in g) for g in groups]
        children = []
        for g, h in zip(groups, hulls):
            sub = []
            for k in g:
                label, box = items[k]
                ivs = list(box.intervals)
                ivs[axes.start:axes.stop] = box.project(axes).pullback(h).intervals
                sub.append((label, Box(tuple(ivs))))
            children.append(_factor(sub, blocks))
        return Node(Generator(i, Configuration(len(axes), tuple(hulls))), tuple(children))
    raise _Stuck(tuple(label for label, _ in items), tuple(singles))


def factor(c: Configuration, blocks: AxisBlocks) -> FactorResult:
    """Canonical tensor word for ``c``, or a :class:`NotDecomposable` witness.

    Blocks are scanned in order 1..N; the first block whose grouping has at
    least two groups becomes the head, with the group hulls as its op.
    """
    if c.dim != blocks.dim:
        raise WordError(f"configuration has dim {c.dim}, blocks need {blocks.dim}")
    if c.arity == 0:
        return FactorResult(word=Node(Generator(1, nullary(blocks.blocks[0])), ()))
    try:
        word = _factor(list(enumerate(c.cubes, 1)), blocks)
    except _Stuck as stuck:
        return FactorResult(witness=NotDecomposable(c, blocks, stuck.labels, stuck.groupings))
    return FactorResult(word=word)


def is_decomposable(c: Configuration, blocks: AxisBlocks) -> bool:
    return factor(c, blocks).decomposable


# -- exhaustive oracle ------------------------------------------------------------

def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for k in range(len(part)):
            yield part[:k] + [[first] + part[k]] + part[k + 1:]


def _open_disjoint(a, b) -> bool:
    return any(ahi <= blo or bhi <= alo for (alo, ahi), (blo, bhi) in zip(a, b))


def brute_force_decomposable(c: Configuration, blocks: AxisBlocks, bound: int = BRUTE_FORCE_BOUND) -> bool:
    """Exhaustive search over every set partition in every block.

    Per-axis affine rescaling preserves every overlap relation, so the
    recursion works on subsets of the original cubes without rescaling.
    """
    if c.arity > bound:
        raise ValueError(f"brute force limited to {bound} cubes, got {c.arity}")
    if c.dim != blocks.dim:
        raise WordError(f"configuration has dim {c.dim}, blocks need {blocks.dim}")
    coords = [[(iv.lo, iv.hi) for iv in b.intervals] for b in c.cubes]
    axis_sets = [blocks.axes(i) for i in range(1, len(blocks) + 1)]

    def span(part, axes):
        return [(min(coords[k][a][0] for k in part), max(coords[k][a][1] for k in part)) for a in axes]

    @lru_cache(maxsize=None)
    def ok(subset: frozenset) -> bool:
        if len(subset) <= 1:
            return True
        for axes in axis_sets:
            for parts in _set_partitions(sorted(subset)):
                if len(parts) < 2:
                    continue
                spans = [span(p, axes) for p in parts]
                if all(_open_disjoint(spans[a], spans[b])
                       for a in range(len(spans)) for b in range(a + 1, len(spans))):
                    if all(ok(frozenset(p)) for p in parts):
                        return True
        return False

    return ok(frozenset(range(c.arity)))


# -- common refinement of two heads ----------------------------------------------------

@dataclass(frozen=True)
class Refinement:
    """``act(compose(p, p_witnesses), p_order) == wedge`` and likewise for ``pbar``."""

    wedge: Configuration
    p_witnesses: tuple[Configuration, ...]
    pbar_witnesses: tuple[Configuration, ...]
    p_order: Permutation
    pbar_order: Permutation


def _inside(x: Box, cell: Box) -> bool:
    # interior containment, where the faces of the unit cube count as interior
    for a, b in zip(x.intervals, cell.intervals):
        if not (b.lo <= a.lo and a.hi <= b.hi):
            return False
        if a.lo == b.lo and a.lo != 0:
            return False
        if a.hi == b.hi and a.hi != 1:
            return False
    return True


def _home(x: Box, head: Configuration, label: int, name: str) -> int:
    homes = [k for k, cell in enumerate(head.cubes) if _inside(x, cell)]
    if len(homes) != 1:
        raise RefinementError(f"cube {label} projection {x!r} is not interior to exactly one cube of {name}")
    return homes[0]


def _meet(a: Box, b: Box) -> Box:
    return Box(tuple(Interval(max(u.lo, v.lo), min(u.hi, v.hi)) for u, v in zip(a.intervals, b.intervals)))


def common_refinement(p: Configuration, pbar: Configuration, c: Configuration,
                      blocks: AxisBlocks, i: int) -> Refinement:
    """The wedge ``p ∧ pbar``: inhabited intersections of cubes of ``p`` and ``pbar``.

    Cubes of the result are ordered by the minimal label of the cubes of
    ``c`` they contain.
    """
    axes = blocks.axes(i)
    if p.dim != len(axes) or pbar.dim != len(axes):
        raise WordError(f"heads must have dim {len(axes)} for block {i}")
    if c.dim != blocks.dim:
        raise WordError(f"configuration has dim {c.dim}, blocks need {blocks.dim}")
    cells = {}
    for label, box in enumerate(c.cubes, 1):
        x = box.project(axes)
        key = (_home(x, p, label, "p"), _home(x, pbar, label, "pbar"))
        cells.setdefault(key, label)
    keys = sorted(cells, key=cells.get)
    wedge = Configuration(len(axes), tuple(_meet(p.cubes[a], pbar.cubes[b]) for a, b in keys))

    def witnesses(head, side):
        ops, slots = [], []
        for k, cell in enumerate(head.cubes):
            mine = [n for n, key in enumerate(keys) if key[side] == k]
            slots.extend(mine)
            ops.append(Configuration(len(axes), tuple(wedge.cubes[n].pullback(cell) for n in mine)))
        # composite position of wedge cube n is slots.index(n)
        order = Permutation(tuple(slots.index(n) + 1 for n in range(len(keys))))
        return tuple(ops), order

    p_w, p_order = witnesses(p, 0)
    pbar_w, pbar_order = witnesses(pbar, 1)
    return Refinement(wedge, p_w, pbar_w, p_order, pbar_order)


# -- JSON ---------------------------------------------------------------------

def witness_to_json(w: NotDecomposable) -> dict:
    return {
        "decomposable": False,
        "blocks": list(w.blocks.blocks),
        "labels": list(w.labels),
        "single_groups": [
            {"block": g.block, "group": list(g.groups[0]), "hull": box_to_json(g.hulls[0])}
            for g in w.groupings
        ],
    }
