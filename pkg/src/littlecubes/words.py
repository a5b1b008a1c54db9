"""Tensor words over an axis-block partition and the evaluation map into C_d.

A word is a tree of block-tagged generators (:class:`Node`) with labeled
:class:`Leaf` objects at the bottom.  The Σ-structure of the tensor product is
carried entirely by the leaf labels, so a word never contains permutation
nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .geometry import (
    Box,
    Configuration,
    GeometryError,
    box_apply,
    config_from_json,
    config_to_json,
    identity,
)


class WordError(ValueError):
    """A tensor word is structurally invalid or does not fit the axis blocks."""


@dataclass(frozen=True)
class AxisBlocks:
    blocks: tuple[int, ...]

    def __post_init__(self):
        blocks = tuple(self.blocks)
        object.__setattr__(self, "blocks", blocks)
        if not blocks or any(isinstance(k, bool) or not isinstance(k, int) or k < 1 for k in blocks):
            raise WordError(f"axis blocks must be positive integers, got {blocks!r}")

    @classmethod
    def parse(cls, text: str) -> AxisBlocks:
        """Parse the CLI form ``"1,1"`` or ``"2,3"``."""
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError:
            raise WordError(f"bad --blocks value {text!r}") from None

    @property
    def dim(self) -> int:
        return sum(self.blocks)

    def __len__(self):
        return len(self.blocks)

    def axes(self, i: int) -> range:
        """0-based axis range owned by the 1-based block ``i``."""
        if not 1 <= i <= len(self.blocks):
            raise WordError(f"block {i} out of range 1..{len(self.blocks)}")
        start = sum(self.blocks[:i - 1])
        return range(start, start + self.blocks[i - 1])

    def __str__(self):
        return ",".join(map(str, self.blocks))


@dataclass(frozen=True)
class Generator:
    block: int
    op: Configuration

    @property
    def arity(self) -> int:
        return self.op.arity

    def is_unit(self) -> bool:
        return self.op.arity == 1 and self.op.cubes[0].is_full()


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Node:
    gen: Generator
    children: tuple[Word, ...] = ()

    def __post_init__(self):
        children = tuple(self.children)
        object.__setattr__(self, "children", children)
        if len(children) != self.gen.arity:
            raise WordError(f"generator of arity {self.gen.arity} has {len(children)} children")


Word = Union[Leaf, Node]


def node(block: int, op: Configuration, *children: Word) -> Node:
    return Node(Generator(block, op), tuple(children))


def leaves(w: Word) -> list[int]:
    """Leaf labels in left-to-right order."""
    if isinstance(w, Leaf):
        return [w.label]
    out = []
    for child in w.children:
        out.extend(leaves(child))
    return out


def arity(w: Word) -> int:
    return len(leaves(w))


def generator_count(w: Word) -> int:
    if isinstance(w, Leaf):
        return 0
    return 1 + sum(generator_count(c) for c in w.children)


def check_word(w: Word, blocks: AxisBlocks | None = None) -> int:
    """Validate ``w`` (and its generators against ``blocks``); return its arity."""
    labels = []

    def walk(v):
        if isinstance(v, Leaf):
            labels.append(v.label)
            return
        if not isinstance(v, Node):
            raise WordError(f"not a word node: {v!r}")
        if blocks is not None:
            ax = blocks.axes(v.gen.block)
            if v.gen.op.dim != len(ax):
                raise WordError(f"block {v.gen.block} generator has dim {v.gen.op.dim}, expected {len(ax)}")
        for c in v.children:
            walk(c)

    walk(w)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise WordError(f"leaf labels {labels!r} are not exactly 1..{len(labels)}")
    return len(labels)


def embed_box(b: Box, axes: range, dim: int) -> Box:
    """Extend a box on ``axes`` by ]0,1[ on every other axis (a strip)."""
    full = Box.full(dim).intervals
    return Box(full[:axes.start] + b.intervals + full[axes.stop:])


def mu_embed(g: Generator, blocks: AxisBlocks) -> Configuration:
    """Image of a generator under the coordinate inclusion of its block."""
    axes = blocks.axes(g.block)
    if g.op.dim != len(axes):
        raise WordError(f"block {g.block} generator has dim {g.op.dim}, expected {len(axes)}")
    d = blocks.dim
    return Configuration(d, tuple(embed_box(b, axes, d) for b in g.op.cubes))


def evaluate(w: Word, blocks: AxisBlocks) -> Configuration:
    """The evaluation map μ: cube ``ℓ`` is the composite of strip maps from root to leaf ``ℓ``."""
    j = check_word(w, blocks)
    d = blocks.dim
    placed = {}

    def walk(v, frame):
        if isinstance(v, Leaf):
            placed[v.label] = frame
            return
        for strip, child in zip(mu_embed(v.gen, blocks).cubes, v.children):
            walk(child, box_apply(frame, strip))

    walk(w, Box.full(d))
    return Configuration(d, tuple(placed[label] for label in range(1, j + 1)))


def relabel(w: Word, mapping) -> Word:
    """Replace every leaf label ``ℓ`` by ``mapping[ℓ]``."""
    if isinstance(w, Leaf):
        return Leaf(mapping[w.label])
    return Node(w.gen, tuple(relabel(c, mapping) for c in w.children))


def _order_key(w: Word):
    labels = leaves(w)
    return (min(labels),) if labels else (float("inf"),)


def canonical_order(w: Word) -> Word:
    """Reorder every node's children by minimal leaf label, permuting its op cubes alongside.

    Both words are the same element of the tensor product (Σ-equivariance of
    the generators); this picks the representative factor emits.  Nullary
    children go last, keeping their relative order.
    """
    if isinstance(w, Leaf):
        return w
    children = [canonical_order(c) for c in w.children]
    order = sorted(range(len(children)), key=lambda k: _order_key(children[k]))
    op = Configuration(w.gen.op.dim, tuple(w.gen.op.cubes[k] for k in order))
    return Node(Generator(w.gen.block, op), tuple(children[k] for k in order))


def unit_generator(block: int, blocks: AxisBlocks) -> Generator:
    return Generator(block, identity(len(blocks.axes(block))))


# -- JSON ---------------------------------------------------------------------

def word_to_json(w: Word) -> dict:
    if isinstance(w, Leaf):
        return {"leaf": w.label}
    return {
        "gen": {"block": w.gen.block, "op": config_to_json(w.gen.op)},
        "children": [word_to_json(c) for c in w.children],
    }


def word_from_json(data, blocks: AxisBlocks | None = None) -> Word:
    """Parse a word and re-validate labels, arities and (optionally) block dims."""

    def parse(v):
        if not isinstance(v, dict):
            raise WordError(f"malformed word node: {v!r}")
        if "leaf" in v:
            label = v["leaf"]
            if isinstance(label, bool) or not isinstance(label, int):
                raise WordError(f"leaf label must be an integer: {label!r}")
            return Leaf(label)
        try:
            gen = v["gen"]
            block = gen["block"]
            op = config_from_json(gen["op"])
            children = v["children"]
        except (KeyError, TypeError) as exc:
            raise WordError(f"malformed word node: {v!r}") from exc
        if isinstance(block, bool) or not isinstance(block, int) or not isinstance(children, list):
            raise WordError(f"malformed word node: {v!r}")
        return Node(Generator(block, op), tuple(parse(c) for c in children))

    try:
        w = parse(data)
    except GeometryError as exc:
        raise WordError(str(exc)) from exc
    check_word(w, blocks)
    return w


def blocks_to_json(blocks: AxisBlocks) -> dict:
    return {"blocks": list(blocks.blocks)}


def blocks_from_json(data) -> AxisBlocks:
    try:
        return AxisBlocks(tuple(data["blocks"]))
    except (KeyError, TypeError) as exc:
        raise WordError(f"malformed axis blocks: {data!r}") from exc
