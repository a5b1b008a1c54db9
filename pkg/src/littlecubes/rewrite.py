"""Rewrite moves on tensor words, the general-position normal form, and a bounded equality search.

Positions are paths of 0-based child indices from the root.  Every move
preserves the leaf-label set and the value of :func:`~littlecubes.words.evaluate`.

Move kinds and their ``arg``:

=====================  ===================  ===================================
kind                   position             arg
=====================  ===================  ===================================
interchange-forward    head node            none, or the other Generator for a nullary head
interchange-backward   head node            as interchange-forward
head-merge             parent node          child index
head-split             node                 (k, outer op, inner op)
nullary-strip          parent node          child index
nullary-graft          node                 (k, new op, nullary Generator)
unit-insert            any subtree          unit Generator
unit-delete            unit node            none
=====================  ===================  ===================================
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Any

from .geometry import Configuration, hull, nullary, partial_compose
from .words import (
    AxisBlocks,
    Generator,
    Leaf,
    Node,
    Word,
    WordError,
    arity,
    canonical_order,
    evaluate,
)

MOVE_KINDS = (
    "interchange-forward",
    "interchange-backward",
    "head-merge",
    "head-split",
    "nullary-strip",
    "nullary-graft",
    "unit-insert",
    "unit-delete",
)

EQUAL = "equal"
NOT_FOUND = "not-found"


class MoveError(WordError):
    """The move is not applicable at the given position."""


@dataclass(frozen=True)
class RewriteMove:
    kind: str
    position: tuple[int, ...] = ()
    arg: Any = None

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")
        object.__setattr__(self, "position", tuple(self.position))


def subterm(w: Word, path) -> Word:
    for k in path:
        if not isinstance(w, Node) or not 0 <= k < len(w.children):
            raise MoveError(f"no node at path {tuple(path)!r}")
        w = w.children[k]
    return w


def replace(w: Word, path, new: Word) -> Word:
    if not path:
        return new
    if not isinstance(w, Node) or not 0 <= path[0] < len(w.children):
        raise MoveError(f"no node at path {tuple(path)!r}")
    children = list(w.children)
    children[path[0]] = replace(children[path[0]], path[1:], new)
    return Node(w.gen, tuple(children))


def _drop_cube(op: Configuration, k: int) -> Configuration:
    return Configuration(op.dim, op.cubes[:k] + op.cubes[k + 1:])


def _interchange(v: Word, forward: bool, other: Generator | None = None) -> Node:
    if not isinstance(v, Node):
        raise MoveError("interchange needs a node")
    if v.gen.arity == 0:
        # empty grid: the other-block generator is not determined by the word
        if not isinstance(other, Generator):
            raise MoveError("interchange on a nullary head needs the other generator as arg")
        inner_gen = other
    else:
        inner_gen = v.children[0].gen if isinstance(v.children[0], Node) else None
        if not all(isinstance(c, Node) and c.gen == inner_gen for c in v.children):
            raise MoveError("interchange needs every child to be the same generator")
    i, j = v.gen.block, inner_gen.block
    if (i < j) != forward or i == j:
        raise MoveError(f"interchange-{'forward' if forward else 'backward'} not applicable to blocks {i}, {j}")
    grid = [c.children for c in v.children]
    return Node(inner_gen, tuple(
        Node(v.gen, tuple(row[k] for row in grid)) for k in range(inner_gen.arity)
    ))


def apply_move(w: Word, m: RewriteMove) -> Word:
    v = subterm(w, m.position)
    kind = m.kind

    if kind in ("interchange-forward", "interchange-backward"):
        return replace(w, m.position, _interchange(v, kind == "interchange-forward", m.arg))

    if kind == "head-merge":
        k = m.arg
        if not isinstance(v, Node) or not isinstance(k, int) or not 0 <= k < len(v.children):
            raise MoveError("head-merge needs a parent node and a child index")
        child = v.children[k]
        if not isinstance(child, Node) or child.gen.block != v.gen.block:
            raise MoveError("head-merge needs a same-block child generator")
        op = partial_compose(v.gen.op, k + 1, child.gen.op)
        children = v.children[:k] + child.children + v.children[k + 1:]
        return replace(w, m.position, Node(Generator(v.gen.block, op), children))

    if kind == "head-split":
        if not isinstance(v, Node):
            raise MoveError("head-split needs a node")
        k, outer, inner = m.arg
        if partial_compose(outer, k + 1, inner) != v.gen.op:
            raise MoveError("head-split factors do not compose to the node's op")
        b = inner.arity
        block = v.gen.block
        mid = Node(Generator(block, inner), v.children[k:k + b])
        children = v.children[:k] + (mid,) + v.children[k + b:]
        return replace(w, m.position, Node(Generator(block, outer), children))

    if kind == "nullary-strip":
        k = m.arg
        if not isinstance(v, Node) or not isinstance(k, int) or not 0 <= k < len(v.children):
            raise MoveError("nullary-strip needs a parent node and a child index")
        child = v.children[k]
        if not isinstance(child, Node) or child.gen.arity != 0:
            raise MoveError("nullary-strip needs a nullary child")
        gen = Generator(v.gen.block, _drop_cube(v.gen.op, k))
        return replace(w, m.position, Node(gen, v.children[:k] + v.children[k + 1:]))

    if kind == "nullary-graft":
        if not isinstance(v, Node):
            raise MoveError("nullary-graft needs a node")
        k, new_op, star = m.arg
        if star.arity != 0 or new_op.arity != v.gen.arity + 1 or _drop_cube(new_op, k) != v.gen.op:
            raise MoveError("nullary-graft op does not restrict to the node's op")
        children = v.children[:k] + (Node(star, ()),) + v.children[k:]
        return replace(w, m.position, Node(Generator(v.gen.block, new_op), children))

    if kind == "unit-insert":
        gen = m.arg
        if not isinstance(gen, Generator) or not gen.is_unit():
            raise MoveError("unit-insert needs a unit generator")
        return replace(w, m.position, Node(gen, (v,)))

    # unit-delete
    if not isinstance(v, Node) or not v.gen.is_unit():
        raise MoveError("unit-delete needs a unit node")
    return replace(w, m.position, v.children[0])


# -- general-position normal form ---------------------------------------------

def _strip_empty_children(v: Node) -> Node:
    # an arity-0 subtree evaluates to the nullary operation, so it can be stripped
    keep = [k for k, c in enumerate(v.children) if arity(c) > 0]
    if len(keep) == len(v.children):
        return v
    op = Configuration(v.gen.op.dim, tuple(v.gen.op.cubes[k] for k in keep))
    return Node(Generator(v.gen.block, op), tuple(v.children[k] for k in keep))


def normalize_gen_pos(w: Word) -> Node:
    """Rewrite a word of arity ≥ 2 as ``g ∘ (t_1, ..., t_a)`` with ``a ≥ 2`` and every ``t_i`` of positive arity.

    Follows the induction on length: nullary inputs are stripped, a unary
    head is merged into a same-block child or pushed through an other-block
    child by interchange.  Unit heads are deleted rather than pushed.
    """
    if arity(w) < 2:
        raise WordError("general position needs arity at least 2")
    return _gen_pos(w)


def _gen_pos(w: Word) -> Node:
    while isinstance(w, Node) and w.gen.is_unit():
        w = w.children[0]
    w = _strip_empty_children(w)
    if w.gen.arity >= 2:
        return w
    head = w.gen
    child = _gen_pos(w.children[0])
    if child.gen.block == head.block:
        return Node(Generator(head.block, partial_compose(head.op, 1, child.gen.op)), child.children)
    return Node(child.gen, tuple(Node(head, (t,)) for t in child.children))


# -- bounded equality search ----------------------------------------------------

def _paths(w: Word, prefix=()):
    if isinstance(w, Node):
        yield prefix, w
        for k, c in enumerate(w.children):
            yield from _paths(c, prefix + (k,))


def _cells(boxes):
    """Hulls of the coarsest-forced grouping: merge while any two hulls overlap."""
    cells = list(boxes)
    merged = True
    while merged:
        merged = False
        for a in range(len(cells)):
            for b in range(a + 1, len(cells)):
                if cells[a].overlaps(cells[b]):
                    cells[a] = hull([cells[a], cells.pop(b)])
                    merged = True
                    break
            if merged:
                break
    return sorted(set(cells), key=lambda h: [(iv.lo, iv.hi) for iv in h.intervals])


def _permute(v: Node, order) -> Node:
    # reordering inputs together with op cubes is the same element (Σ-equivariance)
    op = Configuration(v.gen.op.dim, tuple(v.gen.op.cubes[k] for k in order))
    return Node(Generator(v.gen.block, op), tuple(v.children[k] for k in order))


def _pull_out(w: Word, path, v: Node):
    """Give every child of ``v`` the same head, then interchange it above ``v``.

    The common head is the cell structure of all the children's cubes; a
    child missing a cell first gets a nullary input grafted into it.
    Returns ``(word, number of moves)`` or ``None``.
    """
    kids = v.children
    if not kids or not all(isinstance(c, Node) and c.gen.arity > 0 for c in kids):
        return None
    block = kids[0].gen.block
    if block == v.gen.block or any(c.gen.block != block for c in kids):
        return None
    cells = _cells([b for c in kids for b in c.gen.op.cubes])
    if len(cells) == 1 and cells[0].is_full():
        return None
    head = Configuration(cells[0].dim, tuple(cells))
    if all(c.gen.op == head for c in kids):
        return None
    star = Generator(block, nullary(head.dim))
    n_moves = 0
    for k in range(len(kids)):
        cpath = path + (k,)
        child = subterm(w, cpath)
        homes = [next(n for n, cell in enumerate(cells) if cell.overlaps(b) or cell == b)
                 for b in child.gen.op.cubes]
        for n, cell in enumerate(cells):
            if n not in homes:
                new_op = Configuration(head.dim, child.gen.op.cubes + (cell,))
                move = RewriteMove("nullary-graft", cpath, (child.gen.arity, new_op, star))
                w = apply_move(w, move)
                n_moves += 1
                child = subterm(w, cpath)
                homes.append(n)
        order = sorted(range(len(homes)), key=lambda q: (homes[q], q))
        child = _permute(child, order)
        homes = [homes[q] for q in order]
        w = replace(w, cpath, child)
        for n, cell in enumerate(cells):
            mine = [q for q, h in enumerate(homes) if h == n]
            inner = Configuration(head.dim, tuple(child.gen.op.cubes[q].pullback(cell) for q in mine))
            outer = Configuration(head.dim, child.gen.op.cubes[:n] + (cell,) + child.gen.op.cubes[n + len(mine):])
            w = apply_move(w, RewriteMove("head-split", cpath, (n, outer, inner)))
            n_moves += 1
            child = subterm(w, cpath)
            homes = homes[:n] + [n] + homes[n + len(mine):]
    kind = "interchange-forward" if v.gen.block < block else "interchange-backward"
    w = apply_move(w, RewriteMove(kind, path))
    return w, n_moves + 1


def candidate_moves(w: Word, blocks: AxisBlocks) -> list[RewriteMove]:
    """Single moves tried by the oracle from ``w``.

    Only the reducing kinds and interchanges are enumerated; their inverses
    are covered by searching from both ends.
    """
    out = []
    for path, v in _paths(w):
        if v.gen.is_unit():
            out.append(RewriteMove("unit-delete", path))
        for k, c in enumerate(v.children):
            if isinstance(c, Node):
                if c.gen.arity == 0:
                    out.append(RewriteMove("nullary-strip", path, k))
                elif c.gen.block == v.gen.block:
                    out.append(RewriteMove("head-merge", path, k))
        if v.gen.arity == 0:
            for i in range(1, len(blocks) + 1):
                if i != v.gen.block:
                    star = Generator(i, nullary(len(blocks.axes(i))))
                    kind = "interchange-forward" if v.gen.block < i else "interchange-backward"
                    out.append(RewriteMove(kind, path, star))
            continue
        for kind in ("interchange-forward", "interchange-backward"):
            try:
                _interchange(v, kind == "interchange-forward")
            except MoveError:
                continue
            out.append(RewriteMove(kind, path))
    return out


def neighbours(w: Word, blocks: AxisBlocks):
    """``(canonical word, cost)`` pairs reachable by one move or one pull-out macro."""
    for m in candidate_moves(w, blocks):
        yield canonical_order(apply_move(w, m)), 1
    for path, v in _paths(w):
        pulled = _pull_out(w, path, v)
        if pulled:
            yield canonical_order(pulled[0]), pulled[1]


def word_equal_oracle(w1: Word, w2: Word, depth: int, blocks: AxisBlocks,
                      max_states: int = 200_000) -> str:
    """``"equal"`` if a chain of at most ``depth`` moves joins the words, else ``"not-found"``.

    Bidirectional uniform-cost search over words with canonically ordered
    children.  ``"not-found"`` is inconclusive: the move set is finite and
    the search is bounded by ``depth`` and ``max_states``.
    """
    if arity(w1) != arity(w2):
        return NOT_FOUND
    evaluate(w1, blocks)
    evaluate(w2, blocks)
    a, b = canonical_order(w1), canonical_order(w2)
    if a == b:
        return EQUAL
    dist = ({a: 0}, {b: 0})
    heaps = ([(0, 0, a)], [(0, 0, b)])
    done = (set(), set())
    tiebreak = itertools.count(1)
    best = depth + 1
    while heaps[0] or heaps[1]:
        # Both sides apply moves forward, so a meeting found later costs at
        # least the smaller pending cost; stop once that cannot beat best.
        if min(h[0][0] for h in heaps if h) >= best:
            break
        side = 0 if (heaps[0] and (not heaps[1] or len(heaps[0]) <= len(heaps[1]))) else 1
        cost, _, state = heapq.heappop(heaps[side])
        if state in done[side] or cost > dist[side][state]:
            continue
        done[side].add(state)
        for nxt, step in neighbours(state, blocks):
            nc = cost + step
            if nc > depth or nc >= dist[side].get(nxt, depth + 1):
                continue
            dist[side][nxt] = nc
            other = dist[1 - side].get(nxt)
            if other is not None:
                best = min(best, nc + other)
            heapq.heappush(heaps[side], (nc, next(tiebreak), nxt))
        if len(dist[0]) + len(dist[1]) > max_states:
            break
    return EQUAL if best <= depth else NOT_FOUND
