import pytest
from hypothesis import given

from conftest import words
from littlecubes.geometry import Box, Configuration, identity, nullary
from littlecubes.words import (
    AxisBlocks,
    Generator,
    Leaf,
    Node,
    WordError,
    arity,
    evaluate,
    generator_count,
    mu_embed,
    node,
    word_from_json,
    word_to_json,
)

B11 = AxisBlocks((1, 1))
HALVES = Configuration(1, (Box.of((0, "1/2")), Box.of(("1/2", 1))))


def grid_word():
    """W1 = (p⊗1)[(1⊗q)[L1,L2], (1⊗q)[L3,L4]] with p = q = halves."""
    return node(1, HALVES, node(2, HALVES, Leaf(1), Leaf(2)), node(2, HALVES, Leaf(3), Leaf(4)))


def test_axis_blocks():
    b = AxisBlocks.parse("2,3")
    assert b.dim == 5
    assert b.axes(1) == range(0, 2)
    assert b.axes(2) == range(2, 5)
    with pytest.raises(WordError):
        b.axes(3)
    for bad in ("", "1,0", "a", "1,-2"):
        with pytest.raises(WordError):
            AxisBlocks.parse(bad)


def test_mu_embed_examples():
    p = Configuration(1, (Box.of(("1/4", "1/2")),))
    q = Configuration(1, (Box.of((0, "1/3")),))
    assert mu_embed(Generator(1, p), B11) == Configuration(2, (Box.of(("1/4", "1/2"), (0, 1)),))
    assert mu_embed(Generator(2, q), B11) == Configuration(2, (Box.of((0, 1), (0, "1/3")),))
    assert mu_embed(Generator(1, nullary(1)), B11) == nullary(2)
    with pytest.raises(WordError):
        mu_embed(Generator(3, p), B11)


def test_mu_embed_multi_axis_block():
    b = AxisBlocks((1, 2))
    q = Configuration(2, (Box.of(("1/2", 1), (0, "1/4")),))
    assert mu_embed(Generator(2, q), b).cubes[0] == Box.of((0, 1), ("1/2", 1), (0, "1/4"))


def test_eval_examples():
    assert evaluate(Leaf(1), AxisBlocks((2, 1))) == identity(3)
    p = Configuration(1, (Box.of(("1/4", "1/2")),))
    q = Configuration(1, (Box.of(("1/3", "2/3")),))
    w = node(1, p, node(2, q, Leaf(1)))
    assert evaluate(w, B11) == Configuration(2, (Box.of(("1/4", "1/2"), ("1/3", "2/3")),))
    grid = evaluate(grid_word(), B11)
    assert grid.cubes == (
        Box.of((0, "1/2"), (0, "1/2")),
        Box.of((0, "1/2"), ("1/2", 1)),
        Box.of(("1/2", 1), (0, "1/2")),
        Box.of(("1/2", 1), ("1/2", 1)),
    )


def test_eval_follows_leaf_labels():
    w = node(1, HALVES, Leaf(2), Leaf(1))
    assert evaluate(w, B11).cubes == (Box.of(("1/2", 1), (0, 1)), Box.of((0, "1/2"), (0, 1)))


def test_structural_validation():
    with pytest.raises(WordError):
        Node(Generator(1, HALVES), (Leaf(1),))
    with pytest.raises(WordError):
        evaluate(node(1, HALVES, Leaf(1), Leaf(3)), B11)
    with pytest.raises(WordError):
        evaluate(node(1, identity(2), Leaf(1)), B11)


def test_generator_count():
    assert generator_count(Leaf(1)) == 0
    assert generator_count(node(1, HALVES, Leaf(1), Leaf(2))) == 1
    assert generator_count(grid_word()) == 3


def test_word_json_rejects_bad_input():
    good = word_to_json(grid_word())
    assert word_from_json(good, B11) == grid_word()
    bad_arity = {"gen": good["gen"], "children": good["children"][:1]}
    bad_labels = word_to_json(node(1, HALVES, Leaf(1), Leaf(1)))
    for bad in (bad_arity, bad_labels, {"leaf": "1"}, {"gen": {}, "children": []}, [1]):
        with pytest.raises(WordError):
            word_from_json(bad)
    with pytest.raises(WordError):
        word_from_json(good, AxisBlocks((2, 1)))


@given(words())
def test_word_json_round_trip(case):
    blocks, w = case
    assert word_from_json(word_to_json(w), blocks) == w


@given(words())
def test_eval_arity(case):
    blocks, w = case
    assert evaluate(w, blocks).arity == arity(w)
