from fractions import Fraction

import pytest
from hypothesis import strategies as st

from littlecubes.generate import GenParams, gen_word
from littlecubes.geometry import Box, Configuration, Interval
from littlecubes.words import AxisBlocks

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key}: {line}")


@pytest.fixture
def record():
    def _record(key, ok, line):
        ACCEPTANCE[key] = (ok, line)
        print(f"[{'PASS' if ok else 'FAIL'}] {key}: {line}")
    return _record


@st.composite
def intervals(draw, den=16):
    lo = draw(st.integers(0, den - 1))
    hi = draw(st.integers(lo + 1, den))
    return Interval(Fraction(lo, den), Fraction(hi, den))


@st.composite
def configurations(draw, dim=None, max_cubes=4):
    d = draw(st.integers(1, 3)) if dim is None else dim
    boxes = []
    for _ in range(draw(st.integers(0, max_cubes))):
        b = Box(tuple(draw(intervals()) for _ in range(d)))
        if not any(b.overlaps(o) for o in boxes):
            boxes.append(b)
    return Configuration(d, tuple(boxes))


BLOCK_CHOICES = [(1,), (1, 1), (1, 2), (2, 1), (2, 2), (1, 1, 1)]


@st.composite
def words(draw, blocks=None, max_generators=4):
    b = AxisBlocks(draw(st.sampled_from(BLOCK_CHOICES))) if blocks is None else blocks
    seed = draw(st.integers(0, 2**64 - 1))
    return b, gen_word(GenParams(seed=seed, blocks=b, max_generators=max_generators))
