"""Radial contraction of cubes toward their centers, and the first grid time at which it factors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .factorization import factor
from .geometry import (
    Box,
    Configuration,
    GeometryError,
    Interval,
    format_rational,
    rational,
)
from .words import AxisBlocks, Word, word_to_json


class NoThreshold(GeometryError):
    """No grid point makes the contraction decomposable; increase the grid."""


def contract(c: Configuration, t) -> Configuration:
    """Scale every cube about its own center by ``1 - t``."""
    t = rational(t)
    if not 0 <= t < 1:
        raise GeometryError(f"contraction parameter {t} outside [0,1)")
    s = 1 - t
    cubes = []
    for b in c.cubes:
        ivs = []
        for iv in b.intervals:
            mid, half = (iv.lo + iv.hi) / 2, s * iv.length / 2
            ivs.append(Interval(mid - half, mid + half))
        cubes.append(Box(tuple(ivs)))
    return Configuration(c.dim, tuple(cubes))


@dataclass(frozen=True)
class ContractionReport:
    config: Configuration
    blocks: AxisBlocks
    threshold: Fraction
    grid: int
    certificate: Word

    def to_json(self) -> dict:
        return {
            "threshold": format_rational(self.threshold),
            "grid": self.grid,
            "certificate": word_to_json(self.certificate),
        }


def decomposability_threshold(c: Configuration, blocks: AxisBlocks, grid: int) -> ContractionReport:
    """First ``t`` in ``0, 1/grid, ..., (grid-1)/grid`` at which ``contract(c, t)`` factors.

    Decomposability need not be monotone in ``t``, so the grid is scanned in
    order rather than bisected.
    """
    if c.arity == 0:
        raise GeometryError("threshold of the nullary configuration")
    if grid < 1:
        raise GeometryError(f"grid must be positive, got {grid}")
    for k in range(grid):
        t = Fraction(k, grid)
        result = factor(contract(c, t), blocks)
        if result.decomposable:
            return ContractionReport(c, blocks, t, grid, result.word)
    raise NoThreshold(f"no grid point of 1/{grid} factors; increase grid")
