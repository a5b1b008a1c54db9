"""Exact-arithmetic little cubes operads, Boardman-Vogt tensor words and their factorization."""

from .factorization import (
    FactorResult,
    NotDecomposable,
    StripGrouping,
    brute_force_decomposable,
    common_refinement,
    factor,
    is_decomposable,
    strip_grouping,
)
from .geometry import (
    Box,
    Configuration,
    Interval,
    Permutation,
    act,
    box_apply,
    compose,
    identity,
    min_cube_volume,
)
from .homotopy import ContractionReport, contract, decomposability_threshold
from .rewrite import RewriteMove, apply_move, normalize_gen_pos, word_equal_oracle
from .words import AxisBlocks, Generator, Leaf, Node, evaluate, generator_count, mu_embed

__version__ = "0.1.0"
