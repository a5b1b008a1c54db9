"""Command-line interface.

Exit codes: 0 success, 2 invalid input, 3 not decomposable (``factor``) or no
threshold found (``threshold``), 4 suite failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .factorization import factor, strip_grouping, witness_to_json
from .generate import GenParams, gen_config, gen_word
from .geometry import GeometryError, config_from_json, config_to_json, rational
from .homotopy import NoThreshold, contract, decomposability_threshold
from .render import render_svg
from .suites import DEFAULT_SEED, SUITES, run_suite
from .words import AxisBlocks, WordError, evaluate, word_from_json, word_to_json

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_DECOMPOSABLE = 3
EXIT_SUITE_FAILED = 4


class InvalidInput(Exception):
    pass


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"{path}: {exc}") from exc


def _write(text: str, out):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _dump(data, out):
    _write(json.dumps(data, indent=2) + "\n", out)


def _blocks(text):
    try:
        return AxisBlocks.parse(text)
    except WordError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def cmd_gen_word(args):
    params = GenParams(
        seed=args.seed,
        blocks=args.blocks,
        max_generators=args.max_generators,
        max_arity_per_generator=args.max_arity,
        coordinate_denominator_bound=args.denominator,
        allow_nullary=not args.no_nullary,
        max_leaves=args.max_leaves,
    )
    _dump(word_to_json(gen_word(params)), args.out)
    return EXIT_OK


def cmd_gen_config(args):
    try:
        c = gen_config(args.seed, args.dim, args.j, args.pinwheel, args.denominator)
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc
    _dump(config_to_json(c), args.out)
    return EXIT_OK


def cmd_eval(args):
    w = word_from_json(_read_json(args.word), args.blocks)
    _dump(config_to_json(evaluate(w, args.blocks)), args.out)
    return EXIT_OK


def cmd_factor(args):
    c = config_from_json(_read_json(args.config))
    result = factor(c, args.blocks)
    if result.decomposable:
        _dump(word_to_json(result.word), args.out)
        return EXIT_OK
    _dump(witness_to_json(result.witness), args.out)
    return EXIT_NOT_DECOMPOSABLE


def cmd_contract(args):
    c = config_from_json(_read_json(args.config))
    _dump(config_to_json(contract(c, rational(args.t))), args.out)
    return EXIT_OK


def cmd_threshold(args):
    c = config_from_json(_read_json(args.config))
    try:
        report = decomposability_threshold(c, args.blocks, args.grid)
    except NoThreshold as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_DECOMPOSABLE
    _dump(report.to_json(), args.out)
    return EXIT_OK


def cmd_check(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(name, args.trials, args.seed, args.blocks) for name in names]
    data = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    _dump(data, args.out)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_SUITE_FAILED


def cmd_render(args):
    c = config_from_json(_read_json(args.config))
    if c.dim != args.blocks.dim:
        raise InvalidInput(f"configuration has dim {c.dim}, blocks need {args.blocks.dim}")
    strips = []
    if not args.no_strips and c.arity:
        strips = [strip_grouping(c, args.blocks, i) for i in range(1, len(args.blocks) + 1)]
    _write(render_svg(c, strips), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="littlecubes", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, blocks="1,1"):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        if blocks is not None:
            p.add_argument("--blocks", type=_blocks, default=AxisBlocks.parse(blocks),
                           help=f"axis block sizes, comma separated (default {blocks})")
        p.add_argument("--out", default=None, help="output file (default: standard output)")
        return p

    p = add("gen-word", cmd_gen_word, "random tensor word")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-generators", type=int, default=4)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--max-leaves", type=int, default=8)
    p.add_argument("--denominator", type=int, default=16, help="coordinate denominator bound")
    p.add_argument("--no-nullary", action="store_true")

    p = add("gen-config", cmd_gen_config, "random configuration or the pinwheel", blocks=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--j", type=int, default=4, help="number of cubes")
    p.add_argument("--pinwheel", action="store_true", help="emit the 4-cube pinwheel")
    p.add_argument("--denominator", type=int, default=16)

    p = add("eval", cmd_eval, "evaluate a word to a configuration")
    p.add_argument("word", help="word JSON file, or - for standard input")

    p = add("factor", cmd_factor, "factor a configuration into its canonical word")
    p.add_argument("config", help="configuration JSON file, or -")

    p = add("contract", cmd_contract, "contract every cube toward its center", blocks=None)
    p.add_argument("config")
    p.add_argument("--t", required=True, help="contraction parameter in [0,1), e.g. 1/2")

    p = add("threshold", cmd_threshold, "first grid time at which the contraction factors")
    p.add_argument("config")
    p.add_argument("--grid", type=int, default=64)

    p = add("check", cmd_check, "run a property suite", blocks=None)
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--blocks", type=_blocks, default=None, help="axis block sizes (default depends on the suite)")
    p.add_argument("--trials", type=int, default=None, help="default depends on the suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = add("render", cmd_render, "SVG picture of a 2-dimensional configuration")
    p.add_argument("config")
    p.add_argument("--no-strips", action="store_true", help="omit strip overlays")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidInput, GeometryError, WordError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
