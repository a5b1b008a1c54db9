"""Exact-rational little cubes: boxes, configurations and the operad structure of C_d.

Every coordinate is a :class:`fractions.Fraction`; nothing in this package
ever touches a float.  Boxes are open, so two cubes may share a facet.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


class GeometryError(ValueError):
    """An invariant of an interval, box, configuration or permutation is violated."""


def rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a reduced Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise GeometryError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            n = int(num)
            d = int(den) if sep else 1
        except ValueError:
            raise GeometryError(f"not a rational: {value!r}") from None
        if d == 0:
            raise GeometryError(f"zero denominator: {value!r}")
        return Fraction(n, d)
    raise GeometryError(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", rational(self.lo))
        object.__setattr__(self, "hi", rational(self.hi))
        if not (ZERO <= self.lo < self.hi <= ONE):
            raise GeometryError(f"interval ]{self.lo},{self.hi}[ not inside ]0,1[")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def apply(self, inner: Interval) -> Interval:
        """Image of ``inner`` under the affine map ]0,1[ -> ]lo,hi[."""
        return Interval(self.lo + self.length * inner.lo, self.lo + self.length * inner.hi)

    def pullback(self, outer: Interval) -> Interval:
        """Inverse of :meth:`apply`: the ``x`` with ``outer.apply(x) == self``."""
        return Interval((self.lo - outer.lo) / outer.length, (self.hi - outer.lo) / outer.length)

    def overlaps(self, other: Interval) -> bool:
        # open intervals: touching endpoints do not overlap
        return self.lo < other.hi and other.lo < self.hi

    def __repr__(self):
        return f"]{format_rational(self.lo)},{format_rational(self.hi)}["


FULL = Interval(ZERO, ONE)


@dataclass(frozen=True)
class Box:
    intervals: tuple[Interval, ...]

    def __post_init__(self):
        ivs = tuple(self.intervals)
        if not ivs:
            raise GeometryError("a box needs at least one axis")
        if not all(isinstance(iv, Interval) for iv in ivs):
            raise GeometryError("box axes must be Interval instances")
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def of(cls, *bounds) -> Box:
        """``Box.of((lo, hi), (lo, hi), ...)`` with ints, Fractions or strings."""
        return cls(tuple(Interval(lo, hi) for lo, hi in bounds))

    @classmethod
    def full(cls, dim: int) -> Box:
        return cls((FULL,) * dim)

    @property
    def dim(self) -> int:
        return len(self.intervals)

    @property
    def volume(self) -> Fraction:
        vol = ONE
        for iv in self.intervals:
            vol *= iv.length
        return vol

    def is_full(self) -> bool:
        return all(iv == FULL for iv in self.intervals)

    def center(self) -> tuple[Fraction, ...]:
        return tuple((iv.lo + iv.hi) / 2 for iv in self.intervals)

    def overlaps(self, other: Box) -> bool:
        """True when the open boxes intersect."""
        return all(a.overlaps(b) for a, b in zip(self.intervals, other.intervals))

    def project(self, axes: range) -> Box:
        return Box(self.intervals[axes.start:axes.stop])

    def pullback(self, outer: Box) -> Box:
        return Box(tuple(a.pullback(o) for a, o in zip(self.intervals, outer.intervals)))

    def __repr__(self):
        return "×".join(repr(iv) for iv in self.intervals)


def box_apply(outer: Box, inner: Box) -> Box:
    """Compose the affine embeddings: the image of ``inner`` inside ``outer``."""
    if outer.dim != inner.dim:
        raise GeometryError(f"dimension mismatch {outer.dim} != {inner.dim}")
    return Box(tuple(o.apply(i) for o, i in zip(outer.intervals, inner.intervals)))


def hull(boxes: Iterable[Box]) -> Box:
    """Smallest box containing all of ``boxes``."""
    boxes = list(boxes)
    if not boxes:
        raise GeometryError("hull of no boxes")
    dim = boxes[0].dim
    return Box(tuple(
        Interval(min(b.intervals[k].lo for b in boxes), max(b.intervals[k].hi for b in boxes))
        for k in range(dim)
    ))


@dataclass(frozen=True)
class Configuration:
    """A point of C_d(j): ``cubes[i]`` is the cube with input label ``i + 1``."""

    dim: int
    cubes: tuple[Box, ...] = ()

    def __post_init__(self):
        cubes = tuple(self.cubes)
        object.__setattr__(self, "cubes", cubes)
        if not isinstance(self.dim, int) or self.dim < 1:
            raise GeometryError(f"dimension must be a positive integer, got {self.dim!r}")
        for b in cubes:
            if not isinstance(b, Box) or b.dim != self.dim:
                raise GeometryError(f"cube {b!r} is not a {self.dim}-box")
        for i in range(len(cubes)):
            for k in range(i + 1, len(cubes)):
                if cubes[i].overlaps(cubes[k]):
                    raise GeometryError(f"cubes {i + 1} and {k + 1} overlap")

    @property
    def arity(self) -> int:
        return len(self.cubes)

    def __len__(self):
        return len(self.cubes)

    def __repr__(self):
        return f"Configuration({self.dim}, [{', '.join(map(repr, self.cubes))}])"


def identity(d: int) -> Configuration:
    """The operad unit: one cube filling ]0,1[^d."""
    return Configuration(d, (Box.full(d),))


def nullary(d: int) -> Configuration:
    return Configuration(d, ())


def compose(outer: Configuration, inners: Sequence[Configuration]) -> Configuration:
    """Full operadic composition; labels run in (outer label, inner label) order."""
    if len(inners) != outer.arity:
        raise GeometryError(f"arity {outer.arity} but {len(inners)} inputs")
    cubes = []
    for box, inner in zip(outer.cubes, inners):
        if inner.dim != outer.dim:
            raise GeometryError(f"dimension mismatch {outer.dim} != {inner.dim}")
        cubes.extend(box_apply(box, c) for c in inner.cubes)
    return Configuration(outer.dim, tuple(cubes))


def partial_compose(outer: Configuration, i: int, inner: Configuration) -> Configuration:
    """``outer ∘_i inner`` with 1-based ``i``."""
    if not 1 <= i <= outer.arity:
        raise GeometryError(f"no input {i} in arity {outer.arity}")
    inners = [identity(outer.dim)] * outer.arity
    inners[i - 1] = inner
    return compose(outer, inners)


@dataclass(frozen=True)
class Permutation:
    """A bijection of {1..j}; ``images[i - 1]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise GeometryError(f"{images!r} is not a permutation of 1..{len(images)}")

    @classmethod
    def identity(cls, j: int) -> Permutation:
        return cls(tuple(range(1, j + 1)))

    @property
    def size(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # (self * other)(i) = self(other(i))
        if self.size != other.size:
            raise GeometryError("permutation sizes differ")
        return Permutation(tuple(self(other(i)) for i in range(1, self.size + 1)))

    def inverse(self) -> Permutation:
        inv = [0] * self.size
        for i, img in enumerate(self.images, 1):
            inv[img - 1] = i
        return Permutation(tuple(inv))


def act(c: Configuration, sigma: Permutation) -> Configuration:
    """Right Σ_j action: label ``i`` of the result is label ``sigma(i)`` of ``c``.

    ``act(act(c, s), t) == act(c, s * t)``.
    """
    if sigma.size != c.arity:
        raise GeometryError(f"permutation of size {sigma.size} on arity {c.arity}")
    return Configuration(c.dim, tuple(c.cubes[sigma(i) - 1] for i in range(1, c.arity + 1)))


def block_permutation(sigma: Permutation, sizes: Sequence[int]) -> Permutation:
    """The permutation of ``sum(sizes)`` labels that moves block ``sigma(i)`` to slot ``i``.

    ``compose(act(a, sigma), [bs[sigma(i)] ...]) == act(compose(a, bs), block_permutation(sigma, sizes))``
    where ``sizes[k]`` is the arity of ``bs[k]``.
    """
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    images = []
    for i in range(1, sigma.size + 1):
        k = sigma(i) - 1
        images.extend(range(offsets[k] + 1, offsets[k + 1] + 1))
    return Permutation(tuple(images))


def min_cube_volume(c: Configuration) -> Fraction:
    if not c.cubes:
        raise GeometryError("min_cube_volume of the nullary configuration")
    return min(b.volume for b in c.cubes)


# -- JSON ---------------------------------------------------------------------

def box_to_json(b: Box) -> dict:
    return {"intervals": [{"lo": format_rational(iv.lo), "hi": format_rational(iv.hi)}
                          for iv in b.intervals]}


def box_from_json(data) -> Box:
    try:
        return Box(tuple(Interval(rational(iv["lo"]), rational(iv["hi"]))
                         for iv in data["intervals"]))
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed box: {data!r}") from exc


def config_to_json(c: Configuration) -> dict:
    return {"dim": c.dim, "cubes": [box_to_json(b) for b in c.cubes]}


def config_from_json(data) -> Configuration:
    """Parse and re-validate; raises :class:`GeometryError` on any violation."""
    try:
        dim = data["dim"]
        cubes = data["cubes"]
    except (KeyError, TypeError) as exc:
        raise GeometryError(f"malformed configuration: {data!r}") from exc
    if isinstance(dim, bool) or not isinstance(dim, int) or not isinstance(cubes, list):
        raise GeometryError(f"malformed configuration: {data!r}")
    return Configuration(dim, tuple(box_from_json(b) for b in cubes))
