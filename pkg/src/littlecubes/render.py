"""SVG pictures of 2-dimensional configurations with their strip groupings.

Cubes are filled orange and labeled; block-1 strip hulls are drawn as
light-blue vertical strips and block-2 hulls as red horizontal ones.  Output
bytes depend only on the input.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .factorization import StripGrouping
from .geometry import Box, Configuration, GeometryError

SIZE = 400
MARGIN = 20
ORANGE = "#ff9933"
LIGHT_BLUE = "#87cefa"
RED = "#e03030"
STRIP_COLOURS = {1: LIGHT_BLUE, 2: RED}


def _num(q: Fraction) -> str:
    return f"{float(q):.4f}".rstrip("0").rstrip(".")


def _rect(x0, y0, x1, y1, **attrs) -> str:
    # unit square coordinates, y pointing up
    x, y = MARGIN + SIZE * x0, MARGIN + SIZE * (1 - y1)
    w, h = SIZE * (x1 - x0), SIZE * (y1 - y0)
    extra = " ".join(f'{k.replace("_", "-")}="{v}"' for k, v in attrs.items())
    return f'<rect x="{_num(x)}" y="{_num(y)}" width="{_num(w)}" height="{_num(h)}" {extra}/>'


def _strip_rects(g: StripGrouping) -> list[tuple[Box, str]]:
    colour = STRIP_COLOURS.get(g.block, LIGHT_BLUE)
    out = []
    for h in g.hulls:
        if h.dim == 2:
            out.append((h, colour))
        elif g.block == 1:
            out.append((Box((h.intervals[0], Box.full(1).intervals[0])), colour))
        else:
            out.append((Box((Box.full(1).intervals[0], h.intervals[0])), colour))
    return out


def render_svg(c: Configuration, strips: Sequence[StripGrouping] = ()) -> str:
    """Render ``c``; groupings with a single group are not drawn."""
    if c.dim != 2:
        raise GeometryError(f"can only render dimension 2, got {c.dim}")
    total = SIZE + 2 * MARGIN
    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total}" height="{total}" '
        f'viewBox="0 0 {total} {total}">',
        f'<rect x="0" y="0" width="{total}" height="{total}" fill="white"/>',
        _rect(0, 0, 1, 1, fill="none", stroke="black", stroke_width="1"),
    ]
    overlays = [r for g in strips if len(g.groups) >= 2 for r in _strip_rects(g)]
    lines.append('<g id="strip-fills">')
    for box, colour in overlays:
        (x, y) = box.intervals
        lines.append(_rect(x.lo, y.lo, x.hi, y.hi, fill=colour, fill_opacity="0.25", stroke="none"))
    lines.append("</g>")
    lines.append('<g id="cubes">')
    for label, box in enumerate(c.cubes, 1):
        x, y = box.intervals
        lines.append(_rect(x.lo, y.lo, x.hi, y.hi, fill=ORANGE, stroke="black", stroke_width="1"))
        cx, cy = MARGIN + SIZE * (x.lo + x.hi) / 2, MARGIN + SIZE * (1 - (y.lo + y.hi) / 2)
        lines.append(f'<text x="{_num(cx)}" y="{_num(cy)}" font-family="sans-serif" font-size="12" '
                     f'text-anchor="middle" dominant-baseline="middle">{label}</text>')
    lines.append("</g>")
    lines.append('<g id="strip-edges">')
    for box, colour in overlays:
        x, y = box.intervals
        lines.append(_rect(x.lo, y.lo, x.hi, y.hi, fill="none", stroke=colour, stroke_width="2"))
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
