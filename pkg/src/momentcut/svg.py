"""Flat SVG pictures of two-dimensional polyhedra."""
from __future__ import annotations

import math
from fractions import Fraction

from .errors import InputShapeError

PALETTE = ("#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860")
SIZE = 480
PAD = 24


def _ordered(points):
    """Vertices of a convex polygon in counter-clockwise order."""
    if len(points) < 3:
        return list(points)
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: (math.atan2(float(p[1] - cy), float(p[0] - cx)), p))


def _clipped(p, box):
    """Generators of ``p & box`` for unbounded ``p``."""
    from .polyhedra import intersect

    return intersect(p, box).vrep.vertices


def render_svg(polys, labels=None) -> str:
    """An SVG document drawing each 2-dim polyhedron; unbounded ones are clipped
    to a box around their vertices."""
    from .polyhedra import Polyhedron

    polys = list(polys)
    if not polys:
        raise InputShapeError("nothing to draw")
    for p in polys:
        if p.dim != 2:
            raise InputShapeError(f"render-svg draws 2-dimensional sets only, got dimension {p.dim}")
    anchors = [x for p in polys if not p.is_empty for x in p.vrep.vertices] or [(Fraction(0), Fraction(0))]
    lo = [min(a[i] for a in anchors) - 1 for i in range(2)]
    hi = [max(a[i] for a in anchors) + 1 for i in range(2)]
    box = Polyhedron.from_h(2, [((1, 0), lo[0]), ((-1, 0), -hi[0]), ((0, 1), lo[1]), ((0, -1), -hi[1])])
    shapes = []
    for p in polys:
        if p.is_empty:
            shapes.append([])
        elif p.is_bounded:
            shapes.append(_ordered(list(p.vrep.vertices)))
        else:
            shapes.append(_ordered(list(_clipped(p, box))))
    pts = [x for s in shapes for x in s] or anchors
    xmin, xmax = float(min(x[0] for x in pts)), float(max(x[0] for x in pts))
    ymin, ymax = float(min(x[1] for x in pts)), float(max(x[1] for x in pts))
    span = max(xmax - xmin, ymax - ymin, 1e-9)
    k = (SIZE - 2 * PAD) / span

    def tx(x):
        return f"{PAD + (float(x[0]) - xmin) * k:.3f},{SIZE - PAD - (float(x[1]) - ymin) * k:.3f}"

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    for i, s in enumerate(shapes):
        c = PALETTE[i % len(PALETTE)]
        if not s:
            continue
        title = f"<title>{labels[i]}</title>" if labels else ""
        if len(s) == 1:
            out.append(f'<circle cx="{tx(s[0]).split(",")[0]}" cy="{tx(s[0]).split(",")[1]}" r="3" fill="{c}">{title}</circle>')
        elif len(s) == 2:
            a, b = tx(s[0]).split(","), tx(s[1]).split(",")
            out.append(f'<line x1="{a[0]}" y1="{a[1]}" x2="{b[0]}" y2="{b[1]}" stroke="{c}" stroke-width="2">{title}</line>')
        else:
            pts_attr = " ".join(tx(x) for x in s)
            out.append(
                f'<polygon points="{pts_attr}" fill="{c}" fill-opacity="0.35" stroke="{c}" stroke-width="1.5">{title}</polygon>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
