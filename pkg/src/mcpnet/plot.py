"""Decision-boundary artifacts: SVG scatter plots (2 inputs) and hyperplane meshes (3 inputs)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .core import ThresholdUnit, TruthTable

WIDTH = HEIGHT = 400
MARGIN = 40


@dataclass(frozen=True)
class PlotSpec2D:
    points: tuple[tuple[float, float, int], ...]
    line: tuple[float, float, float] | None = None  # (w1, w2, t)
    axis_range: tuple[float, float] = (-0.25, 1.25)
    title: str = "MCP"

    def boundary_segment(self) -> tuple[tuple[float, float], tuple[float, float]] | None:
        """Endpoints of ``w1*x1 + w2*x2 = t`` across the axis range, in data units."""
        if self.line is None:
            return None
        w1, w2, t = self.line
        lo, hi = self.axis_range
        if w2 != 0:
            return (lo, (t - w1 * lo) / w2), (hi, (t - w1 * hi) / w2)
        if w1 != 0:
            return (t / w1, lo), (t / w1, hi)
        return None


def plot_spec(table: TruthTable, unit: ThresholdUnit | None, **kw) -> PlotSpec2D:
    if table.n_inputs != 2:
        raise ValueError("scatter plots need a 2-input table")
    pts = tuple((float(x[0]), float(x[1]), f) for x, f in table.rows)
    line = None if unit is None else (unit.weights[0], unit.weights[1], unit.threshold)
    return PlotSpec2D(pts, line, **kw)


def _num(v: float) -> str:
    return repr(round(float(v), 12))


def _star(cx: float, cy: float, r: float) -> str:
    pts = []
    for k in range(10):
        rad = r if k % 2 == 0 else r * 0.45
        ang = math.pi / 2 + k * math.pi / 5
        pts.append(f"{_num(cx + rad * math.cos(ang))},{_num(cy + rad * math.sin(ang))}")
    return " ".join(pts)


def render_svg(spec: PlotSpec2D) -> str:
    """SVG with data-space coordinates inside a flipped, scaled group.

    Class-1 points are stars and class-0 points are circles; the boundary
    is a ``<line class="boundary">`` whose endpoints are in data units.
    """
    lo, hi = spec.axis_range
    scale = (WIDTH - 2 * MARGIN) / (hi - lo)
    tx = MARGIN - lo * scale
    ty = HEIGHT - MARGIN + lo * scale
    r = 0.035 * (hi - lo)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<title>{escape(spec.title)}</title>',
        '<rect x="0" y="0" width="100%" height="100%" fill="white"/>',
        '<clipPath id="plot-area">'
        f'<rect x="{MARGIN}" y="{MARGIN}" width="{WIDTH - 2 * MARGIN}" height="{HEIGHT - 2 * MARGIN}"/>'
        "</clipPath>",
        f'<g clip-path="url(#plot-area)">',
        f'<g id="data" transform="matrix({_num(scale)} 0 0 {_num(-scale)} {_num(tx)} {_num(ty)})">',
        f'<rect class="frame" x="{_num(lo)}" y="{_num(lo)}" width="{_num(hi - lo)}" height="{_num(hi - lo)}" '
        'fill="none" stroke="#bbb" vector-effect="non-scaling-stroke"/>',
        f'<line class="axis" x1="{_num(lo)}" y1="0" x2="{_num(hi)}" y2="0" stroke="#888" '
        'vector-effect="non-scaling-stroke"/>',
        f'<line class="axis" x1="0" y1="{_num(lo)}" x2="0" y2="{_num(hi)}" stroke="#888" '
        'vector-effect="non-scaling-stroke"/>',
    ]
    seg = spec.boundary_segment()
    if seg is not None:
        (ax, ay), (bx, by) = seg
        out.append(
            f'<line class="boundary" x1="{_num(ax)}" y1="{_num(ay)}" x2="{_num(bx)}" y2="{_num(by)}" '
            'stroke="blue" stroke-width="2" vector-effect="non-scaling-stroke"/>'
        )
    for x1, x2, f in spec.points:
        if f:
            out.append(f'<polygon class="glyph star" data-f="1" points="{_star(x1, x2, r)}" fill="black"/>')
        else:
            out.append(
                f'<circle class="glyph circle" data-f="0" cx="{_num(x1)}" cy="{_num(x2)}" r="{_num(r * 0.7)}" '
                'fill="none" stroke="black" vector-effect="non-scaling-stroke"/>'
            )
    out += [
        "</g>",
        "</g>",
        f'<text x="{WIDTH / 2}" y="{HEIGHT - 8}" text-anchor="middle">x1</text>',
        f'<text x="12" y="{HEIGHT / 2}" text-anchor="middle">x2</text>',
        f'<text x="{WIDTH / 2}" y="24" text-anchor="middle">{escape(spec.title)}</text>',
        "</svg>",
    ]
    return "\n".join(out) + "\n"


@dataclass(frozen=True)
class MeshSpec3D:
    grid: tuple[tuple[float, float, float], ...]
    points: tuple[tuple[int, int, int, int], ...]


def mesh_spec(table: TruthTable, unit: ThresholdUnit, steps: int = 2) -> MeshSpec3D:
    """Hyperplane ``z = (t - w1*x - w2*y) / w3`` sampled over the unit square."""
    if table.n_inputs != 3:
        raise ValueError("mesh output needs a 3-input table")
    w1, w2, w3 = unit.weights
    if w3 == 0:
        raise ValueError("w3 is zero; the plane is not a function of (x, y)")
    if steps < 2:
        raise ValueError("need at least two grid steps")
    ticks = [i / (steps - 1) for i in range(steps)]
    grid = tuple((x, y, (unit.threshold - w1 * x - w2 * y) / w3) for y in ticks for x in ticks)
    pts = tuple((*x, f) for x, f in table.rows)
    return MeshSpec3D(grid, pts)


def mesh_csv(spec: MeshSpec3D) -> str:
    lines = ["kind,x,y,z,f"]
    lines += [f"mesh,{_num(x)},{_num(y)},{_num(z)}," for x, y, z in spec.grid]
    lines += [f"point,{a},{b},{c},{f}" for a, b, c, f in spec.points]
    return "\n".join(lines) + "\n"
