"""Deterministic SVG emission for diagrams, markings and curve sketches.

Layout constants live in one place; output is byte-identical across runs
for the same input, so golden-file comparisons are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .core import FloorDiagram
from .tropical import TropicalCurveSketch


@dataclass(frozen=True)
class SvgLayout:
    unit: int = 80          # horizontal pitch between diagram vertices
    radius: int = 7         # vertex circle radius
    dot: int = 4            # marking point radius
    margin: int = 40
    height: int = 160
    sketch_size: int = 600
    stroke: str = "#222222"
    accent: str = "#aa2222"


LAYOUT = SvgLayout()


def _fmt(value) -> str:
    return f"{float(value):.2f}"


def _svg(width: int, height: int, body: list[str]) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _arc(x1: float, y: float, x2: float, lift: float, stroke: str, width: int) -> str:
    mx = (x1 + x2) / 2
    return (
        f'<path d="M {_fmt(x1)} {_fmt(y)} Q {_fmt(mx)} {_fmt(y - lift)} '
        f'{_fmt(x2)} {_fmt(y)}" fill="none" stroke="{stroke}" stroke-width="{width}"/>'
    )


def diagram_svg(diag: FloorDiagram, layout: SvgLayout = LAYOUT) -> str:
    """Vertices on a row, edges as arcs, weights >= 2 labeled."""
    y = layout.height / 2
    width = 2 * layout.margin + layout.unit * (diag.d - 1) or 2 * layout.margin

    def vx(v: int) -> float:
        return layout.margin + layout.unit * (v - 1)

    body = []
    copies: dict[tuple[int, int], int] = {}
    for s, t, w in diag.edges:
        c = copies.get((s, t), 0)
        copies[(s, t)] = c + 1
        lift = 18 * (t - s) + 26 * c
        body.append(_arc(vx(s), y, vx(t), lift, layout.stroke, 2))
        if w > 1:
            mx = (vx(s) + vx(t)) / 2
            body.append(
                f'<text x="{_fmt(mx)}" y="{_fmt(y - lift / 2 - 6)}" '
                f'font-size="14" text-anchor="middle">{w}</text>'
            )
    for v in range(1, diag.d + 1):
        body.append(
            f'<circle cx="{_fmt(vx(v))}" cy="{_fmt(y)}" r="{layout.radius}" '
            f'fill="white" stroke="{layout.stroke}" stroke-width="2"/>'
        )
    return _svg(int(width), layout.height, body)


def marking_svg(
    diag: FloorDiagram, order: tuple[str, ...], layout: SvgLayout = LAYOUT
) -> str:
    """Marked diagram: every element on a row, decorated-graph edges as arcs."""
    from .tropical import canonical_marking

    order = canonical_marking(diag, tuple(order))
    pos = {label: i for i, label in enumerate(order)}
    y = layout.height / 2
    pitch = layout.unit // 2
    width = 2 * layout.margin + pitch * (len(order) - 1)

    def px(label: str) -> float:
        return layout.margin + pitch * pos[label]

    arcs: list[tuple[str, str, int]] = []
    for label in order:
        if label.startswith("e"):
            core = label[1:].split("#")[0]
            st, w = core.split("w")
            s, t = st.split("-")
            arcs.append((f"v{s}", label, int(w)))
            arcs.append((label, f"v{t}", int(w)))
        elif label.startswith("s"):
            core = label[1:].split("#")[0]
            v, w = core.split("w")
            arcs.append((f"v{v}", label, int(w)))
    body = []
    for a, b, w in arcs:
        span = abs(pos[b] - pos[a])
        lift = 10 + 8 * span
        body.append(_arc(px(a), y, px(b), lift, layout.stroke, 1 + (w > 1)))
        if w > 1:
            mx = (px(a) + px(b)) / 2
            body.append(
                f'<text x="{_fmt(mx)}" y="{_fmt(y - lift / 2 - 4)}" '
                f'font-size="12" text-anchor="middle">{w}</text>'
            )
    for label in order:
        if label.startswith("v"):
            body.append(
                f'<circle cx="{_fmt(px(label))}" cy="{_fmt(y)}" r="{layout.radius}" '
                f'fill="white" stroke="{layout.stroke}" stroke-width="2"/>'
            )
        else:
            body.append(
                f'<circle cx="{_fmt(px(label))}" cy="{_fmt(y)}" r="{layout.dot}" '
                f'fill="{layout.stroke}"/>'
            )
    return _svg(int(width), layout.height, body)


def sketch_svg(sketch: TropicalCurveSketch, layout: SvgLayout = LAYOUT) -> str:
    """Floors as polylines with rays, elevators as vertical strokes."""
    xs: list[Fraction] = []
    ys: list[Fraction] = []
    for f in sketch.floors:
        xs.extend([p[0] for p in f.breakpoints] + [f.anchor[0]])
        ys.extend([p[1] for p in f.breakpoints] + [f.anchor[1]])
    for e in sketch.elevators:
        xs.append(e.x)
        ys.extend([e.top, e.point[1]] + ([e.bottom] if e.bottom is not None else []))
    x_lo, x_hi = min(xs) - 1, max(xs) + 1
    y_lo, y_hi = min(ys), max(ys)
    y_lo -= (y_hi - y_lo) / 10 + 1
    y_hi += (y_hi - y_lo) / 10 + 1
    size = layout.sketch_size
    inner = size - 2 * layout.margin

    def sx(x: Fraction) -> float:
        return layout.margin + float((x - x_lo) / (x_hi - x_lo)) * inner

    def sy(y: Fraction) -> float:
        return layout.margin + float((y_hi - y) / (y_hi - y_lo)) * inner

    body = []
    for f in sketch.floors:
        pts = list(f.breakpoints)
        if not pts:
            pts = [f.anchor]
        left = (x_lo, f.height(x_lo))
        right = (x_hi, f.height(x_hi))
        chain = [left, *pts, right]
        path = "M " + " L ".join(f"{_fmt(sx(x))} {_fmt(sy(y))}" for x, y in chain)
        body.append(
            f'<path d="{path}" fill="none" stroke="{layout.stroke}" stroke-width="2"/>'
        )
        ax, ay = f.anchor
        body.append(
            f'<circle cx="{_fmt(sx(ax))}" cy="{_fmt(sy(ay))}" r="{layout.dot + 1}" '
            f'fill="white" stroke="{layout.stroke}" stroke-width="2"/>'
        )
    for e in sketch.elevators:
        bottom = e.bottom if e.bottom is not None else y_lo
        body.append(
            f'<line x1="{_fmt(sx(e.x))}" y1="{_fmt(sy(e.top))}" '
            f'x2="{_fmt(sx(e.x))}" y2="{_fmt(sy(bottom))}" '
            f'stroke="{layout.accent}" stroke-width="{1 + e.weight}"/>'
        )
        px, py = e.point
        body.append(
            f'<circle cx="{_fmt(sx(px))}" cy="{_fmt(sy(py))}" r="{layout.dot}" '
            f'fill="{layout.accent}"/>'
        )
        if e.weight > 1:
            body.append(
                f'<text x="{_fmt(sx(e.x) + 6)}" y="{_fmt((sy(e.top) + sy(bottom)) / 2)}" '
                f'font-size="13">{e.weight}</text>'
            )
    return _svg(size, size, body)


def render_svg(obj, path, order: tuple[str, ...] | None = None) -> Path:
    """Write the SVG for a diagram, marked diagram or sketch to ``path``."""
    if isinstance(obj, TropicalCurveSketch):
        content = sketch_svg(obj)
    elif isinstance(obj, FloorDiagram) and order is not None:
        content = marking_svg(obj, order)
    elif isinstance(obj, FloorDiagram):
        content = diagram_svg(obj)
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(content, encoding="utf-8")
    return out
