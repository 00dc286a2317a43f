"""Deterministic SVG rendering of quadtree models.

Leaf boxes are exact axis-aligned rectangles, so SVG (one rect per Black
leaf, preorder) reproduces the model with no resampling. The y axis is
flipped so that +y points up, matching the mathematical convention.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .quadtree import BLACK, UNDETERMINED, QuadtreeModel, RegionLabeling, collect_leaves

DEFAULT_PALETTE = (
    "#1f77b4",
    "#ff7f0e",
    "#2ca02c",
    "#d62728",
    "#9467bd",
    "#8c564b",
    "#e377c2",
    "#7f7f7f",
    "#bcbd22",
    "#17becf",
)


@dataclass(frozen=True)
class RenderStyle:
    palette: tuple[str, ...] = DEFAULT_PALETTE
    show_undetermined: bool = False
    undetermined_fill: str = "#cccccc"
    stroke: str = "none"
    stroke_width: float = 0.0

    def __post_init__(self):
        if not self.palette:
            raise ValueError("palette must not be empty")


def _fmt(x: float) -> str:
    return repr(float(x))


def render_svg(
    m: QuadtreeModel,
    labels: Optional[RegionLabeling] = None,
    style: RenderStyle = RenderStyle(),
) -> str:
    box = m.root_box
    y_lo, y_hi = box.y.lo, box.y.hi
    view = f"{_fmt(box.x.lo)} {_fmt(y_lo)} {_fmt(box.x.width)} {_fmt(box.y.width)}"
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{view}">',
    ]
    stroke_attr = ""
    if style.stroke != "none" and style.stroke_width > 0:
        stroke_attr = f' stroke="{style.stroke}" stroke-width="{_fmt(style.stroke_width)}"'
    for leaf in collect_leaves(m):
        if leaf.kind == BLACK:
            if labels is not None:
                rid = labels.leaf_to_region[leaf.path]
                fill = style.palette[rid % len(style.palette)]
            else:
                fill = style.palette[0]
        elif leaf.kind == UNDETERMINED and style.show_undetermined:
            fill = style.undetermined_fill
        else:
            continue
        b = leaf.box
        # flip y: the svg y of a rect is measured from the top of the viewBox
        y_svg = y_lo + (y_hi - b.y.hi)
        out.append(
            f'<rect x="{_fmt(b.x.lo)}" y="{_fmt(y_svg)}" '
            f'width="{_fmt(b.x.width)}" height="{_fmt(b.y.width)}" '
            f'fill="{fill}"{stroke_attr}/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
