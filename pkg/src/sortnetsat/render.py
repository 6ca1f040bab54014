"""Deterministic SVG diagrams of comparator networks.

Channels are horizontal lines, comparators vertical links with endpoint dots,
grouped by layer; comparators in one layer whose channel intervals overlap
get separate sub-columns, like the usual figures.  Integer-only geometry so
output is byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass

from sortnetsat.networks import Network

MARGIN = 24
CHANNEL_GAP = 26
COL_WIDTH = 22
LAYER_GAP = 26


@dataclass(frozen=True)
class LinkGeometry:
    layer: int  # 1-based
    i: int
    j: int
    x: int
    y1: int
    y2: int


def channel_y(i: int) -> int:
    return MARGIN + (i - 1) * CHANNEL_GAP


def _subcolumns(layer: tuple[tuple[int, int], ...]) -> list[int]:
    """Greedy interval colouring: first free sub-column per comparator."""
    cols: list[int] = []
    occupied: list[list[tuple[int, int]]] = []
    for i, j in layer:
        for c, spans in enumerate(occupied):
            if all(max(i, a) > min(j, b) for a, b in spans):
                spans.append((i, j))
                cols.append(c)
                break
        else:
            occupied.append([(i, j)])
            cols.append(len(occupied) - 1)
    return cols


def layout(net: Network) -> tuple[list[LinkGeometry], int, int]:
    """Link geometry plus total (width, height)."""
    links: list[LinkGeometry] = []
    x = MARGIN + COL_WIDTH
    for k, layer in enumerate(net.layers, start=1):
        cols = _subcolumns(layer)
        for (i, j), c in zip(layer, cols):
            links.append(LinkGeometry(k, i, j, x + c * COL_WIDTH, channel_y(i), channel_y(j)))
        x += (max(cols, default=0) + 1) * COL_WIDTH + LAYER_GAP
    width = x + MARGIN
    height = 2 * MARGIN + (net.n - 1) * CHANNEL_GAP
    return links, width, height


def render_svg(net: Network) -> str:
    links, width, height = layout(net)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
    ]
    for i in range(1, net.n + 1):
        y = channel_y(i)
        parts.append(
            f'<line class="channel" x1="{MARGIN}" y1="{y}" x2="{width - MARGIN}" y2="{y}" '
            f'stroke="black" stroke-width="1"/>\n'
        )
    for link in links:
        parts.append(
            f'<line class="comparator" x1="{link.x}" y1="{link.y1}" x2="{link.x}" y2="{link.y2}" '
            f'stroke="black" stroke-width="2"/>\n'
        )
        for y in (link.y1, link.y2):
            parts.append(f'<circle cx="{link.x}" cy="{y}" r="3" fill="black"/>\n')
    parts.append("</svg>\n")
    return "".join(parts)
