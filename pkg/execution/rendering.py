#!/usr/bin/env python3
"""
Render a source patch and its image patch one above the other.

SVG and PDF drawings use reportlab.graphics at a fixed scale of 40 user units
per unit of length, one rectangle per tile with its label centred and a
vertical marker at the origin.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from reportlab.graphics import renderPDF, renderSVG
from reportlab.graphics.shapes import Drawing, Line, Rect, String
from reportlab.lib import colors

from execution.exactreal import QLin
from execution.suspension import SuspensionPoint, TilePatch, canonical, patch
from execution.tiling_examples import ExampleBundle

SCALE = 40
ROW_HEIGHT = 36
ROW_GAP = 28
MARGIN = 20
FORMATS = ('svg', 'pdf', 'json', 'text')

TILE_COLORS = {
    0: colors.HexColor('#ecf0f1'),
    1: colors.HexColor('#3498db'),
    2: colors.HexColor('#27ae60'),
    3: colors.HexColor('#e67e22'),
}


@dataclass(frozen=True)
class RenderedPair:
    example: int
    point: SuspensionPoint
    image: SuspensionPoint
    half_width: QLin
    source: TilePatch
    target: TilePatch

    def to_json(self) -> dict:
        return {
            'example': self.example,
            'L': self.half_width.to_json(),
            'point': self.point.to_json(),
            'image': self.image.to_json(),
            'source': self.source.to_json(),
            'target': self.target.to_json(),
        }


def build_patches(bundle: ExampleBundle, rho: Fraction, s: Fraction, L: Fraction) -> RenderedPair:
    """Canonicalise [x(rho), s] in the source and cut both tilings to [-L, L]."""
    half_width = QLin.rational(L)
    point = canonical(bundle.g, bundle.source.point(rho), QLin.rational(s))
    image = bundle.map.apply(point)
    return RenderedPair(bundle.id, point, image, half_width,
                        patch(point, half_width), patch(image, half_width))


def to_text(pair: RenderedPair) -> str:
    lines = [f"Example {pair.example}  L = {pair.half_width}"]
    for title, p in (('source', pair.source), ('image', pair.target)):
        lines.append(f"{title}:")
        for tile in p.tiles:
            marker = '*' if tile.left <= 0 < tile.right else ' '
            lines.append(
                f" {marker} {tile.label}  [{float(tile.left):10.4f}, {float(tile.right):10.4f})"
                f"  length {tile.length}"
            )
    return '\n'.join(lines) + '\n'


def _row(drawing: Drawing, p: TilePatch, origin_x: float, y: float, title: str) -> None:
    drawing.add(String(MARGIN / 2, y + ROW_HEIGHT + 4, title, fontSize=9))
    for tile in p.tiles:
        x = origin_x + float(tile.left) * SCALE
        width = float(tile.length) * SCALE
        drawing.add(Rect(x, y, width, ROW_HEIGHT,
                         fillColor=TILE_COLORS.get(tile.label, colors.lightgrey),
                         strokeColor=colors.HexColor('#2c3e50'), strokeWidth=0.75))
        drawing.add(String(x + width / 2, y + ROW_HEIGHT / 2 - 4, str(tile.label),
                           fontSize=10, textAnchor='middle'))


def to_drawing(pair: RenderedPair) -> Drawing:
    left = min(float(pair.source.left), float(pair.target.left))
    right = max(float(pair.source.right), float(pair.target.right))
    width = (right - left) * SCALE + 2 * MARGIN
    height = 2 * ROW_HEIGHT + ROW_GAP + 2 * MARGIN + 12
    origin_x = MARGIN - left * SCALE

    drawing = Drawing(width, height)
    _row(drawing, pair.target, origin_x, MARGIN, 'image')
    _row(drawing, pair.source, origin_x, MARGIN + ROW_HEIGHT + ROW_GAP, 'source')
    drawing.add(Line(origin_x, MARGIN / 2, origin_x, height - MARGIN / 2,
                     strokeColor=colors.HexColor('#c0392b'), strokeWidth=1.5))
    return drawing


def to_svg(pair: RenderedPair) -> str:
    return renderSVG.drawToString(to_drawing(pair))


def to_pdf(pair: RenderedPair, path: str) -> str:
    renderPDF.drawToFile(to_drawing(pair), path, msg=f"Example {pair.example} patches")
    return path
