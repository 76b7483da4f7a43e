"""Web Mercator projection and deterministic SVG map rendering.

The SVG output is byte-stable: coordinates are formatted with exactly two
decimals (round-half-to-even), elements are emitted in z order then feature
id order, and each feature lives in its own ``<g>`` carrying the effective
alpha attributes so opacity changes diff cleanly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable
from xml.sax.saxutils import quoteattr

from vividmap.errors import DegenerateBbox, WrongMode
from vividmap.geomodel.predicates import feature_anchor_point
from vividmap.geomodel.types import (
    Bbox,
    Feature,
    LineString,
    LonLat,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Polygon,
    Region,
    Ring,
)
from vividmap.ontology import Ontology
from vividmap.style import MODE_2D, RenderStyle, ViewState, resolve_style

MAX_MERCATOR_LAT = 85.05113

BACKGROUND_COLOR = "#ECECEC"
ANNOTATION_COLOR = "#FF7F00"
ANNOTATION_WIDTH = 3.0

MARKER_RADIUS = 14.0     # px, badge circle
MARKER_RING = 2.0        # px, white ring around the badge
MARKER_TIP_HALF = 5.0    # px, half-width of the anchor tip triangle
MARKER_TIP_RISE = 16.0   # px, tip height above the anchor
MARKER_CENTER_RISE = 22.0  # px, badge center above the anchor


@dataclass(frozen=True)
class PixelXY:
    x: float
    y: float


def _mercator_unit(p: LonLat) -> tuple[float, float]:
    """Normalized Mercator coordinates; y grows southward."""
    lat = min(max(p.lat, -MAX_MERCATOR_LAT), MAX_MERCATOR_LAT)
    mx = p.lon / 360.0 + 0.5
    my = 0.5 - math.log(math.tan(math.pi / 4.0 + math.radians(lat) / 2.0)) / (2.0 * math.pi)
    return mx, my


class Projector:
    """Linear map from a bbox's Mercator extent onto a pixel viewport."""

    def __init__(self, bbox: Bbox, viewport: tuple[int, int]):
        self.width, self.height = viewport
        x0, y1 = _mercator_unit(bbox.min)   # south-west: max Mercator y
        x1, y0 = _mercator_unit(bbox.max)   # north-east: min Mercator y
        if x1 - x0 <= 0.0 or y1 - y0 <= 0.0:
            raise DegenerateBbox("bbox has zero Mercator width or height")
        self._x0, self._y0 = x0, y0
        self._xspan, self._yspan = x1 - x0, y1 - y0

    def project(self, p: LonLat) -> PixelXY:
        mx, my = _mercator_unit(p)
        return PixelXY((mx - self._x0) / self._xspan * self.width,
                       (my - self._y0) / self._yspan * self.height)

    def unproject(self, px: float, py: float) -> LonLat:
        mx = self._x0 + px / self.width * self._xspan
        my = self._y0 + py / self.height * self._yspan
        lon = (mx - 0.5) * 360.0
        lat = math.degrees(2.0 * math.atan(math.exp((0.5 - my) * 2.0 * math.pi)) - math.pi / 2.0)
        return LonLat(lon, lat)


def project(p: LonLat, bbox: Bbox, viewport: tuple[int, int]) -> PixelXY:
    """Project one position through Web Mercator onto the viewport."""
    return Projector(bbox, viewport).project(p)


def _fmt(v: float) -> str:
    s = f"{v:.2f}"
    return "0.00" if s == "-0.00" else s


def _fmt_alpha(a: float) -> str:
    return f"{a:.6f}"


def _hex_color(rgba) -> str:
    r, g, b = rgba[0], rgba[1], rgba[2]
    return f"#{r:02X}{g:02X}{b:02X}"


def _path_data(rings: Iterable[Ring], proj: Projector) -> str:
    parts = []
    for ring in rings:
        pts = [proj.project(p) for p in ring[:-1]]
        parts.append("M " + " L ".join(f"{_fmt(p.x)},{_fmt(p.y)}" for p in pts) + " Z")
    return " ".join(parts)


def _polygon_element(feature: Feature, style: RenderStyle, proj: Projector) -> str:
    if isinstance(feature.geometry, MultiPolygon):
        rings = [ring for poly in feature.geometry.polygons for ring in poly.rings]
    else:
        rings = list(feature.geometry.rings)
    return (f'<path d="{_path_data(rings, proj)}" fill="{_hex_color(style.fill)}"'
            f' fill-rule="evenodd" stroke="{_hex_color(style.stroke)}"'
            f' stroke-width="{_fmt(style.stroke_width)}"/>')


def _line_element(feature: Feature, style: RenderStyle, proj: Projector) -> str:
    if isinstance(feature.geometry, MultiLineString):
        lines = list(feature.geometry.lines)
    else:
        lines = [feature.geometry.points]
    parts = []
    for line in lines:
        pts = " ".join(f"{_fmt(pt.x)},{_fmt(pt.y)}" for pt in (proj.project(p) for p in line))
        parts.append(f'<polyline points="{pts}" fill="none"'
                     f' stroke="{_hex_color(style.stroke)}"'
                     f' stroke-width="{_fmt(style.stroke_width)}"/>')
    return "".join(parts)


def _marker_badge(at: PixelXY, style: RenderStyle) -> str:
    """Stylized pin: anchor tip triangle plus a circle badge with a white ring."""
    tip = (f'<path d="M {_fmt(at.x)},{_fmt(at.y)}'
           f' L {_fmt(at.x - MARKER_TIP_HALF)},{_fmt(at.y - MARKER_TIP_RISE)}'
           f' L {_fmt(at.x + MARKER_TIP_HALF)},{_fmt(at.y - MARKER_TIP_RISE)} Z"'
           f' fill="{_hex_color(style.fill)}"/>')
    badge = (f'<circle cx="{_fmt(at.x)}" cy="{_fmt(at.y - MARKER_CENTER_RISE)}"'
             f' r="{_fmt(MARKER_RADIUS)}" fill="{_hex_color(style.fill)}"'
             f' stroke="{_hex_color(style.stroke)}" stroke-width="{_fmt(MARKER_RING)}"/>')
    return tip + badge


def _marker_element(feature: Feature, style: RenderStyle, proj: Projector) -> str:
    if isinstance(feature.geometry, MultiPoint):
        anchors = list(feature.geometry.points)
    elif isinstance(feature.geometry, Point):
        anchors = [feature.geometry.position]
    else:
        anchors = [feature_anchor_point(feature)]
    return "".join(_marker_badge(proj.project(a), style) for a in anchors)


def _annotation_element(region: Region, proj: Projector) -> str:
    return (f'<path d="{_path_data([region.ring], proj)}" fill="none"'
            f' stroke="{ANNOTATION_COLOR}" stroke-width="{_fmt(ANNOTATION_WIDTH)}"/>')


def render_svg(features: list[Feature], view_state: ViewState,
               ontology: Ontology, icon_registry=None) -> str:
    """Render visible features to a deterministic SVG 1.1 document.

    Markers use the built-in badge symbol; external PNG icons are a 3D-only
    concern (``icon_registry`` is accepted for interface parity).
    """
    if view_state.mode != MODE_2D:
        raise WrongMode("render_svg requires a 2D view state")
    width, height = view_state.viewport
    proj = Projector(view_state.bbox, view_state.viewport)

    styled = []
    for feature in features:
        style = resolve_style(feature, view_state, ontology)
        if style is not None:
            styled.append((feature, style))
    styled.sort(key=lambda fs: (fs[1].z_rank, fs[0].id))

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}"'
        f' height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="{BACKGROUND_COLOR}"/>',
    ]
    for feature, style in styled:
        if style.z_rank == 0:
            body = _polygon_element(feature, style, proj)
        elif style.z_rank == 1:
            body = _line_element(feature, style, proj)
        else:
            body = _marker_element(feature, style, proj)
        lines.append(
            f'<g data-feature={quoteattr(feature.id)}'
            f' data-category={quoteattr(feature.category_id)}'
            f' fill-opacity="{_fmt_alpha(style.fill[3])}"'
            f' stroke-opacity="{_fmt_alpha(style.stroke[3])}">{body}</g>')
    for region in view_state.annotations:
        lines.append(_annotation_element(region, proj))
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
