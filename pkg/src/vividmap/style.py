"""Per-feature render style resolution under a view state.

Visibility (checkbox) and opacity (slider) are independent axes: unchecking
a category removes its features from rendering and hit-testing, while
opacity only scales alpha channels - never which features are drawn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional

from vividmap.errors import AlphaOutOfRange, GeometryValidationError
from vividmap.geomodel.types import (
    Bbox,
    Feature,
    LineString,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Polygon,
    Region,
)
from vividmap.ontology import Ontology

RGBA = tuple[int, int, int, float]

MODE_2D = "2D"
MODE_3D = "3D"

POLYGON_FILL_ALPHA = 0.55
POLYGON_STROKE_WIDTH = 2.0
LINE_STROKE_WIDTH = 3.0
MARKER_RING_WIDTH = 2.0
DEFAULT_ICON = "default-pin"

Z_POLYGON = 0
Z_LINE = 1
Z_POINT = 2


@dataclass(frozen=True)
class ViewState:
    """One user session's view: extent, viewport, mode, per-category emphasis."""

    mode: str
    bbox: Bbox
    viewport: tuple[int, int]
    opacity: dict = field(default_factory=dict)      # category_id -> alpha, default 1.0
    visible: frozenset = frozenset()                 # checked category ids
    annotations: tuple[Region, ...] = ()

    def __post_init__(self):
        if self.mode not in (MODE_2D, MODE_3D):
            raise GeometryValidationError("bad_mode", f"mode must be '2D' or '3D', got {self.mode!r}")
        w, h = self.viewport
        if not (isinstance(w, int) and isinstance(h, int) and w >= 1 and h >= 1):
            raise GeometryValidationError("bad_viewport",
                                          f"viewport must be positive integers, got {self.viewport!r}")
        for cid, alpha in self.opacity.items():
            _check_alpha(alpha, cid)

    def category_opacity(self, category_id: str) -> float:
        return self.opacity.get(category_id, 1.0)

    def is_visible(self, category_id: str) -> bool:
        return category_id in self.visible


def _check_alpha(alpha, category_id: str) -> None:
    if (not isinstance(alpha, (int, float)) or isinstance(alpha, bool)
            or math.isnan(alpha) or not 0.0 <= alpha <= 1.0):
        raise AlphaOutOfRange(
            f"opacity for {category_id!r} must be in [0, 1], got {alpha!r}")


def set_opacity(view_state: ViewState, category_id: str, alpha: float,
                ontology: Ontology) -> ViewState:
    """Return a view state with one slider moved; everything else untouched.

    Out-of-range alphas are rejected, not clamped.
    """
    _check_alpha(alpha, category_id)
    ontology.get(category_id)  # raises UnknownCategory
    opacity = dict(view_state.opacity)
    opacity[category_id] = float(alpha)
    return replace(view_state, opacity=opacity)


def set_visibility(view_state: ViewState, category_id: str, visible: bool,
                   ontology: Ontology) -> ViewState:
    """Return a view state with one checkbox toggled."""
    ontology.get(category_id)
    visible_set = set(view_state.visible)
    if visible:
        visible_set.add(category_id)
    else:
        visible_set.discard(category_id)
    return replace(view_state, visible=frozenset(visible_set))


def effective_alpha(base_alpha: float, category_alpha: float) -> float:
    """Compose an element's intrinsic alpha with its category slider."""
    return base_alpha * category_alpha


@dataclass(frozen=True)
class RenderStyle:
    fill: RGBA
    stroke: RGBA
    stroke_width: float
    icon_id: Optional[str]
    z_rank: int


def _geometry_class(feature: Feature) -> int:
    g = feature.geometry
    if g is None or isinstance(g, (Point, MultiPoint)):
        return Z_POINT
    if isinstance(g, (LineString, MultiLineString)):
        return Z_LINE
    if isinstance(g, (Polygon, MultiPolygon)):
        return Z_POLYGON
    raise TypeError(f"not a geometry: {g!r}")


def resolve_style(feature: Feature, view_state: ViewState,
                  ontology: Ontology) -> Optional[RenderStyle]:
    """Resolve one feature's style, or None when its category is unchecked."""
    category = ontology.get(feature.category_id)
    if not view_state.is_visible(feature.category_id):
        return None
    r, g, b = ontology.resolve_color(feature.category_id)
    cat_alpha = view_state.category_opacity(feature.category_id)
    klass = _geometry_class(feature)
    if klass == Z_POLYGON:
        return RenderStyle(
            fill=(r, g, b, effective_alpha(POLYGON_FILL_ALPHA, cat_alpha)),
            stroke=(r, g, b, effective_alpha(1.0, cat_alpha)),
            stroke_width=POLYGON_STROKE_WIDTH,
            icon_id=None,
            z_rank=Z_POLYGON,
        )
    if klass == Z_LINE:
        return RenderStyle(
            fill=(r, g, b, 0.0),
            stroke=(r, g, b, effective_alpha(1.0, cat_alpha)),
            stroke_width=LINE_STROKE_WIDTH,
            icon_id=None,
            z_rank=Z_LINE,
        )
    return RenderStyle(
        fill=(r, g, b, effective_alpha(1.0, cat_alpha)),
        stroke=(255, 255, 255, effective_alpha(1.0, cat_alpha)),
        stroke_width=MARKER_RING_WIDTH,
        icon_id=category.icon_id or DEFAULT_ICON,
        z_rank=Z_POINT,
    )


def default_view_state(mode: str, bbox: Bbox, viewport: tuple[int, int],
                       ontology: Ontology) -> ViewState:
    """Fresh session state: every category checked, every slider at 1.0."""
    return ViewState(
        mode=mode,
        bbox=bbox,
        viewport=viewport,
        opacity={},
        visible=frozenset(c.id for c in ontology),
        annotations=(),
    )
