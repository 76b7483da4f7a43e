"""3D scene construction: extruded polygons, line strips and billboards.

Coordinates are local tangent-plane meters (equirectangular about the view
bbox center; x east, y north, z up) - city-scale accurate and viewer
agnostic. Every node color carries the category's effective alpha, which is
the whole 3D opacity path: sliders only touch the alpha channel.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from math import cos, radians
from typing import Optional, Sequence

from vividmap.errors import DegenerateRing, SelfIntersecting, WrongMode
from vividmap.geomodel.predicates import feature_anchor_point
from vividmap.geomodel.types import (
    Feature,
    LineString,
    LonLat,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Polygon,
)
from vividmap.icons import IconRegistry
from vividmap.ontology import Ontology
from vividmap.style import MODE_3D, RGBA, RenderStyle, ViewState, resolve_style

logger = logging.getLogger(__name__)

METERS_PER_DEGREE = 111320.0

XY = tuple[float, float]
XYZ = tuple[float, float, float]

POLYGON = "polygon"
POLYLINE = "polyline"
BILLBOARD = "billboard"

MESH_NODE = "mesh"  # wire name for extruded polygon nodes


def classify(feature: Feature) -> str:
    """Type check deciding how a feature enters the scene."""
    g = feature.geometry
    if isinstance(g, (Polygon, MultiPolygon)):
        return POLYGON
    if isinstance(g, (LineString, MultiLineString)):
        return POLYLINE
    return BILLBOARD  # points and geometry-less features become markers


def _shoelace(points: Sequence[XY]) -> float:
    total = 0.0
    n = len(points)
    for i in range(n):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % n]
        total += x1 * y2 - x2 * y1
    return total / 2.0


def _point_in_triangle(px, py, ax, ay, bx, by, cx, cy) -> bool:
    # inclusive: points on the triangle edge block the ear
    d1 = (px - bx) * (ay - by) - (ax - bx) * (py - by)
    d2 = (px - cx) * (by - cy) - (bx - cx) * (py - cy)
    d3 = (px - ax) * (cy - ay) - (cx - ax) * (py - ay)
    has_neg = d1 < 0 or d2 < 0 or d3 < 0
    has_pos = d1 > 0 or d2 > 0 or d3 > 0
    return not (has_neg and has_pos)


def triangulate(ring: Sequence[XY]) -> list[tuple[int, int, int]]:
    """Ear-clip a closed simple ring into exactly n-2 counterclockwise triangles.

    Indices refer to the ring's distinct vertices (the closing duplicate
    dropped). Raises DegenerateRing for zero area and SelfIntersecting when
    no ear can be clipped.
    """
    if len(ring) < 4 or tuple(ring[0]) != tuple(ring[-1]):
        raise DegenerateRing("triangulate expects a closed ring of >= 3 distinct vertices")
    points = [tuple(p) for p in ring[:-1]]
    area = _shoelace(points)
    if area == 0.0:
        raise DegenerateRing("ring has zero area")

    order = list(range(len(points)))
    if area < 0.0:          # normalize traversal to counterclockwise
        order.reverse()

    def cross_at(prev_i: int, cur_i: int, next_i: int) -> float:
        ax, ay = points[prev_i]
        bx, by = points[cur_i]
        cx, cy = points[next_i]
        return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)

    def is_ear(idx: int, allow_flat: bool) -> bool:
        prev_i = order[idx - 1]
        cur_i = order[idx]
        next_i = order[(idx + 1) % len(order)]
        c = cross_at(prev_i, cur_i, next_i)
        if c < 0.0 or (c == 0.0 and not allow_flat):
            return False
        ax, ay = points[prev_i]
        bx, by = points[cur_i]
        cx, cy = points[next_i]
        for other in order:
            if other in (prev_i, cur_i, next_i):
                continue
            ox, oy = points[other]
            if (ox, oy) in ((ax, ay), (bx, by), (cx, cy)):
                continue
            if _point_in_triangle(ox, oy, ax, ay, bx, by, cx, cy):
                return False
        return True

    triangles: list[tuple[int, int, int]] = []
    while len(order) > 3:
        clipped = False
        for allow_flat in (False, True):
            for idx in range(len(order)):
                if is_ear(idx, allow_flat):
                    prev_i = order[idx - 1]
                    cur_i = order[idx]
                    next_i = order[(idx + 1) % len(order)]
                    triangles.append((prev_i, cur_i, next_i))
                    del order[idx]
                    clipped = True
                    break
            if clipped:
                break
        if not clipped:
            raise SelfIntersecting("no ear found; ring is likely self-intersecting")
    triangles.append((order[0], order[1], order[2]))
    return triangles


@dataclass(frozen=True)
class Mesh:
    vertices: tuple[XYZ, ...]
    triangles: tuple[tuple[int, int, int], ...]
    color: RGBA


@dataclass(frozen=True)
class Polyline3D:
    positions: tuple[XYZ, ...]
    color: RGBA
    width: float


@dataclass(frozen=True)
class Billboard:
    position: XYZ
    icon_ref: str
    color: RGBA

    def __post_init__(self):
        if not self.icon_ref:
            raise ValueError("billboard icon_ref must be non-empty")


@dataclass(frozen=True)
class SceneNode:
    feature_id: str
    category_id: str
    kind: str
    meshes: tuple[Mesh, ...] = ()
    paths: tuple[Polyline3D, ...] = ()
    billboards: tuple[Billboard, ...] = ()
    height_m: Optional[float] = None


@dataclass(frozen=True)
class Scene:
    origin: LonLat
    meters_per_degree: float
    nodes: tuple[SceneNode, ...]
    warnings: tuple[str, ...] = ()


def extrude_polygon(ring: Sequence[XY], height_m: float, style: RenderStyle) -> Mesh:
    """Extrude a closed local-plane ring into a prism (or a flat cap at height 0).

    The mesh is closed and consistently wound: bottom cap faces down, top cap
    up, one quad per ring edge. Color is the style fill with effective alpha.
    """
    if height_m < 0:
        raise ValueError(f"height_m must be >= 0, got {height_m}")
    cap = triangulate(ring)
    points = [tuple(p) for p in ring[:-1]]
    n = len(points)
    color = style.fill

    if height_m == 0.0:
        vertices = tuple((x, y, 0.0) for x, y in points)
        return Mesh(vertices=vertices, triangles=tuple(cap), color=color)

    ccw = _shoelace(points) > 0.0
    bottom = [(x, y, 0.0) for x, y in points]
    top = [(x, y, float(height_m)) for x, y in points]
    vertices = tuple(bottom + top)

    triangles: list[tuple[int, int, int]] = []
    for i, j, k in cap:                       # bottom cap, downward normals
        triangles.append((i, k, j))
    for i, j, k in cap:                       # top cap, upward normals
        triangles.append((i + n, j + n, k + n))
    for i in range(n):                        # one quad per edge, outward normals
        j = (i + 1) % n
        if ccw:
            triangles.append((i, j, j + n))
            triangles.append((i, j + n, i + n))
        else:
            triangles.append((j, i, i + n))
            triangles.append((j, i + n, j + n))
    return Mesh(vertices=vertices, triangles=tuple(triangles), color=color)


class LocalPlane:
    """Equirectangular lon/lat to meters about a fixed origin."""

    def __init__(self, origin: LonLat):
        self.origin = origin
        self._coslat = cos(radians(origin.lat))

    def to_xy(self, p: LonLat) -> XY:
        return ((p.lon - self.origin.lon) * self._coslat * METERS_PER_DEGREE,
                (p.lat - self.origin.lat) * METERS_PER_DEGREE)


def _feature_height(feature: Feature, ontology: Ontology) -> float:
    if feature.height_m is not None:
        return feature.height_m
    default = ontology.get(feature.category_id).default_height_m
    return float(default) if default is not None else 0.0


def _polygon_node(feature: Feature, style: RenderStyle, plane: LocalPlane,
                  ontology: Ontology, warnings: list[str]) -> SceneNode:
    if isinstance(feature.geometry, MultiPolygon):
        polys = list(feature.geometry.polygons)
    else:
        polys = [feature.geometry]
    height = _feature_height(feature, ontology)
    meshes = []
    for poly in polys:
        if poly.holes:
            message = f"feature {feature.id}: polygon holes dropped in 3D"
            warnings.append(message)
            logger.warning(message)
        ring_xy = [plane.to_xy(p) for p in poly.outer]
        meshes.append(extrude_polygon(ring_xy, height, style))
    return SceneNode(feature_id=feature.id, category_id=feature.category_id,
                     kind=MESH_NODE, meshes=tuple(meshes), height_m=height)


def _polyline_node(feature: Feature, style: RenderStyle, plane: LocalPlane) -> SceneNode:
    if isinstance(feature.geometry, MultiLineString):
        lines = list(feature.geometry.lines)
    else:
        lines = [feature.geometry.points]
    paths = tuple(
        Polyline3D(positions=tuple((x, y, 0.0) for x, y in (plane.to_xy(p) for p in line)),
                   color=style.stroke, width=style.stroke_width)
        for line in lines)
    return SceneNode(feature_id=feature.id, category_id=feature.category_id,
                     kind=POLYLINE, paths=paths)


def _billboard_node(feature: Feature, style: RenderStyle, plane: LocalPlane,
                    icons: IconRegistry) -> SceneNode:
    if isinstance(feature.geometry, MultiPoint):
        anchors = list(feature.geometry.points)
    elif isinstance(feature.geometry, Point):
        anchors = [feature.geometry.position]
    else:
        anchors = [feature_anchor_point(feature)]
    icon_ref = icons.resolve(style.icon_id)
    billboards = tuple(
        Billboard(position=(*plane.to_xy(a), 0.0), icon_ref=icon_ref, color=style.fill)
        for a in anchors)
    return SceneNode(feature_id=feature.id, category_id=feature.category_id,
                     kind=BILLBOARD, billboards=billboards)


def build_scene(features: list[Feature], view_state: ViewState,
                ontology: Ontology, icon_registry: Optional[IconRegistry] = None) -> Scene:
    """Build the deterministic 3D scene for the visible features."""
    if view_state.mode != MODE_3D:
        raise WrongMode("build_scene requires a 3D view state")
    icons = icon_registry or IconRegistry()
    origin = view_state.bbox.center
    plane = LocalPlane(origin)
    warnings: list[str] = []
    nodes = []
    for feature in sorted(features, key=lambda f: f.id):
        style = resolve_style(feature, view_state, ontology)
        if style is None:
            continue
        kind = classify(feature)
        if kind == POLYGON:
            nodes.append(_polygon_node(feature, style, plane, ontology, warnings))
        elif kind == POLYLINE:
            nodes.append(_polyline_node(feature, style, plane))
        else:
            nodes.append(_billboard_node(feature, style, plane, icons))
    return Scene(origin=origin, meters_per_degree=METERS_PER_DEGREE,
                 nodes=tuple(nodes), warnings=tuple(warnings))


def _flatten(seq) -> list[float]:
    return [float(v) for item in seq for v in item]


def scene_to_dict(scene: Scene) -> dict:
    """JSON-ready dict with stable key order (documented in the README)."""
    nodes = []
    for node in scene.nodes:
        out: dict = {"feature_id": node.feature_id, "category_id": node.category_id,
                     "kind": node.kind}
        if node.kind == MESH_NODE:
            out["height_m"] = node.height_m
            out["meshes"] = [{
                "vertices": _flatten(m.vertices),
                "triangles": [i for tri in m.triangles for i in tri],
                "color": list(m.color),
            } for m in node.meshes]
        elif node.kind == POLYLINE:
            out["paths"] = [{
                "positions": _flatten(p.positions),
                "color": list(p.color),
                "width": p.width,
            } for p in node.paths]
        else:
            out["billboards"] = [{
                "position": list(b.position),
                "icon_ref": b.icon_ref,
                "color": list(b.color),
            } for b in node.billboards]
        nodes.append(out)
    return {
        "origin": [scene.origin.lon, scene.origin.lat],
        "meters_per_degree": scene.meters_per_degree,
        "nodes": nodes,
        "warnings": list(scene.warnings),
    }


def scene_to_json(scene: Scene) -> str:
    return json.dumps(scene_to_dict(scene), indent=2) + "\n"
