"""Dataset ingestion, spatial indexing and the query operations.

Datasets are immutable after ingest and indexed with a uniform 32x32 grid
over the dataset extent - plenty for search-result-sized collections, and
fully deterministic. Every operation returns identical output for identical
input; result lists are sorted by feature id.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Optional

from vividmap.errors import (
    DuplicateFeatureId,
    OutsideView,
    UnknownCategory,
    UnknownFeature,
)
from vividmap.geomodel.predicates import (
    feature_anchor_point,
    feature_bbox,
    feature_intersects,
    point_in_polygon_with_holes,
)
from vividmap.geomodel.types import (
    Bbox,
    Feature,
    LonLat,
    MultiLineString,
    MultiPoint,
    MultiPolygon,
    Point,
    Region,
)
from vividmap.ontology import Ontology
from vividmap.render2d import Projector
from vividmap.style import Z_LINE, Z_POINT, Z_POLYGON, ViewState, _geometry_class

GRID_CELLS = 32

MARKER_HIT_RADIUS_PX = 12.0
LINE_HIT_TOLERANCE_PX = 4.0

DetailTable = list[tuple[str, str]]


@dataclass
class Dataset:
    """Immutable-after-ingest feature store with a uniform spatial grid."""

    id: str
    features: list[Feature]
    ontology: Ontology
    by_id: dict = field(default_factory=dict)
    bbox: Optional[Bbox] = None
    _fbox: dict = field(default_factory=dict)          # feature id -> Bbox
    _grid: dict = field(default_factory=dict)          # (ix, iy) -> [feature ids]

    @property
    def categories_present(self) -> list[str]:
        return sorted({f.category_id for f in self.features})

    def _cell_range(self, box: Bbox) -> tuple[range, range]:
        (w, s), (e, n) = (self.bbox.min.lon, self.bbox.min.lat), (self.bbox.max.lon, self.bbox.max.lat)
        lon_span = e - w
        lat_span = n - s

        def axis(lo: float, hi: float, origin: float, span: float) -> range:
            if span <= 0.0:
                return range(0, 1)
            cell = span / GRID_CELLS
            i0 = int(math.floor((lo - origin) / cell))
            i1 = int(math.floor((hi - origin) / cell))
            i0 = min(max(i0, 0), GRID_CELLS - 1)
            i1 = min(max(i1, 0), GRID_CELLS - 1)
            return range(i0, i1 + 1)

        return axis(box.min.lon, box.max.lon, w, lon_span), axis(box.min.lat, box.max.lat, s, lat_span)


def ingest(features: list[Feature], ontology: Ontology,
           dataset_id: Optional[str] = None) -> Dataset:
    """Validate categories, build the spatial grid and freeze the dataset."""
    by_id: dict[str, Feature] = {}
    for feature in features:
        if feature.category_id not in ontology:
            raise UnknownCategory(
                f"feature {feature.id!r} has unknown category {feature.category_id!r}",
                feature_id=feature.id)
        if feature.id in by_id:
            raise DuplicateFeatureId(f"duplicate feature id {feature.id!r}",
                                     feature_id=feature.id)
        by_id[feature.id] = feature

    if dataset_id is None:
        digest = hashlib.sha256("\n".join(sorted(by_id)).encode()).hexdigest()
        dataset_id = f"ds-{digest[:8]}"

    dataset = Dataset(id=dataset_id, features=list(features), ontology=ontology, by_id=by_id)
    if features:
        boxes = {f.id: feature_bbox(f) for f in features}
        dataset._fbox = boxes
        bbox = None
        for box in boxes.values():
            bbox = box if bbox is None else bbox.union(box)
        dataset.bbox = bbox
        for feature in features:
            xs, ys = dataset._cell_range(boxes[feature.id])
            for ix in xs:
                for iy in ys:
                    dataset._grid.setdefault((ix, iy), []).append(feature.id)
    return dataset


def query(dataset: Dataset, bbox: Bbox, categories: set[str] = frozenset()) -> list[Feature]:
    """Features whose bbox overlaps the query box, filtered by category.

    An empty category set means all categories; unknown ids in the filter
    simply match nothing. Results are sorted by feature id.
    """
    if not dataset.features or dataset.bbox is None:
        return []
    if not dataset.bbox.intersects(bbox):
        return []
    xs, ys = dataset._cell_range(bbox)
    candidates: set[str] = set()
    for ix in xs:
        for iy in ys:
            candidates.update(dataset._grid.get((ix, iy), ()))
    out = []
    for fid in candidates:
        feature = dataset.by_id[fid]
        if categories and feature.category_id not in categories:
            continue
        if dataset._fbox[fid].intersects(bbox):
            out.append(feature)
    out.sort(key=lambda f: f.id)
    return out


def count_in_region(dataset: Dataset, region: Region, category_id: str) -> int:
    """How many features of one category overlap the analysis region."""
    dataset.ontology.get(category_id)  # raises UnknownCategory
    return sum(1 for f in dataset.features
               if f.category_id == category_id and feature_intersects(f, region))


def search(dataset: Dataset, text: str) -> list[Feature]:
    """Case-insensitive substring match on the ``name`` property."""
    if not text:
        return []
    needle = text.lower()
    matches = [f for f in dataset.features
               if needle in str(f.properties.get("name", "")).lower()]
    matches.sort(key=lambda f: (str(f.properties.get("name", "")), f.id))
    return matches


def _stringify(value) -> str:
    if isinstance(value, LonLat):
        return f"{value.lon},{value.lat}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def feature_detail(dataset: Dataset, feature_id: str) -> DetailTable:
    """Key/value rows for the detail table: name first, then category, then the rest."""
    feature = dataset.by_id.get(feature_id)
    if feature is None:
        raise UnknownFeature(f"unknown feature {feature_id!r}", feature_id=feature_id)
    rows: DetailTable = []
    if "name" in feature.properties:
        rows.append(("name", _stringify(feature.properties["name"])))
    rows.append(("category", dataset.ontology.get(feature.category_id).label))
    for key, value in feature.properties.items():
        if key != "name":
            rows.append((key, _stringify(value)))
    return rows


def _point_segment_distance(px: float, py: float, ax: float, ay: float,
                            bx: float, by: float) -> float:
    dx, dy = bx - ax, by - ay
    if dx == 0.0 and dy == 0.0:
        return math.hypot(px - ax, py - ay)
    t = ((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)
    t = min(max(t, 0.0), 1.0)
    return math.hypot(px - (ax + t * dx), py - (ay + t * dy))


def _hit_marker(feature: Feature, p_px, proj: Projector) -> bool:
    if isinstance(feature.geometry, MultiPoint):
        anchors = list(feature.geometry.points)
    elif isinstance(feature.geometry, Point):
        anchors = [feature.geometry.position]
    else:
        anchors = [feature_anchor_point(feature)]
    for a in anchors:
        apix = proj.project(a)
        if math.hypot(p_px.x - apix.x, p_px.y - apix.y) <= MARKER_HIT_RADIUS_PX:
            return True
    return False


def _hit_line(feature: Feature, p_px, proj: Projector) -> bool:
    if isinstance(feature.geometry, MultiLineString):
        lines = list(feature.geometry.lines)
    else:
        lines = [feature.geometry.points]
    for line in lines:
        pts = [proj.project(p) for p in line]
        for a, b in zip(pts, pts[1:]):
            if _point_segment_distance(p_px.x, p_px.y, a.x, a.y, b.x, b.y) <= LINE_HIT_TOLERANCE_PX:
                return True
    return False


def _hit_polygon(feature: Feature, p: LonLat) -> bool:
    if isinstance(feature.geometry, MultiPolygon):
        polys = list(feature.geometry.polygons)
    else:
        polys = [feature.geometry]
    return any(point_in_polygon_with_holes(p, poly.rings) for poly in polys)


def hit_test(dataset: Dataset, view_state: ViewState, p: LonLat) -> Optional[str]:
    """Topmost interactive feature at a click position, or None.

    Z order is markers over lines over polygons; ties go to the greater
    feature id. Hidden categories and categories at opacity exactly 0 are
    not hittable. Marker hit radius is 12 px, line tolerance 4 px, both at
    the current viewport scale.
    """
    if not view_state.bbox.contains(p):
        raise OutsideView(f"click {p.lon},{p.lat} outside the view bbox")
    proj = Projector(view_state.bbox, view_state.viewport)
    p_px = proj.project(p)

    by_class: dict[int, list[Feature]] = {}
    for f in dataset.features:
        if view_state.is_visible(f.category_id) and view_state.category_opacity(f.category_id) > 0.0:
            by_class.setdefault(_geometry_class(f), []).append(f)
    # points over lines over polygons; within a class the greater id wins
    for klass in (Z_POINT, Z_LINE, Z_POLYGON):
        for feature in sorted(by_class.get(klass, ()), key=lambda f: f.id, reverse=True):
            if klass == Z_POINT and _hit_marker(feature, p_px, proj):
                return feature.id
            if klass == Z_LINE and _hit_line(feature, p_px, proj):
                return feature.id
            if klass == Z_POLYGON and _hit_polygon(feature, p):
                return feature.id
    return None
