"""Computational-geometry predicates over lon/lat geometries.

Conventions fixed here and relied on by the catalog and renderers:

* boundary points count as inside (keeps region counting deterministic for
  items sitting exactly on the analysis line);
* membership uses the even-odd rule;
* everything works in plain lon/lat degrees - no geodesics.
"""

from __future__ import annotations

from typing import Optional, Sequence

from vividmap.geomodel.types import (
    Bbox,
    Feature,
    Geometry,
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


def _coords(geometry: Geometry):
    """Yield every vertex of a geometry."""
    if isinstance(geometry, Point):
        yield geometry.position
    elif isinstance(geometry, MultiPoint):
        yield from geometry.points
    elif isinstance(geometry, LineString):
        yield from geometry.points
    elif isinstance(geometry, MultiLineString):
        for line in geometry.lines:
            yield from line
    elif isinstance(geometry, Polygon):
        for ring in geometry.rings:
            yield from ring
    elif isinstance(geometry, MultiPolygon):
        for poly in geometry.polygons:
            for ring in poly.rings:
                yield from ring
    else:
        raise TypeError(f"not a geometry: {geometry!r}")


def bounding_box(geometry: Geometry) -> Bbox:
    """Minimal axis-aligned lon/lat box containing all coordinates."""
    lons = []
    lats = []
    for p in _coords(geometry):
        lons.append(p.lon)
        lats.append(p.lat)
    return Bbox(LonLat(min(lons), min(lats)), LonLat(max(lons), max(lats)))


def feature_bbox(feature: Feature) -> Bbox:
    """Geometry bbox, or the degenerate box at the anchor for marker-only features."""
    if feature.geometry is not None:
        return bounding_box(feature.geometry)
    a = feature.anchor
    return Bbox(a, a)


def _cross(o: LonLat, a: LonLat, b: LonLat) -> float:
    return (a.lon - o.lon) * (b.lat - o.lat) - (a.lat - o.lat) * (b.lon - o.lon)


def point_on_segment(p: LonLat, a: LonLat, b: LonLat) -> bool:
    if _cross(a, b, p) != 0.0:
        return False
    return (min(a.lon, b.lon) <= p.lon <= max(a.lon, b.lon)
            and min(a.lat, b.lat) <= p.lat <= max(a.lat, b.lat))


def point_in_polygon(p: LonLat, ring: Ring) -> bool:
    """Even-odd containment test against a closed ring; boundary is inside."""
    for a, b in zip(ring, ring[1:]):
        if point_on_segment(p, a, b):
            return True
    inside = False
    for a, b in zip(ring, ring[1:]):
        if (a.lat > p.lat) != (b.lat > p.lat):
            x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat)
            if p.lon < x:
                inside = not inside
    return inside


def point_in_polygon_with_holes(p: LonLat, rings: Sequence[Ring]) -> bool:
    """Even-odd over every ring: inside the outer ring but not inside a hole.

    A point on any ring boundary (outer or hole edge) counts as inside.
    """
    crossings = 0
    for ring in rings:
        for a, b in zip(ring, ring[1:]):
            if point_on_segment(p, a, b):
                return True
            if (a.lat > p.lat) != (b.lat > p.lat):
                x = a.lon + (p.lat - a.lat) * (b.lon - a.lon) / (b.lat - a.lat)
                if p.lon < x:
                    crossings += 1
    return crossings % 2 == 1


def segments_intersect(p1: LonLat, p2: LonLat, p3: LonLat, p4: LonLat) -> bool:
    """True iff closed segments p1p2 and p3p4 share at least one point."""
    d1 = _cross(p3, p4, p1)
    d2 = _cross(p3, p4, p2)
    d3 = _cross(p1, p2, p3)
    d4 = _cross(p1, p2, p4)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
       ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    if d1 == 0 and point_on_segment(p1, p3, p4):
        return True
    if d2 == 0 and point_on_segment(p2, p3, p4):
        return True
    if d3 == 0 and point_on_segment(p3, p1, p2):
        return True
    if d4 == 0 and point_on_segment(p4, p1, p2):
        return True
    return False


def _ring_edges(ring: Ring):
    return zip(ring, ring[1:])


def _line_intersects_ring(points: Sequence[LonLat], ring: Ring) -> bool:
    for p in points:
        if point_in_polygon(p, ring):
            return True
    for a, b in zip(points, points[1:]):
        for c, d in _ring_edges(ring):
            if segments_intersect(a, b, c, d):
                return True
    return False


def _polygon_intersects_ring(polygon: Polygon, ring: Ring) -> bool:
    # edge crossing against any polygon ring (holes are boundary too)
    for pring in polygon.rings:
        for a, b in _ring_edges(pring):
            for c, d in _ring_edges(ring):
                if segments_intersect(a, b, c, d):
                    return True
    # polygon contained in region
    for p in polygon.outer:
        if point_in_polygon(p, ring):
            return True
    # region contained in polygon (hole-aware: a region strictly inside a
    # hole shares no point with the polygon)
    for p in ring:
        if point_in_polygon_with_holes(p, polygon.rings):
            return True
    return False


def intersects(geometry: Geometry, region: Region) -> bool:
    """True iff the geometry and the region share at least one point."""
    ring = region.ring
    rbox = Bbox(
        LonLat(min(p.lon for p in ring), min(p.lat for p in ring)),
        LonLat(max(p.lon for p in ring), max(p.lat for p in ring)),
    )
    if not bounding_box(geometry).intersects(rbox):
        return False
    if isinstance(geometry, Point):
        return point_in_polygon(geometry.position, ring)
    if isinstance(geometry, MultiPoint):
        return any(point_in_polygon(p, ring) for p in geometry.points)
    if isinstance(geometry, LineString):
        return _line_intersects_ring(geometry.points, ring)
    if isinstance(geometry, MultiLineString):
        return any(_line_intersects_ring(line, ring) for line in geometry.lines)
    if isinstance(geometry, Polygon):
        return _polygon_intersects_ring(geometry, ring)
    if isinstance(geometry, MultiPolygon):
        return any(_polygon_intersects_ring(poly, ring) for poly in geometry.polygons)
    raise TypeError(f"not a geometry: {geometry!r}")


def feature_intersects(feature: Feature, region: Region) -> bool:
    """Region membership for a feature: geometry overlap, or anchor containment."""
    if feature.geometry is not None:
        return intersects(feature.geometry, region)
    return point_in_polygon(feature.anchor, region.ring)


def _bbox_area(box: Bbox) -> float:
    w, h = box.span()
    return w * h


def representative_point(geometry: Geometry) -> LonLat:
    """Stable point used for marker anchoring and labeling.

    Points map to themselves, lines to their middle vertex, polygons to the
    outer-ring vertex average when that falls inside the ring (first vertex
    otherwise), multi-geometries to the representative of their largest part.
    """
    if isinstance(geometry, Point):
        return geometry.position
    if isinstance(geometry, LineString):
        return geometry.points[len(geometry.points) // 2]
    if isinstance(geometry, Polygon):
        distinct = geometry.outer[:-1]
        avg = LonLat(sum(p.lon for p in distinct) / len(distinct),
                     sum(p.lat for p in distinct) / len(distinct))
        if point_in_polygon(avg, geometry.outer):
            return avg
        return geometry.outer[0]
    if isinstance(geometry, MultiPoint):
        parts = [Point(p) for p in geometry.points]
    elif isinstance(geometry, MultiLineString):
        parts = [LineString(line) for line in geometry.lines]
    elif isinstance(geometry, MultiPolygon):
        parts = list(geometry.polygons)
    else:
        raise TypeError(f"not a geometry: {geometry!r}")
    best = parts[0]
    best_area = _bbox_area(bounding_box(best))
    for part in parts[1:]:
        area = _bbox_area(bounding_box(part))
        if area > best_area:
            best, best_area = part, area
    return representative_point(best)


def feature_anchor_point(feature: Feature) -> LonLat:
    """Where to hang a marker: the anchor property or the representative point."""
    if feature.geometry is None:
        return feature.anchor
    return representative_point(feature.geometry)
