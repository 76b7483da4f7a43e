"""GeoJSON data model, validation and geometry predicates."""

from vividmap.geomodel.geojson import (
    feature_collection_to_geojson,
    feature_to_geojson,
    geometry_from_geojson,
    geometry_to_geojson,
    parse_feature_collection,
    parse_region_ring,
)
from vividmap.geomodel.predicates import (
    bounding_box,
    feature_anchor_point,
    feature_bbox,
    feature_intersects,
    intersects,
    point_in_polygon,
    point_in_polygon_with_holes,
    representative_point,
    segments_intersect,
)
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
    ring_area,
)

__all__ = [
    "Bbox", "Feature", "Geometry", "LineString", "LonLat", "MultiLineString",
    "MultiPoint", "MultiPolygon", "Point", "Polygon", "Region", "ring_area",
    "bounding_box", "feature_anchor_point", "feature_bbox", "feature_intersects",
    "intersects", "point_in_polygon", "point_in_polygon_with_holes",
    "representative_point", "segments_intersect",
    "parse_feature_collection", "parse_region_ring",
    "feature_collection_to_geojson", "feature_to_geojson",
    "geometry_from_geojson", "geometry_to_geojson",
]
