"""RFC 7946 GeoJSON ingestion and serialization.

Input must be a FeatureCollection; coordinates are WGS84 lon/lat order.
Property keys ``category``, ``name``, ``description``, ``height_m`` and
``anchor`` are reserved: ``category`` types the feature, ``anchor`` places
geometry-less features, ``height_m`` drives 3D extrusion.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from vividmap.errors import (
    GeometryValidationError,
    InvalidGeometry,
    MalformedJson,
    MissingCategory,
    NotAFeatureCollection,
)
from vividmap.geomodel.types import (
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
)

GEOMETRY_TYPES = ("Point", "MultiPoint", "LineString", "MultiLineString",
                  "Polygon", "MultiPolygon")


def _position(raw: Any) -> LonLat:
    if (not isinstance(raw, (list, tuple)) or len(raw) < 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw[:2])):
        raise GeometryValidationError("malformed_coordinates",
                                      f"expected [lon, lat] position, got {raw!r}")
    return LonLat(float(raw[0]), float(raw[1]))


def _positions(raw: Any) -> tuple[LonLat, ...]:
    if not isinstance(raw, (list, tuple)):
        raise GeometryValidationError("malformed_coordinates",
                                      f"expected coordinate array, got {raw!r}")
    return tuple(_position(p) for p in raw)


def geometry_from_geojson(raw: Any) -> Geometry:
    """Build a validated Geometry from a GeoJSON geometry object."""
    if not isinstance(raw, dict):
        raise GeometryValidationError("malformed_coordinates",
                                      f"geometry must be an object, got {raw!r}")
    gtype = raw.get("type")
    coords = raw.get("coordinates")
    if gtype == "Point":
        return Point(_position(coords))
    if gtype == "MultiPoint":
        return MultiPoint(_positions(coords))
    if gtype == "LineString":
        return LineString(_positions(coords))
    if gtype == "MultiLineString":
        if not isinstance(coords, (list, tuple)):
            raise GeometryValidationError("malformed_coordinates",
                                          "MultiLineString coordinates must be an array")
        return MultiLineString(tuple(_positions(line) for line in coords))
    if gtype == "Polygon":
        if not isinstance(coords, (list, tuple)):
            raise GeometryValidationError("malformed_coordinates",
                                          "Polygon coordinates must be an array")
        return Polygon(tuple(_positions(ring) for ring in coords))
    if gtype == "MultiPolygon":
        if not isinstance(coords, (list, tuple)):
            raise GeometryValidationError("malformed_coordinates",
                                          "MultiPolygon coordinates must be an array")
        return MultiPolygon(tuple(
            Polygon(tuple(_positions(ring) for ring in poly)) for poly in coords))
    raise GeometryValidationError("unsupported_geometry_type",
                                  f"unsupported geometry type {gtype!r}")


def geometry_to_geojson(geometry: Geometry) -> dict:
    def pos(p: LonLat):
        return [p.lon, p.lat]

    if isinstance(geometry, Point):
        return {"type": "Point", "coordinates": pos(geometry.position)}
    if isinstance(geometry, MultiPoint):
        return {"type": "MultiPoint", "coordinates": [pos(p) for p in geometry.points]}
    if isinstance(geometry, LineString):
        return {"type": "LineString", "coordinates": [pos(p) for p in geometry.points]}
    if isinstance(geometry, MultiLineString):
        return {"type": "MultiLineString",
                "coordinates": [[pos(p) for p in line] for line in geometry.lines]}
    if isinstance(geometry, Polygon):
        return {"type": "Polygon",
                "coordinates": [[pos(p) for p in ring] for ring in geometry.rings]}
    if isinstance(geometry, MultiPolygon):
        return {"type": "MultiPolygon",
                "coordinates": [[[pos(p) for p in ring] for ring in poly.rings]
                                for poly in geometry.polygons]}
    raise TypeError(f"not a geometry: {geometry!r}")


def _parse_properties(raw: Any, index: int) -> dict:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise InvalidGeometry(index, "malformed_properties", "properties must be an object or null")
    props = dict(raw)
    if "anchor" in props and props["anchor"] is not None:
        try:
            props["anchor"] = _position(props["anchor"])
        except GeometryValidationError as exc:
            raise InvalidGeometry(index, "bad_anchor", f"bad anchor: {exc.message}") from exc
    return props


def parse_feature_collection(text: str) -> list[Feature]:
    """Parse a GeoJSON FeatureCollection into validated features.

    Feature ids come from the GeoJSON ``id`` member, or are synthesized as
    ``f<ordinal>`` from the feature's position in the collection.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or doc.get("type") != "FeatureCollection":
        raise NotAFeatureCollection('expected {"type": "FeatureCollection", ...}')
    raw_features = doc.get("features")
    if not isinstance(raw_features, list):
        raise NotAFeatureCollection('FeatureCollection must carry a "features" array')

    features: list[Feature] = []
    for index, raw in enumerate(raw_features):
        if not isinstance(raw, dict) or raw.get("type") != "Feature":
            raise InvalidGeometry(index, "not_a_feature", f"features[{index}] is not a Feature")
        props = _parse_properties(raw.get("properties"), index)
        category = props.pop("category", None)
        if not category or not isinstance(category, str):
            raise MissingCategory(index)
        raw_geometry = raw.get("geometry")
        geometry: Optional[Geometry] = None
        if raw_geometry is not None:
            try:
                geometry = geometry_from_geojson(raw_geometry)
            except GeometryValidationError as exc:
                raise InvalidGeometry(index, exc.reason, exc.message) from exc
        fid = raw.get("id")
        fid = str(fid) if fid is not None else f"f{index}"
        try:
            features.append(Feature(id=fid, category_id=category,
                                    geometry=geometry, properties=props))
        except GeometryValidationError as exc:
            raise InvalidGeometry(index, exc.reason, exc.message) from exc
    return features


def feature_to_geojson(feature: Feature) -> dict:
    props: dict = {"category": feature.category_id}
    for key, value in feature.properties.items():
        props[key] = [value.lon, value.lat] if isinstance(value, LonLat) else value
    return {
        "type": "Feature",
        "id": feature.id,
        "geometry": geometry_to_geojson(feature.geometry) if feature.geometry else None,
        "properties": props,
    }


def feature_collection_to_geojson(features: list[Feature]) -> dict:
    return {"type": "FeatureCollection",
            "features": [feature_to_geojson(f) for f in features]}


def parse_region_ring(raw: Any) -> Region:
    """Build a Region from a JSON ring ``[[lon, lat], ...]`` (already decoded)."""
    try:
        return Region(_positions(raw))
    except GeometryValidationError as exc:
        raise GeometryValidationError(exc.reason, f"bad region ring: {exc.message}") from exc
