"""Core geographic value types: positions, geometries, features, boxes.

All types are immutable after construction and validate their invariants in
``__post_init__``. Construction failures raise
:class:`~vividmap.errors.GeometryValidationError` with a machine-readable
reason slug; the GeoJSON parser turns those into per-feature errors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

from vividmap.errors import GeometryValidationError

Ring = tuple["LonLat", ...]


def _check(cond: bool, reason: str, message: str) -> None:
    if not cond:
        raise GeometryValidationError(reason, message)


@dataclass(frozen=True)
class LonLat:
    """WGS84 position, longitude/latitude in degrees."""

    lon: float
    lat: float

    def __post_init__(self):
        _check(isinstance(self.lon, (int, float)) and isinstance(self.lat, (int, float))
               and math.isfinite(self.lon) and math.isfinite(self.lat),
               "malformed_coordinates", f"coordinates must be finite numbers, got {self.lon!r},{self.lat!r}")
        _check(-180.0 <= self.lon <= 180.0, "coordinate_out_of_range",
               f"longitude {self.lon} outside [-180, 180]")
        _check(-90.0 <= self.lat <= 90.0, "coordinate_out_of_range",
               f"latitude {self.lat} outside [-90, 90]")


def _check_ring(ring: Ring) -> None:
    _check(len(ring) >= 4, "too_few_points",
           f"ring needs at least 4 points (closed), got {len(ring)}")
    _check(ring[0] == ring[-1], "ring_not_closed",
           "ring not closed: first point must equal last")
    for a, b in zip(ring, ring[1:]):
        _check(a != b, "repeated_point", f"ring contains repeated consecutive point {a.lon},{a.lat}")


@dataclass(frozen=True)
class Point:
    position: LonLat


@dataclass(frozen=True)
class MultiPoint:
    points: tuple[LonLat, ...]

    def __post_init__(self):
        _check(len(self.points) >= 1, "too_few_points", "MultiPoint needs at least one point")


@dataclass(frozen=True)
class LineString:
    points: tuple[LonLat, ...]

    def __post_init__(self):
        _check(len(self.points) >= 2, "too_few_points",
               f"LineString needs at least 2 points, got {len(self.points)}")


@dataclass(frozen=True)
class MultiLineString:
    lines: tuple[tuple[LonLat, ...], ...]

    def __post_init__(self):
        _check(len(self.lines) >= 1, "too_few_points", "MultiLineString needs at least one line")
        for line in self.lines:
            _check(len(line) >= 2, "too_few_points",
                   f"LineString needs at least 2 points, got {len(line)}")


@dataclass(frozen=True)
class Polygon:
    """rings[0] is the outer ring, the rest are holes."""

    rings: tuple[Ring, ...]

    def __post_init__(self):
        _check(len(self.rings) >= 1, "too_few_points", "Polygon needs an outer ring")
        for ring in self.rings:
            _check_ring(ring)

    @property
    def outer(self) -> Ring:
        return self.rings[0]

    @property
    def holes(self) -> tuple[Ring, ...]:
        return self.rings[1:]


@dataclass(frozen=True)
class MultiPolygon:
    polygons: tuple[Polygon, ...]

    def __post_init__(self):
        _check(len(self.polygons) >= 1, "too_few_points", "MultiPolygon needs at least one polygon")


Geometry = Union[Point, MultiPoint, LineString, MultiLineString, Polygon, MultiPolygon]


@dataclass(frozen=True)
class Bbox:
    """Axis-aligned lon/lat box. Antimeridian-crossing boxes are rejected."""

    min: LonLat
    max: LonLat

    def __post_init__(self):
        _check(self.min.lon <= self.max.lon and self.min.lat <= self.max.lat,
               "bad_bbox",
               "bbox min must be <= max on both axes (antimeridian-crossing boxes not supported)")

    def intersects(self, other: "Bbox") -> bool:
        return (self.min.lon <= other.max.lon and self.max.lon >= other.min.lon
                and self.min.lat <= other.max.lat and self.max.lat >= other.min.lat)

    def contains(self, p: LonLat) -> bool:
        return (self.min.lon <= p.lon <= self.max.lon
                and self.min.lat <= p.lat <= self.max.lat)

    def union(self, other: "Bbox") -> "Bbox":
        return Bbox(
            LonLat(min(self.min.lon, other.min.lon), min(self.min.lat, other.min.lat)),
            LonLat(max(self.max.lon, other.max.lon), max(self.max.lat, other.max.lat)),
        )

    @property
    def center(self) -> LonLat:
        return LonLat((self.min.lon + self.max.lon) / 2.0, (self.min.lat + self.max.lat) / 2.0)

    def span(self) -> tuple[float, float]:
        return (self.max.lon - self.min.lon, self.max.lat - self.min.lat)

    def as_ring(self) -> Ring:
        """Closed counterclockwise ring tracing the box edge."""
        w, s, e, n = self.min.lon, self.min.lat, self.max.lon, self.max.lat
        return (LonLat(w, s), LonLat(e, s), LonLat(e, n), LonLat(w, n), LonLat(w, s))


def ring_area(ring: Ring) -> float:
    """Signed shoelace area in degree^2 (positive for counterclockwise rings)."""
    total = 0.0
    for a, b in zip(ring, ring[1:]):
        total += a.lon * b.lat - b.lon * a.lat
    return total / 2.0


@dataclass(frozen=True)
class Region:
    """A single closed analysis ring, e.g. the orange annotation line."""

    ring: Ring

    def __post_init__(self):
        _check_ring(self.ring)
        _check(ring_area(self.ring) != 0.0, "degenerate_ring", "region ring has zero area")


RESERVED_PROPERTIES = ("category", "name", "description", "height_m", "anchor")


@dataclass(frozen=True)
class Feature:
    """One result item: typed, optionally geometry-less (then anchored)."""

    id: str
    category_id: str
    geometry: Optional[Geometry]
    properties: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.geometry is None:
            anchor = self.properties.get("anchor")
            _check(isinstance(anchor, LonLat), "no_geometry_or_anchor",
                   "feature without geometry must carry an 'anchor' property")
        height = self.properties.get("height_m")
        if height is not None:
            _check(isinstance(height, (int, float)) and not isinstance(height, bool)
                   and math.isfinite(height) and height >= 0,
                   "bad_height", f"height_m must be a non-negative number, got {height!r}")

    @property
    def anchor(self) -> Optional[LonLat]:
        return self.properties.get("anchor")

    @property
    def height_m(self) -> Optional[float]:
        h = self.properties.get("height_m")
        return float(h) if h is not None else None
