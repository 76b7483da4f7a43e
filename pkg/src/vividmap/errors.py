"""Exception hierarchy shared by all vividmap modules.

Every error carries a machine-readable ``code`` slug so the HTTP layer and
the CLI can emit structured errors without string matching.
"""

from __future__ import annotations


class VividmapError(Exception):
    """Base class. ``code`` is a stable machine-readable slug."""

    code = "error"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail

    def payload(self) -> dict:
        out = {"code": self.code, "message": self.message}
        out.update({k: v for k, v in self.detail.items() if v is not None})
        return out


# --- GeoJSON / geometry ----------------------------------------------------

class MalformedJson(VividmapError):
    code = "malformed_json"


class NotAFeatureCollection(VividmapError):
    code = "not_a_feature_collection"


class GeometryValidationError(ValueError):
    """Raised by geometry constructors; ``reason`` is a machine slug.

    The parser catches this and rewraps it as :class:`InvalidGeometry`
    with the offending feature index attached.
    """

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason
        self.message = message


class InvalidGeometry(VividmapError):
    def __init__(self, feature_index: int, reason: str, message: str):
        super().__init__(message, feature_index=feature_index)
        self.feature_index = feature_index
        self.reason = reason
        self.code = reason  # e.g. "ring_not_closed"


class MissingCategory(VividmapError):
    code = "missing_category"

    def __init__(self, feature_index: int):
        super().__init__(
            f"feature {feature_index} has no 'category' property",
            feature_index=feature_index,
        )
        self.feature_index = feature_index


# --- ontology config -------------------------------------------------------

class OntologyConfigError(VividmapError):
    code = "bad_ontology_config"


class DuplicateCategoryId(OntologyConfigError):
    code = "duplicate_category_id"


class UnknownParent(OntologyConfigError):
    code = "unknown_parent"


class CyclicHierarchy(OntologyConfigError):
    code = "cyclic_hierarchy"


class BadColor(OntologyConfigError):
    code = "bad_color"


# --- catalog ---------------------------------------------------------------

class UnknownCategory(VividmapError):
    code = "unknown_category"


class DuplicateFeatureId(VividmapError):
    code = "duplicate_feature_id"


class UnknownFeature(VividmapError):
    code = "unknown_feature"


class OutsideView(VividmapError):
    code = "outside_view"


# --- style -----------------------------------------------------------------

class AlphaOutOfRange(VividmapError):
    code = "alpha_out_of_range"


class WrongMode(VividmapError):
    code = "wrong_mode"


# --- rendering -------------------------------------------------------------

class DegenerateBbox(VividmapError):
    code = "degenerate_bbox"


class DegenerateRing(VividmapError):
    code = "degenerate_ring"


class SelfIntersecting(VividmapError):
    code = "self_intersecting"


# --- service ---------------------------------------------------------------

class UnknownDataset(VividmapError):
    code = "unknown_dataset"


class UnknownSession(VividmapError):
    code = "unknown_session"


class BadRegion(VividmapError):
    code = "bad_region"


class BadBbox(VividmapError):
    code = "bad_bbox"
