"""Pydantic request/response models for the HTTP API."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

# bbox on the wire is [west, south, east, north]
BboxWire = list[float]
# viewport on the wire is [width, height]
ViewportWire = list[int]


class ErrorBody(BaseModel):
    code: str
    message: str


class ServiceInfo(BaseModel):
    name: str
    version: str


class CategoryOut(BaseModel):
    id: str
    label: str
    color: list[int]                      # resolved RGB, 0-255
    icon_id: Optional[str] = None
    parent_id: Optional[str] = None
    default_height_m: Optional[float] = None


class OntologyOut(BaseModel):
    categories: list[CategoryOut]


class DatasetCreated(BaseModel):
    dataset_id: str
    feature_count: int
    categories_present: list[str]


class DatasetInfo(BaseModel):
    dataset_id: str
    feature_count: int
    categories_present: list[str]
    bbox: Optional[BboxWire] = None


class SessionCreate(BaseModel):
    dataset_id: str
    mode: Literal["2D", "3D"] = "2D"
    bbox: BboxWire = Field(min_length=4, max_length=4)
    viewport: ViewportWire = Field(min_length=2, max_length=2)


class SessionCreated(BaseModel):
    session_id: str


class SessionState(BaseModel):
    session_id: str
    dataset_id: str
    mode: str
    bbox: BboxWire
    viewport: ViewportWire
    opacity: dict[str, float]
    visible: list[str]
    annotations: list[list[list[float]]]


class OpacityUpdate(BaseModel):
    category_id: str
    alpha: float


class OpacityState(BaseModel):
    session_id: str
    opacity: dict[str, float]


class VisibilityUpdate(BaseModel):
    category_id: str
    visible: bool


class VisibilityState(BaseModel):
    session_id: str
    visible: list[str]


class ViewUpdate(BaseModel):
    bbox: Optional[BboxWire] = Field(default=None, min_length=4, max_length=4)
    viewport: Optional[ViewportWire] = Field(default=None, min_length=2, max_length=2)
    mode: Optional[Literal["2D", "3D"]] = None


class AnnotationsUpdate(BaseModel):
    rings: list[list[list[float]]]


class CountResponse(BaseModel):
    count: int


class SearchHit(BaseModel):
    feature_id: str
    name: str
    category_id: str
    anchor: list[float]                   # [lon, lat] representative point
    bbox: BboxWire


class SearchResponse(BaseModel):
    results: list[SearchHit]


class DetailResponse(BaseModel):
    feature_id: str
    rows: list[list[str]]                 # [key, value] pairs, name first


class HitResponse(BaseModel):
    feature_id: Optional[str]
