"""HTTP facade over the catalog, style engine and renderers.

All state-reading endpoints are side-effect free; per-session mutations are
serialized. Error responses always carry ``{code, message}``.
"""

from __future__ import annotations

import json
from contextlib import asynccontextmanager
from dataclasses import replace
from typing import Optional

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from vividmap import __version__, catalog, render2d, scene3d
from vividmap.errors import (
    AlphaOutOfRange,
    BadBbox,
    BadRegion,
    DegenerateBbox,
    DegenerateRing,
    DuplicateFeatureId,
    GeometryValidationError,
    InvalidGeometry,
    MalformedJson,
    MissingCategory,
    NotAFeatureCollection,
    OntologyConfigError,
    OutsideView,
    SelfIntersecting,
    UnknownCategory,
    UnknownDataset,
    UnknownFeature,
    UnknownSession,
    VividmapError,
    WrongMode,
)
from vividmap.geomodel import (
    Bbox,
    LonLat,
    feature_bbox,
    feature_to_geojson,
    parse_feature_collection,
    parse_region_ring,
    representative_point,
)
from vividmap.ontology import Ontology
from vividmap.service import schemas
from vividmap.service.state import AppState, Settings, view_state_to_dict
from vividmap.style import (
    ViewState,
    default_view_state,
    resolve_style,
    set_opacity,
    set_visibility,
)

_STATUS = {
    MalformedJson: 400,
    NotAFeatureCollection: 400,
    InvalidGeometry: 400,
    MissingCategory: 400,
    OntologyConfigError: 400,
    DuplicateFeatureId: 400,
    BadRegion: 400,
    BadBbox: 400,
    WrongMode: 400,
    DegenerateBbox: 400,
    DegenerateRing: 400,
    SelfIntersecting: 400,
    OutsideView: 400,
    UnknownCategory: 404,
    UnknownFeature: 404,
    UnknownDataset: 404,
    UnknownSession: 404,
    AlphaOutOfRange: 422,
}


def _status_for(exc: VividmapError) -> int:
    for klass in type(exc).__mro__:
        if klass in _STATUS:
            return _STATUS[klass]
    return 400


def _parse_bbox_values(values) -> Bbox:
    try:
        w, s, e, n = (float(v) for v in values)
        return Bbox(LonLat(w, s), LonLat(e, n))
    except (TypeError, ValueError, GeometryValidationError) as exc:
        raise BadBbox(f"bad bbox: {exc}") from exc


def _parse_viewport(values) -> tuple[int, int]:
    try:
        w, h = int(values[0]), int(values[1])
    except (TypeError, ValueError, IndexError) as exc:
        raise BadBbox(f"bad viewport: {exc}") from exc
    if w < 1 or h < 1:
        raise BadBbox(f"viewport must be positive, got {values!r}")
    return (w, h)


def _full_opacity(view_state: ViewState, ontology: Ontology) -> dict[str, float]:
    return {c.id: view_state.category_opacity(c.id) for c in ontology}


def create_app(ontology: Ontology, settings: Optional[Settings] = None) -> FastAPI:
    settings = settings or Settings()
    state = AppState(ontology, settings)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        state.load_snapshot()
        yield
        state.save_snapshot()

    app = FastAPI(title="vividmap", version=__version__, lifespan=lifespan)
    app.state.vividmap = state
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(VividmapError)
    async def vividmap_error(request: Request, exc: VividmapError):
        return JSONResponse(status_code=_status_for(exc), content=exc.payload())

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=422,
                            content={"code": "validation_error", "message": str(exc.errors())})

    @app.get("/", response_model=schemas.ServiceInfo)
    def info():
        return schemas.ServiceInfo(name="vividmap", version=__version__)

    @app.get("/ontology", response_model=schemas.OntologyOut)
    def get_ontology():
        return schemas.OntologyOut(categories=[
            schemas.CategoryOut(
                id=c.id, label=c.label, color=list(ontology.resolve_color(c.id)),
                icon_id=c.icon_id, parent_id=c.parent_id,
                default_height_m=c.default_height_m,
            ) for c in ontology
        ])

    # --- datasets ------------------------------------------------------------

    @app.post("/datasets", response_model=schemas.DatasetCreated, status_code=201)
    async def create_dataset(request: Request, dataset_id: Optional[str] = None):
        body = await request.body()
        if len(body) > settings.max_dataset_bytes:
            return JSONResponse(status_code=413, content={
                "code": "payload_too_large",
                "message": f"dataset exceeds {settings.max_dataset_bytes} bytes",
            })
        features = parse_feature_collection(body.decode("utf-8", errors="replace"))
        dataset = catalog.ingest(features, ontology,
                                 dataset_id=dataset_id or state.next_dataset_id())
        state.add_dataset(dataset)
        return schemas.DatasetCreated(
            dataset_id=dataset.id,
            feature_count=len(dataset.features),
            categories_present=dataset.categories_present,
        )

    @app.get("/datasets/{dataset_id}", response_model=schemas.DatasetInfo)
    def dataset_info(dataset_id: str):
        ds = state.get_dataset(dataset_id)
        bbox = None
        if ds.bbox is not None:
            bbox = [ds.bbox.min.lon, ds.bbox.min.lat, ds.bbox.max.lon, ds.bbox.max.lat]
        return schemas.DatasetInfo(dataset_id=ds.id, feature_count=len(ds.features),
                                   categories_present=ds.categories_present, bbox=bbox)

    @app.get("/datasets/{dataset_id}/features")
    def dataset_features(dataset_id: str,
                         bbox: Optional[str] = None,
                         categories: Optional[str] = None):
        """Styled GeoJSON for native-drawing clients (default all-visible style)."""
        ds = state.get_dataset(dataset_id)
        if bbox is not None:
            box = _parse_bbox_values(bbox.split(","))
        elif ds.bbox is not None:
            box = ds.bbox
        else:
            return {"type": "FeatureCollection", "features": []}
        wanted = set(filter(None, categories.split(","))) if categories else set()
        features = catalog.query(ds, box, wanted)
        vs = default_view_state("2D", box, (1, 1), ontology)
        out = []
        for feature in features:
            doc = feature_to_geojson(feature)
            style = resolve_style(feature, vs, ontology)
            doc["style"] = {
                "fill": list(style.fill),
                "stroke": list(style.stroke),
                "stroke_width": style.stroke_width,
                "icon_id": style.icon_id,
                "z_rank": style.z_rank,
            }
            out.append(doc)
        return {"type": "FeatureCollection", "features": out}

    @app.get("/datasets/{dataset_id}/features/{feature_id}",
             response_model=schemas.DetailResponse)
    def feature_detail(dataset_id: str, feature_id: str):
        ds = state.get_dataset(dataset_id)
        rows = catalog.feature_detail(ds, feature_id)
        return schemas.DetailResponse(feature_id=feature_id,
                                      rows=[[k, v] for k, v in rows])

    @app.get("/datasets/{dataset_id}/count", response_model=schemas.CountResponse)
    def count(dataset_id: str, category: str, region: str):
        ds = state.get_dataset(dataset_id)
        try:
            ring = json.loads(region)
        except json.JSONDecodeError as exc:
            raise BadRegion(f"region must be JSON: {exc}") from exc
        try:
            reg = parse_region_ring(ring)
        except GeometryValidationError as exc:
            raise BadRegion(exc.message) from exc
        return schemas.CountResponse(count=catalog.count_in_region(ds, reg, category))

    @app.get("/datasets/{dataset_id}/search", response_model=schemas.SearchResponse)
    def search(dataset_id: str, q: str = Query(default="")):
        ds = state.get_dataset(dataset_id)
        results = []
        for feature in catalog.search(ds, q):
            anchor = (representative_point(feature.geometry)
                      if feature.geometry is not None else feature.anchor)
            box = feature_bbox(feature)
            results.append(schemas.SearchHit(
                feature_id=feature.id,
                name=str(feature.properties.get("name", "")),
                category_id=feature.category_id,
                anchor=[anchor.lon, anchor.lat],
                bbox=[box.min.lon, box.min.lat, box.max.lon, box.max.lat],
            ))
        return schemas.SearchResponse(results=results)

    # --- sessions ------------------------------------------------------------

    def _session_state(session) -> schemas.SessionState:
        doc = view_state_to_dict(session.view_state)
        return schemas.SessionState(session_id=session.id, dataset_id=session.dataset_id,
                                    **doc)

    @app.post("/sessions", response_model=schemas.SessionCreated, status_code=201)
    def create_session(body: schemas.SessionCreate):
        state.get_dataset(body.dataset_id)  # 404 when missing
        vs = default_view_state(body.mode, _parse_bbox_values(body.bbox),
                                _parse_viewport(body.viewport), ontology)
        session = state.new_session(body.dataset_id, vs)
        return schemas.SessionCreated(session_id=session.id)

    @app.get("/sessions/{session_id}", response_model=schemas.SessionState)
    def session_state(session_id: str):
        return _session_state(state.get_session(session_id))

    @app.put("/sessions/{session_id}/opacity", response_model=schemas.OpacityState)
    def put_opacity(session_id: str, body: schemas.OpacityUpdate):
        session = state.get_session(session_id)
        with session.lock:
            session.view_state = set_opacity(session.view_state, body.category_id,
                                             body.alpha, ontology)
            return schemas.OpacityState(
                session_id=session.id,
                opacity=_full_opacity(session.view_state, ontology))

    @app.put("/sessions/{session_id}/visibility", response_model=schemas.VisibilityState)
    def put_visibility(session_id: str, body: schemas.VisibilityUpdate):
        session = state.get_session(session_id)
        with session.lock:
            session.view_state = set_visibility(session.view_state, body.category_id,
                                                body.visible, ontology)
            return schemas.VisibilityState(session_id=session.id,
                                           visible=sorted(session.view_state.visible))

    @app.put("/sessions/{session_id}/view", response_model=schemas.SessionState)
    def put_view(session_id: str, body: schemas.ViewUpdate):
        session = state.get_session(session_id)
        with session.lock:
            vs = session.view_state
            if body.bbox is not None:
                vs = replace(vs, bbox=_parse_bbox_values(body.bbox))
            if body.viewport is not None:
                vs = replace(vs, viewport=_parse_viewport(body.viewport))
            if body.mode is not None:
                vs = replace(vs, mode=body.mode)
            session.view_state = vs
            return _session_state(session)

    @app.put("/sessions/{session_id}/annotations", response_model=schemas.SessionState)
    def put_annotations(session_id: str, body: schemas.AnnotationsUpdate):
        session = state.get_session(session_id)
        regions = []
        for ring in body.rings:
            try:
                regions.append(parse_region_ring(ring))
            except GeometryValidationError as exc:
                raise BadRegion(exc.message) from exc
        with session.lock:
            session.view_state = replace(session.view_state, annotations=tuple(regions))
            return _session_state(session)

    # --- rendering and interaction --------------------------------------------

    @app.get("/sessions/{session_id}/render.svg")
    def render_svg(session_id: str):
        session = state.get_session(session_id)
        ds = state.get_dataset(session.dataset_id)
        with session.lock:
            vs = replace(session.view_state, mode="2D")
        features = catalog.query(ds, vs.bbox)
        svg = render2d.render_svg(features, vs, ontology)
        return Response(content=svg, media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/scene.json")
    def scene_json(session_id: str):
        session = state.get_session(session_id)
        ds = state.get_dataset(session.dataset_id)
        with session.lock:
            vs = replace(session.view_state, mode="3D")
        features = catalog.query(ds, vs.bbox)
        scene = scene3d.build_scene(features, vs, ontology, state.icons)
        return Response(content=scene3d.scene_to_json(scene), media_type="application/json")

    @app.get("/sessions/{session_id}/hit", response_model=schemas.HitResponse)
    def hit(session_id: str, lon: float, lat: float):
        session = state.get_session(session_id)
        ds = state.get_dataset(session.dataset_id)
        with session.lock:
            vs = session.view_state
        try:
            p = LonLat(lon, lat)
        except GeometryValidationError as exc:
            raise BadBbox(f"bad click position: {exc.message}") from exc
        return schemas.HitResponse(feature_id=catalog.hit_test(ds, vs, p))

    if settings.ui_dir is not None and settings.ui_dir.is_dir():
        from fastapi.staticfiles import StaticFiles
        app.mount("/ui", StaticFiles(directory=str(settings.ui_dir), html=True), name="ui")

    return app
