import json
import threading

import pytest
from fastapi.testclient import TestClient

from vividmap.service import Settings, create_app

RING = [[0.0, 0.0], [4.0, 0.0], [4.0, 4.0], [0.0, 4.0], [0.0, 0.0]]


def fc(features):
    return json.dumps({"type": "FeatureCollection", "features": features})


SAMPLE = fc([
    {"type": "Feature", "id": "h1",
     "geometry": {"type": "Point", "coordinates": [1.0, 1.0]},
     "properties": {"category": "hospital", "name": "Central"}},
    {"type": "Feature", "id": "h2",
     "geometry": {"type": "Point", "coordinates": [9.0, 9.0]},
     "properties": {"category": "hospital", "name": "North"}},
    {"type": "Feature", "id": "p1",
     "geometry": {"type": "Polygon", "coordinates":
                  [[[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0], [0.0, 0.0]]]},
     "properties": {"category": "park", "name": "South Park", "height_m": 6}},
])


@pytest.fixture
def client(test_ontology):
    app = create_app(test_ontology, Settings())
    with TestClient(app) as c:
        yield c


@pytest.fixture
def dataset_id(client):
    response = client.post("/datasets", content=SAMPLE)
    assert response.status_code == 201
    return response.json()["dataset_id"]


@pytest.fixture
def session_id(client, dataset_id):
    response = client.post("/sessions", json={
        "dataset_id": dataset_id, "mode": "2D",
        "bbox": [-1.0, -1.0, 10.0, 10.0], "viewport": [400, 400]})
    assert response.status_code == 201
    return response.json()["session_id"]


# --- datasets --------------------------------------------------------------

def test_post_dataset_happy_path(client):
    response = client.post("/datasets", content=SAMPLE)
    assert response.status_code == 201
    body = response.json()
    assert body["feature_count"] == 3
    assert body["categories_present"] == ["hospital", "park"]


def test_post_dataset_unclosed_ring_is_machine_readable(client):
    bad = fc([{"type": "Feature", "geometry": {
        "type": "Polygon", "coordinates": [[[0, 0], [1, 0], [1, 1], [0, 1]]]},
        "properties": {"category": "park"}}])
    response = client.post("/datasets", content=bad)
    assert response.status_code == 400
    body = response.json()
    assert body["code"] == "ring_not_closed"
    assert body["feature_index"] == 0
    assert "message" in body


def test_post_dataset_size_limit(test_ontology):
    app = create_app(test_ontology, Settings(max_dataset_bytes=100))
    with TestClient(app) as client:
        response = client.post("/datasets", content=SAMPLE)
        assert response.status_code == 413
        assert response.json()["code"] == "payload_too_large"


def test_post_dataset_unknown_category(client):
    bad = fc([{"type": "Feature", "geometry": {"type": "Point", "coordinates": [0, 0]},
               "properties": {"category": "dragon_lairs"}}])
    response = client.post("/datasets", content=bad)
    assert response.status_code == 404
    assert response.json()["code"] == "unknown_category"


def test_dataset_info_and_404(client, dataset_id):
    response = client.get(f"/datasets/{dataset_id}")
    assert response.json()["bbox"] == [0.0, 0.0, 9.0, 9.0]
    assert client.get("/datasets/ghost").status_code == 404


# --- sessions --------------------------------------------------------------------

def test_create_session_and_read_state(client, dataset_id, session_id):
    response = client.get(f"/sessions/{session_id}")
    body = response.json()
    assert body["dataset_id"] == dataset_id
    assert body["mode"] == "2D"
    assert body["opacity"] == {}
    assert set(body["visible"]) == {"school", "hospital", "park", "river"}


def test_put_opacity_echoes_full_state(client, session_id):
    response = client.put(f"/sessions/{session_id}/opacity",
                          json={"category_id": "hospital", "alpha": 0.5})
    assert response.status_code == 200
    opacity = response.json()["opacity"]
    assert opacity["hospital"] == 0.5
    assert opacity["park"] == 1.0
    assert set(opacity) == {"school", "hospital", "park", "river"}


def test_put_opacity_is_idempotent(client, session_id):
    first = client.put(f"/sessions/{session_id}/opacity",
                       json={"category_id": "hospital", "alpha": 0.5})
    second = client.put(f"/sessions/{session_id}/opacity",
                        json={"category_id": "hospital", "alpha": 0.5})
    assert first.json() == second.json()


def test_put_opacity_range_and_unknowns(client, session_id):
    response = client.put(f"/sessions/{session_id}/opacity",
                          json={"category_id": "hospital", "alpha": -0.1})
    assert response.status_code == 422
    assert response.json()["code"] == "alpha_out_of_range"
    response = client.put(f"/sessions/{session_id}/opacity",
                          json={"category_id": "dragon_lairs", "alpha": 0.5})
    assert response.status_code == 404
    response = client.put("/sessions/ghost/opacity",
                          json={"category_id": "hospital", "alpha": 0.5})
    assert response.status_code == 404


def test_put_visibility_roundtrip(client, session_id):
    response = client.put(f"/sessions/{session_id}/visibility",
                          json={"category_id": "park", "visible": False})
    assert "park" not in response.json()["visible"]
    response = client.put(f"/sessions/{session_id}/visibility",
                          json={"category_id": "park", "visible": True})
    assert "park" in response.json()["visible"]


def test_concurrent_opacity_puts_serialize(client, session_id):
    values = [0.2, 0.8]

    def put(alpha):
        client.put(f"/sessions/{session_id}/opacity",
                   json={"category_id": "hospital", "alpha": alpha})

    threads = [threading.Thread(target=put, args=(v,)) for v in values * 10]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    final = client.get(f"/sessions/{session_id}").json()["opacity"]["hospital"]
    assert final in values


# --- queries over HTTP ---------------------------------------------------------

def test_count_endpoint_matches_module_oracle(client, dataset_id, test_ontology):
    from vividmap.catalog import count_in_region, ingest
    from vividmap.geomodel import parse_feature_collection, parse_region_ring

    features = parse_feature_collection(SAMPLE)
    dataset = ingest(features, test_ontology)
    region = parse_region_ring(RING)
    expected = count_in_region(dataset, region, "hospital")
    response = client.get(f"/datasets/{dataset_id}/count",
                          params={"category": "hospital", "region": json.dumps(RING)})
    assert response.json() == {"count": expected}
    assert expected == 1


def test_count_endpoint_bad_region(client, dataset_id):
    response = client.get(f"/datasets/{dataset_id}/count",
                          params={"category": "hospital", "region": "oops"})
    assert response.status_code == 400
    response = client.get(f"/datasets/{dataset_id}/count",
                          params={"category": "hospital",
                                  "region": json.dumps([[0, 0], [1, 1]])})
    assert response.status_code == 400


def test_search_endpoint(client, dataset_id):
    response = client.get(f"/datasets/{dataset_id}/search", params={"q": "central"})
    results = response.json()["results"]
    assert [r["feature_id"] for r in results] == ["h1"]
    assert results[0]["anchor"] == [1.0, 1.0]
    assert client.get(f"/datasets/{dataset_id}/search",
                      params={"q": ""}).json()["results"] == []


def test_features_endpoint_styled_geojson(client, dataset_id):
    response = client.get(f"/datasets/{dataset_id}/features",
                          params={"bbox": "-1,-1,5,5", "categories": "park"})
    body = response.json()
    assert body["type"] == "FeatureCollection"
    assert [f["id"] for f in body["features"]] == ["p1"]
    style = body["features"][0]["style"]
    assert style["fill"][:3] == [0, 128, 255]
    assert style["z_rank"] == 0
    assert body["features"][0]["properties"]["category"] == "park"


def test_feature_detail_endpoint(client, dataset_id):
    response = client.get(f"/datasets/{dataset_id}/features/p1")
    rows = response.json()["rows"]
    assert rows[0] == ["name", "South Park"]
    assert rows[1] == ["category", "Parks"]
    assert client.get(f"/datasets/{dataset_id}/features/ghost").status_code == 404


def test_hit_endpoint(client, dataset_id, session_id):
    response = client.get(f"/sessions/{session_id}/hit", params={"lon": 1.0, "lat": 1.0})
    assert response.json() == {"feature_id": "h1"}
    response = client.get(f"/sessions/{session_id}/hit", params={"lon": 6.0, "lat": 2.0})
    assert response.json() == {"feature_id": None}
    response = client.get(f"/sessions/{session_id}/hit", params={"lon": 90.0, "lat": 2.0})
    assert response.status_code == 400
    assert response.json()["code"] == "outside_view"


# --- rendering ---------------------------------------------------------------------

def test_render_svg_byte_identical_across_calls(client, session_id):
    first = client.get(f"/sessions/{session_id}/render.svg")
    second = client.get(f"/sessions/{session_id}/render.svg")
    assert first.status_code == 200
    assert first.headers["content-type"].startswith("image/svg+xml")
    assert first.content == second.content


def test_scene_json_byte_identical_across_calls(client, session_id):
    first = client.get(f"/sessions/{session_id}/scene.json")
    second = client.get(f"/sessions/{session_id}/scene.json")
    assert first.status_code == 200
    assert first.content == second.content
    doc = json.loads(first.content)
    assert {n["feature_id"] for n in doc["nodes"]} == {"h1", "h2", "p1"}


def test_opacity_put_then_render_diff_confined(client, session_id):
    import re

    def strip_alpha(line):
        return re.sub(r' (?:fill|stroke)-opacity="[0-9.]+"', "", line)

    base = client.get(f"/sessions/{session_id}/render.svg").text.splitlines()
    client.put(f"/sessions/{session_id}/opacity",
               json={"category_id": "park", "alpha": 0.25})
    tuned = client.get(f"/sessions/{session_id}/render.svg").text.splitlines()
    assert len(base) == len(tuned)
    for old, new in zip(base, tuned):
        if old != new:
            assert 'data-category="park"' in old
            assert strip_alpha(old) == strip_alpha(new)


def test_annotations_rendered(client, session_id):
    response = client.put(f"/sessions/{session_id}/annotations", json={"rings": [RING]})
    assert response.status_code == 200
    assert len(response.json()["annotations"]) == 1
    svg = client.get(f"/sessions/{session_id}/render.svg").text
    assert "#FF7F00" in svg


def test_view_update_changes_bbox(client, session_id):
    response = client.put(f"/sessions/{session_id}/view",
                          json={"bbox": [0.0, 0.0, 3.0, 3.0]})
    assert response.json()["bbox"] == [0.0, 0.0, 3.0, 3.0]
    svg = client.get(f"/sessions/{session_id}/render.svg").text
    assert 'data-feature="h2"' not in svg   # h2 now outside the view
    assert 'data-feature="h1"' in svg


def test_render_mode_follows_endpoint_not_session(client, dataset_id):
    response = client.post("/sessions", json={
        "dataset_id": dataset_id, "mode": "3D",
        "bbox": [-1.0, -1.0, 10.0, 10.0], "viewport": [400, 400]})
    sid = response.json()["session_id"]
    assert client.get(f"/sessions/{sid}/render.svg").status_code == 200
    assert client.get(f"/sessions/{sid}/scene.json").status_code == 200


def test_get_endpoints_are_side_effect_free(client, session_id):
    before = client.get(f"/sessions/{session_id}").json()
    client.get(f"/sessions/{session_id}/render.svg")
    client.get(f"/sessions/{session_id}/scene.json")
    client.get(f"/sessions/{session_id}/hit", params={"lon": 1.0, "lat": 1.0})
    after = client.get(f"/sessions/{session_id}").json()
    assert before == after


def test_ontology_endpoint_lists_resolved_colors(client, test_ontology):
    body = client.get("/ontology").json()
    by_id = {c["id"]: c for c in body["categories"]}
    assert by_id["park"]["color"] == [0, 128, 255]
    assert by_id["school"]["color"] == list(test_ontology.resolve_color("school"))
    assert by_id["hospital"]["icon_id"] == "cross"


def test_error_bodies_always_carry_code_and_message(client):
    for response in (
        client.post("/datasets", content="{broken"),
        client.get("/datasets/ghost"),
        client.get("/sessions/ghost"),
        client.post("/sessions", json={"dataset_id": "ghost", "mode": "2D",
                                       "bbox": [0, 0, 1, 1], "viewport": [10, 10]}),
        client.post("/sessions", json={"nope": True}),
    ):
        body = response.json()
        assert "code" in body and "message" in body


def test_snapshot_roundtrip(test_ontology, tmp_path):
    snapshot = tmp_path / "sessions.json"
    app = create_app(test_ontology, Settings(snapshot_path=snapshot))
    with TestClient(app) as client:
        client.post("/datasets", content=SAMPLE)
        client.post("/sessions", json={"dataset_id": "d1", "mode": "2D",
                                       "bbox": [0.0, 0.0, 5.0, 5.0], "viewport": [100, 100]})
        client.put("/sessions/s1/opacity", json={"category_id": "park", "alpha": 0.5})
    assert snapshot.exists()
    app2 = create_app(test_ontology, Settings(snapshot_path=snapshot))
    with TestClient(app2) as client:
        body = client.get("/sessions/s1").json()
        assert body["opacity"] == {"park": 0.5}


def test_ui_dir_mounted_when_present(test_ontology, tmp_path):
    ui = tmp_path / "web"
    ui.mkdir()
    (ui / "index.html").write_text("<html><body>vividmap ui</body></html>")
    app = create_app(test_ontology, Settings(ui_dir=ui))
    with TestClient(app) as client:
        response = client.get("/ui/")
        assert response.status_code == 200
        assert "vividmap ui" in response.text


def test_settings_from_env(monkeypatch, tmp_path):
    from vividmap.service import settings_from_env

    monkeypatch.setenv("VIVIDMAP_MAX_DATASET_BYTES", "1234")
    monkeypatch.setenv("VIVIDMAP_ICON_BASE", "https://cdn.example/icons")
    monkeypatch.setenv("VIVIDMAP_SNAPSHOT", str(tmp_path / "snap.json"))
    settings = settings_from_env()
    assert settings.max_dataset_bytes == 1234
    assert settings.icon_base_url == "https://cdn.example/icons"
    assert settings.snapshot_path == tmp_path / "snap.json"
