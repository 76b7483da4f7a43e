import math
import random

import pytest

from vividmap.errors import DegenerateBbox, WrongMode
from vividmap.geomodel import (
    Bbox,
    Feature,
    LineString,
    LonLat,
    Point,
    Polygon,
    Region,
)
from vividmap.render2d import MAX_MERCATOR_LAT, Projector, project, render_svg
from vividmap.style import default_view_state, set_opacity

WORLD = Bbox(LonLat(-180.0, -MAX_MERCATOR_LAT), LonLat(180.0, MAX_MERCATOR_LAT))
SQUARE = Polygon(((LonLat(0, 0), LonLat(1, 0), LonLat(1, 1), LonLat(0, 1), LonLat(0, 0)),))


def mercator_oracle(lon: float, lat: float, bbox: Bbox, viewport) -> tuple[float, float]:
    """Direct evaluation of the Mercator formula plus the viewport linear map."""
    def unit(lon_deg, lat_deg):
        lat_deg = min(max(lat_deg, -MAX_MERCATOR_LAT), MAX_MERCATOR_LAT)
        mx = lon_deg / 360.0 + 0.5
        my = 0.5 - math.log(math.tan(math.pi / 4 + math.radians(lat_deg) / 2)) / (2 * math.pi)
        return mx, my

    x0, y1 = unit(bbox.min.lon, bbox.min.lat)
    x1, y0 = unit(bbox.max.lon, bbox.max.lat)
    mx, my = unit(lon, lat)
    w, h = viewport
    return ((mx - x0) / (x1 - x0) * w, (my - y0) / (y1 - y0) * h)


# --- project ---------------------------------------------------------------------

def test_project_origin_world_center():
    p = project(LonLat(0, 0), WORLD, (256, 256))
    assert p.x == pytest.approx(128.0, abs=1e-9)
    assert p.y == pytest.approx(128.0, abs=1e-9)


def test_project_top_left_corner():
    p = project(LonLat(-180, MAX_MERCATOR_LAT), WORLD, (256, 256))
    assert p.x == pytest.approx(0.0, abs=1e-9)
    assert p.y == pytest.approx(0.0, abs=1e-9)


def test_project_45_45():
    # frozen from a 50-digit mpmath evaluation of the Mercator formula
    p = project(LonLat(45, 45), WORLD, (256, 256))
    assert p.x == pytest.approx(160.0, abs=1e-9)
    assert p.y == pytest.approx(92.089612272136068, abs=1e-9)


def test_project_matches_formula_oracle_randomized():
    rng = random.Random(31415)
    for _ in range(500):
        w = rng.uniform(-179, 178)
        s = rng.uniform(-80, 79)
        bbox = Bbox(LonLat(w, s), LonLat(w + rng.uniform(0.01, 2), s + rng.uniform(0.01, 2)))
        viewport = (rng.randint(16, 2000), rng.randint(16, 2000))
        lon = rng.uniform(bbox.min.lon, bbox.max.lon)
        lat = rng.uniform(bbox.min.lat, bbox.max.lat)
        got = project(LonLat(lon, lat), bbox, viewport)
        ex, ey = mercator_oracle(lon, lat, bbox, viewport)
        assert got.x == pytest.approx(ex, abs=1e-9)
        assert got.y == pytest.approx(ey, abs=1e-9)


def test_project_bbox_corners_hit_viewport_corners():
    bbox = Bbox(LonLat(7.6, 45.0), LonLat(7.8, 45.2))
    proj = Projector(bbox, (800, 600))
    sw = proj.project(bbox.min)
    ne = proj.project(bbox.max)
    assert sw.x == pytest.approx(0.0, abs=1e-9)
    assert sw.y == pytest.approx(600.0, abs=1e-9)
    assert ne.x == pytest.approx(800.0, abs=1e-9)
    assert ne.y == pytest.approx(0.0, abs=1e-9)


def test_project_is_strictly_monotone():
    bbox = Bbox(LonLat(0, 0), LonLat(10, 10))
    proj = Projector(bbox, (500, 500))
    rng = random.Random(7)
    for _ in range(200):
        lon1, lon2 = sorted((rng.uniform(0, 10), rng.uniform(0, 10)))
        lat = rng.uniform(0, 10)
        if lon1 != lon2:
            assert proj.project(LonLat(lon1, lat)).x < proj.project(LonLat(lon2, lat)).x
        lat1, lat2 = sorted((rng.uniform(0, 10), rng.uniform(0, 10)))
        lon = rng.uniform(0, 10)
        if lat1 != lat2:
            assert proj.project(LonLat(lon, lat1)).y > proj.project(LonLat(lon, lat2)).y


def test_project_degenerate_bbox():
    with pytest.raises(DegenerateBbox):
        project(LonLat(0, 0), Bbox(LonLat(5, 0), LonLat(5, 10)), (100, 100))
    with pytest.raises(DegenerateBbox):
        project(LonLat(0, 0), Bbox(LonLat(0, 5), LonLat(10, 5)), (100, 100))


def test_unproject_inverts_project():
    bbox = Bbox(LonLat(7.6, 45.0), LonLat(7.8, 45.2))
    proj = Projector(bbox, (800, 600))
    rng = random.Random(11)
    for _ in range(100):
        p = LonLat(rng.uniform(7.6, 7.8), rng.uniform(45.0, 45.2))
        px = proj.project(p)
        back = proj.unproject(px.x, px.y)
        assert back.lon == pytest.approx(p.lon, abs=1e-9)
        assert back.lat == pytest.approx(p.lat, abs=1e-9)


# --- render_svg --------------------------------------------------------------------

@pytest.fixture
def features():
    return [
        Feature("poly1", "park", SQUARE),
        Feature("line1", "river", LineString((LonLat(0, 0), LonLat(2, 2)))),
        Feature("pt1", "hospital", Point(LonLat(1, 1))),
    ]


@pytest.fixture
def vs(test_ontology):
    return default_view_state("2D", Bbox(LonLat(-1, -1), LonLat(3, 3)), (400, 400),
                              test_ontology)


def test_render_empty_map_has_background_only(vs, test_ontology):
    svg = render_svg([], vs, test_ontology)
    assert svg.count("<rect") == 1
    assert "<g " not in svg
    assert svg.startswith('<?xml version="1.0" encoding="UTF-8"?>')
    assert 'viewBox="0 0 400 400"' in svg


def test_render_is_byte_identical_across_runs(features, vs, test_ontology):
    a = render_svg(features, vs, test_ontology)
    b = render_svg(features, vs, test_ontology)
    assert a == b
    assert a.encode("utf-8") == b.encode("utf-8")


def test_render_requires_2d_mode(features, vs, test_ontology):
    from dataclasses import replace
    with pytest.raises(WrongMode):
        render_svg(features, replace(vs, mode="3D"), test_ontology)


def test_render_element_count(features, vs, test_ontology):
    region = Region((LonLat(0, 0), LonLat(2, 0), LonLat(2, 2), LonLat(0, 2), LonLat(0, 0)))
    from dataclasses import replace
    annotated = replace(vs, annotations=(region,))
    svg = render_svg(features, annotated, test_ontology)
    body = [line for line in svg.splitlines()
            if line.startswith(("<rect", "<g ", "<path d="))]
    # background + one group per visible feature + one annotation
    assert len(body) == 1 + 3 + 1


def test_render_z_order_and_id_order(features, vs, test_ontology):
    svg = render_svg(features, vs, test_ontology)
    lines = svg.splitlines()
    order = [line.split('"')[1] for line in lines if line.startswith("<g ")]
    assert order == ["poly1", "line1", "pt1"]


def test_render_group_carries_effective_alpha(features, vs, test_ontology):
    # 0.55 * 0.5 = 0.275 (product oracle from the style engine)
    tuned = set_opacity(vs, "park", 0.5, test_ontology)
    svg = render_svg(features, tuned, test_ontology)
    park_line = next(line for line in svg.splitlines() if 'data-feature="poly1"' in line)
    assert 'fill-opacity="0.275000"' in park_line
    assert 'stroke-opacity="0.500000"' in park_line


def test_opacity_zero_feature_still_rendered(features, vs, test_ontology):
    tuned = set_opacity(vs, "park", 0.0, test_ontology)
    svg = render_svg(features, tuned, test_ontology)
    park_line = next(line for line in svg.splitlines() if 'data-feature="poly1"' in line)
    assert 'fill-opacity="0.000000"' in park_line


def test_hidden_category_not_rendered(features, vs, test_ontology):
    from vividmap.style import set_visibility
    hidden = set_visibility(vs, "park", False, test_ontology)
    svg = render_svg(features, hidden, test_ontology)
    assert 'data-feature="poly1"' not in svg
    assert 'data-feature="line1"' in svg


def test_annotation_drawn_last_in_orange(features, vs, test_ontology):
    from dataclasses import replace
    region = Region((LonLat(0, 0), LonLat(2, 0), LonLat(2, 2), LonLat(0, 2), LonLat(0, 0)))
    svg = render_svg(features, replace(vs, annotations=(region,)), test_ontology)
    lines = svg.splitlines()
    assert '#FF7F00' in lines[-2]
    assert 'stroke-width="3.00"' in lines[-2]
    assert 'fill="none"' in lines[-2]
    assert lines[-1] == "</svg>"


def _strip_alpha_attrs(line: str) -> str:
    import re
    return re.sub(r' (?:fill|stroke)-opacity="[0-9.]+"', "", line)


def test_opacity_diff_confined_to_tuned_category(features, vs, test_ontology):
    base = render_svg(features, vs, test_ontology).splitlines()
    tuned = render_svg(features, set_opacity(vs, "park", 0.4, test_ontology),
                       test_ontology).splitlines()
    assert len(base) == len(tuned)
    for old, new in zip(base, tuned):
        if old == new:
            continue
        assert 'data-category="park"' in old
        assert _strip_alpha_attrs(old) == _strip_alpha_attrs(new)


def test_coordinates_formatted_with_two_decimals(features, vs, test_ontology):
    import re
    svg = render_svg(features, vs, test_ontology)
    for match in re.finditer(r'd="([^"]+)"', svg):
        for num in re.findall(r'-?\d+\.?\d*', match.group(1)):
            if "." in num:
                assert len(num.split(".")[1]) == 2


def test_polygon_holes_rendered_evenodd(test_ontology, vs):
    poly = Polygon((
        (LonLat(0, 0), LonLat(2, 0), LonLat(2, 2), LonLat(0, 2), LonLat(0, 0)),
        (LonLat(0.5, 0.5), LonLat(1.5, 0.5), LonLat(1.5, 1.5), LonLat(0.5, 1.5),
         LonLat(0.5, 0.5)),
    ))
    svg = render_svg([Feature("donut", "park", poly)], vs, test_ontology)
    donut = next(line for line in svg.splitlines() if 'data-feature="donut"' in line)
    assert 'fill-rule="evenodd"' in donut
    assert donut.count(" Z") == 2


def test_marker_badge_shape(test_ontology, vs):
    svg = render_svg([Feature("pin", "hospital", Point(LonLat(1, 1)))], vs, test_ontology)
    pin = next(line for line in svg.splitlines() if 'data-feature="pin"' in line)
    assert 'r="14.00"' in pin
    assert 'stroke="#FFFFFF"' in pin
    assert 'stroke-width="2.00"' in pin


def test_geometryless_feature_rendered_at_anchor(test_ontology, vs):
    feature = Feature("anchored", "school", None, {"anchor": LonLat(1, 1)})
    svg = render_svg([feature], vs, test_ontology)
    assert 'data-feature="anchored"' in svg


def test_svg_is_well_formed_xml(features, vs, test_ontology):
    import xml.etree.ElementTree as ET
    from dataclasses import replace
    region = Region((LonLat(0, 0), LonLat(2, 0), LonLat(2, 2), LonLat(0, 2), LonLat(0, 0)))
    awkward = Feature('we"ird&<id>', "school", Point(LonLat(0.5, 0.5)))
    svg = render_svg(features + [awkward], replace(vs, annotations=(region,)),
                     test_ontology)
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    groups = [el for el in root if el.tag.endswith("g")]
    assert len(groups) == 4
    assert any(el.get("data-feature") == 'we"ird&<id>' for el in groups)
