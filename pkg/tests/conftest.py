import json
from pathlib import Path

import pytest

from vividmap.geomodel import Bbox, LonLat, parse_feature_collection, parse_region_ring
from vividmap.ontology import load_ontology

DATA_DIR = Path(__file__).resolve().parent.parent / "data"


@pytest.fixture(scope="session")
def sample_ontology():
    return load_ontology((DATA_DIR / "ontology.json").read_text())


@pytest.fixture(scope="session")
def sample_features():
    return parse_feature_collection((DATA_DIR / "sample_dataset.geojson").read_text())


@pytest.fixture(scope="session")
def sample_region():
    return parse_region_ring(json.loads((DATA_DIR / "orange_region.json").read_text()))


@pytest.fixture(scope="session")
def sample_bbox():
    return Bbox(LonLat(7.63, 45.03), LonLat(7.72, 45.10))


@pytest.fixture(scope="session")
def test_ontology():
    """Small synthetic ontology used by unit tests."""
    return load_ontology(json.dumps({"categories": [
        {"id": "school", "label": "Schools"},
        {"id": "hospital", "label": "Hospitals", "color": [220, 20, 60], "icon_id": "cross"},
        {"id": "park", "label": "Parks", "color": [0, 128, 255]},
        {"id": "river", "label": "Rivers", "color": [30, 90, 200]},
    ]}))
