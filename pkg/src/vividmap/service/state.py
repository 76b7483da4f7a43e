"""In-memory service state: dataset store, sessions, settings, snapshots.

Datasets are read-only after ingest and may be shared freely. Session
mutations are serialized with a per-session lock (atomic read-modify-write).
Sessions can be snapshotted to a JSON file on shutdown as a convenience.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from vividmap.catalog import Dataset
from vividmap.errors import UnknownDataset, UnknownSession
from vividmap.geomodel.types import Bbox, LonLat, Region
from vividmap.icons import IconRegistry
from vividmap.ontology import Ontology
from vividmap.style import ViewState

logger = logging.getLogger(__name__)

DEFAULT_MAX_DATASET_BYTES = 50 * 1024 * 1024


@dataclass
class Settings:
    max_dataset_bytes: int = DEFAULT_MAX_DATASET_BYTES
    icon_base_url: str = "icons"
    snapshot_path: Optional[Path] = None
    ui_dir: Optional[Path] = None


def settings_from_env() -> Settings:
    s = Settings()
    if os.environ.get("VIVIDMAP_MAX_DATASET_BYTES"):
        s.max_dataset_bytes = int(os.environ["VIVIDMAP_MAX_DATASET_BYTES"])
    if os.environ.get("VIVIDMAP_ICON_BASE"):
        s.icon_base_url = os.environ["VIVIDMAP_ICON_BASE"]
    if os.environ.get("VIVIDMAP_SNAPSHOT"):
        s.snapshot_path = Path(os.environ["VIVIDMAP_SNAPSHOT"])
    if os.environ.get("VIVIDMAP_UI_DIR"):
        s.ui_dir = Path(os.environ["VIVIDMAP_UI_DIR"])
    return s


@dataclass
class Session:
    id: str
    dataset_id: str
    view_state: ViewState
    lock: threading.Lock = field(default_factory=threading.Lock)


def view_state_to_dict(vs: ViewState) -> dict:
    return {
        "mode": vs.mode,
        "bbox": [vs.bbox.min.lon, vs.bbox.min.lat, vs.bbox.max.lon, vs.bbox.max.lat],
        "viewport": list(vs.viewport),
        "opacity": dict(vs.opacity),
        "visible": sorted(vs.visible),
        "annotations": [[[p.lon, p.lat] for p in region.ring] for region in vs.annotations],
    }


def view_state_from_dict(raw: dict) -> ViewState:
    w, s, e, n = raw["bbox"]
    return ViewState(
        mode=raw["mode"],
        bbox=Bbox(LonLat(w, s), LonLat(e, n)),
        viewport=(int(raw["viewport"][0]), int(raw["viewport"][1])),
        opacity={k: float(v) for k, v in raw.get("opacity", {}).items()},
        visible=frozenset(raw.get("visible", [])),
        annotations=tuple(Region(tuple(LonLat(lon, lat) for lon, lat in ring))
                          for ring in raw.get("annotations", [])),
    )


class AppState:
    """Everything one service process holds."""

    def __init__(self, ontology: Ontology, settings: Settings):
        self.ontology = ontology
        self.settings = settings
        self.icons = IconRegistry(base_url=settings.icon_base_url)
        self.datasets: dict[str, Dataset] = {}
        self.sessions: dict[str, Session] = {}
        self._store_lock = threading.Lock()
        self._dataset_seq = 0
        self._session_seq = 0

    def next_dataset_id(self) -> str:
        with self._store_lock:
            self._dataset_seq += 1
            return f"d{self._dataset_seq}"

    def add_dataset(self, dataset: Dataset) -> None:
        with self._store_lock:
            self.datasets[dataset.id] = dataset

    def get_dataset(self, dataset_id: str) -> Dataset:
        try:
            return self.datasets[dataset_id]
        except KeyError:
            raise UnknownDataset(f"unknown dataset {dataset_id!r}") from None

    def new_session(self, dataset_id: str, view_state: ViewState) -> Session:
        with self._store_lock:
            self._session_seq += 1
            session = Session(id=f"s{self._session_seq}", dataset_id=dataset_id,
                              view_state=view_state)
            self.sessions[session.id] = session
            return session

    def get_session(self, session_id: str) -> Session:
        try:
            return self.sessions[session_id]
        except KeyError:
            raise UnknownSession(f"unknown session {session_id!r}") from None

    # --- snapshot convenience ------------------------------------------------

    def save_snapshot(self) -> None:
        path = self.settings.snapshot_path
        if path is None:
            return
        doc = {"sessions": [
            {"id": s.id, "dataset_id": s.dataset_id, "view_state": view_state_to_dict(s.view_state)}
            for s in self.sessions.values()
        ]}
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(doc, indent=2))
        logger.info("saved %d session(s) to %s", len(self.sessions), path)

    def load_snapshot(self) -> None:
        path = self.settings.snapshot_path
        if path is None or not path.exists():
            return
        try:
            doc = json.loads(path.read_text())
            for raw in doc.get("sessions", []):
                session = Session(id=raw["id"], dataset_id=raw["dataset_id"],
                                  view_state=view_state_from_dict(raw["view_state"]))
                self.sessions[session.id] = session
                seq = int(session.id.lstrip("s")) if session.id.lstrip("s").isdigit() else 0
                self._session_seq = max(self._session_seq, seq)
        except (ValueError, KeyError) as exc:
            logger.warning("ignoring unreadable snapshot %s: %s", path, exc)
        else:
            logger.info("restored %d session(s) from %s", len(self.sessions), path)
