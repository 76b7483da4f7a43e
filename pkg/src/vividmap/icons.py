"""Marker icon resolution for 3D billboards."""

from __future__ import annotations

from typing import Optional


class IconRegistry:
    """Maps icon ids to PNG paths/URLs; unknown ids fall back to ``<base>/<id>.png``."""

    def __init__(self, base_url: str = "icons", mapping: Optional[dict] = None):
        self.base_url = base_url.rstrip("/")
        self.mapping = dict(mapping or {})

    def resolve(self, icon_id: str) -> str:
        return self.mapping.get(icon_id) or f"{self.base_url}/{icon_id}.png"
