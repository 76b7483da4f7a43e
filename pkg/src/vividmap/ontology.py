"""Category tree: loads the JSON category config and assigns colors and icons.

The hierarchy is a plain forest (single parent per category). Categories
without an explicit color get a deterministic vivid palette color spaced by
the golden angle, so any number of categories stays mutually distinguishable.
"""

from __future__ import annotations

import colorsys
import json
from dataclasses import dataclass
from typing import Optional

from vividmap.errors import (
    BadColor,
    CyclicHierarchy,
    DuplicateCategoryId,
    MalformedJson,
    OntologyConfigError,
    UnknownCategory,
    UnknownParent,
)

RGB = tuple[int, int, int]

GOLDEN_ANGLE_DEG = 137.508
PALETTE_SATURATION = 0.90
PALETTE_LIGHTNESS = 0.45


def palette_color(index: int) -> RGB:
    """Vivid color for the index-th auto-colored category (golden-angle hues)."""
    hue = (index * GOLDEN_ANGLE_DEG) % 360.0
    r, g, b = colorsys.hls_to_rgb(hue / 360.0, PALETTE_LIGHTNESS, PALETTE_SATURATION)
    return (round(r * 255), round(g * 255), round(b * 255))


@dataclass(frozen=True)
class Category:
    id: str
    label: str
    color: Optional[RGB] = None
    icon_id: Optional[str] = None
    parent_id: Optional[str] = None
    default_height_m: Optional[float] = None


class Ontology:
    """Immutable category forest; lookup by id, colors resolved deterministically."""

    def __init__(self, categories: list[Category]):
        self._categories = list(categories)
        self._by_id = {c.id: c for c in categories}
        self._validate()
        # palette slots follow config order over the colorless categories
        self._palette_index = {}
        slot = 0
        for c in self._categories:
            if c.color is None:
                self._palette_index[c.id] = slot
                slot += 1

    def _validate(self) -> None:
        if len(self._by_id) != len(self._categories):
            seen = set()
            for c in self._categories:
                if c.id in seen:
                    raise DuplicateCategoryId(f"duplicate category id {c.id!r}")
                seen.add(c.id)
        for c in self._categories:
            if c.parent_id is not None and c.parent_id not in self._by_id:
                raise UnknownParent(f"category {c.id!r} names unknown parent {c.parent_id!r}")
        for c in self._categories:
            seen = {c.id}
            cur = c.parent_id
            while cur is not None:
                if cur in seen:
                    raise CyclicHierarchy(f"cycle in parent links at {cur!r}")
                seen.add(cur)
                cur = self._by_id[cur].parent_id

    def __contains__(self, category_id: str) -> bool:
        return category_id in self._by_id

    def __iter__(self):
        return iter(self._categories)

    def __len__(self) -> int:
        return len(self._categories)

    @property
    def categories(self) -> list[Category]:
        return list(self._categories)

    @property
    def roots(self) -> list[Category]:
        return [c for c in self._categories if c.parent_id is None]

    def get(self, category_id: str) -> Category:
        try:
            return self._by_id[category_id]
        except KeyError:
            raise UnknownCategory(f"unknown category {category_id!r}") from None

    def resolve_color(self, category_id: str) -> RGB:
        """Explicit config color, or the category's stable palette color."""
        category = self.get(category_id)
        if category.color is not None:
            return category.color
        return palette_color(self._palette_index[category_id])

    def descendants(self, category_id: str) -> set[str]:
        """Transitive children of a category, including the category itself."""
        self.get(category_id)
        children: dict[str, list[str]] = {c.id: [] for c in self._categories}
        for c in self._categories:
            if c.parent_id is not None:
                children[c.parent_id].append(c.id)
        out: set[str] = set()
        stack = [category_id]
        while stack:
            cur = stack.pop()
            if cur in out:
                continue
            out.add(cur)
            stack.extend(children[cur])
        return out


def _parse_color(raw, category_id: str) -> RGB:
    if (not isinstance(raw, (list, tuple)) or len(raw) != 3
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in raw)):
        raise BadColor(f"category {category_id!r}: color must be [r, g, b] integers")
    if not all(0 <= v <= 255 for v in raw):
        raise BadColor(f"category {category_id!r}: color component outside 0-255: {list(raw)}")
    return (raw[0], raw[1], raw[2])


def load_ontology(text: str) -> Ontology:
    """Load and validate the category config (see the JSON schema in the README)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJson(f"invalid ontology JSON: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("categories"), list):
        raise OntologyConfigError('ontology config must be {"categories": [...]}')
    categories = []
    for raw in doc["categories"]:
        if not isinstance(raw, dict) or not isinstance(raw.get("id"), str) or not raw["id"]:
            raise OntologyConfigError(f"category entry needs a string id: {raw!r}")
        cid = raw["id"]
        color = _parse_color(raw["color"], cid) if raw.get("color") is not None else None
        height = raw.get("default_height_m")
        if height is not None:
            if not isinstance(height, (int, float)) or isinstance(height, bool) or height < 0:
                raise OntologyConfigError(
                    f"category {cid!r}: default_height_m must be a non-negative number")
            height = float(height)
        categories.append(Category(
            id=cid,
            label=raw.get("label") or cid,
            color=color,
            icon_id=raw.get("icon_id"),
            parent_id=raw.get("parent_id"),
            default_height_m=height,
        ))
    return Ontology(categories)
