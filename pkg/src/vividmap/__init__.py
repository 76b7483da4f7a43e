"""vividmap: category-styled 2D/3D map visualization engine.

Semantically typed GeoJSON features are ingested, queried by region and
category, stylized with vivid per-category colors, filtered with
per-category opacity sliders, and rendered to deterministic SVG maps and
extruded 3D scenes - as a library, over HTTP, or from the CLI.
"""

__version__ = "0.1.0"

from vividmap import catalog, geomodel, ontology, render2d, scene3d, style
from vividmap.errors import VividmapError

__all__ = ["catalog", "geomodel", "ontology", "render2d", "scene3d", "style",
           "VividmapError", "__version__"]
