"""FastAPI service wrapping the vividmap core."""

from vividmap.service.app import create_app
from vividmap.service.state import Settings, settings_from_env

__all__ = ["create_app", "Settings", "settings_from_env"]
