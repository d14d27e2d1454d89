"""REST service and file-backed model store."""

from .api import DEFAULT_MAX_JOINT, ERROR_REGISTRY, create_app
from .store import Entity, ModelStore, load, persist

__all__ = [
    "DEFAULT_MAX_JOINT",
    "ERROR_REGISTRY",
    "Entity",
    "ModelStore",
    "create_app",
    "load",
    "persist",
]
