"""File-backed entity store with optimistic concurrency.

Entities are canonical byte documents (risk JSON, Bowtie XML, DAG JSON)
keyed by kind and id. Every write is a compare-and-set against the
entity's revision: concurrent writers cannot silently overwrite each
other. Persistence lays out one file per entity plus an index mapping
entity ids to revisions.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from pathlib import Path

from ..errors import EngineError

KINDS = ("risks", "bowties", "dags")
_EXTENSIONS = {"risks": ".json", "bowties": ".xml", "dags": ".json"}


@dataclass(frozen=True)
class Entity:
    kind: str
    id: str
    revision: int
    data: bytes


class ModelStore:
    """In-memory store; use persist/load for the on-disk representation."""

    def __init__(self):
        self._entities: dict[tuple[str, str], Entity] = {}
        self._lock = threading.Lock()

    def get(self, kind: str, entity_id: str) -> Entity:
        entity = self._entities.get((kind, entity_id))
        if entity is None:
            raise EngineError("NOT_FOUND", f"no {kind[:-1]} with id {entity_id!r}")
        return entity

    def exists(self, kind: str, entity_id: str) -> bool:
        return (kind, entity_id) in self._entities

    def list(self, kind: str) -> list[Entity]:
        return sorted(
            (e for (k, _), e in self._entities.items() if k == kind),
            key=lambda e: e.id,
        )

    def put(self, kind: str, entity_id: str, data: bytes,
            expected_revision: int | None) -> Entity:
        """Compare-and-set write.

        expected_revision None (or 0) creates a new entity and conflicts if
        one exists; otherwise the given revision must match the current one.
        """
        if kind not in KINDS:
            raise EngineError("VALIDATION", f"unknown entity kind {kind!r}")
        with self._lock:
            current = self._entities.get((kind, entity_id))
            if current is None:
                if expected_revision not in (None, 0):
                    raise EngineError(
                        "REVISION_CONFLICT",
                        f"{kind[:-1]} {entity_id!r} does not exist at revision "
                        f"{expected_revision}",
                    )
                entity = Entity(kind, entity_id, 1, data)
            else:
                if expected_revision is None:
                    raise EngineError(
                        "ALREADY_EXISTS",
                        f"{kind[:-1]} {entity_id!r} already exists at revision "
                        f"{current.revision}; supply the expected revision to update",
                    )
                if expected_revision != current.revision:
                    raise EngineError(
                        "REVISION_CONFLICT",
                        f"{kind[:-1]} {entity_id!r} is at revision {current.revision}, "
                        f"write expected {expected_revision}",
                    )
                entity = Entity(kind, entity_id, current.revision + 1, data)
            self._entities[(kind, entity_id)] = entity
            return entity

    def upsert_unchanged_aware(self, kind: str, entity_id: str, data: bytes) -> Entity:
        """Write regardless of revision, but leave the entity untouched when
        the bytes are identical (keeps derived artifacts at stable revisions)."""
        with self._lock:
            current = self._entities.get((kind, entity_id))
            if current is not None and current.data == data:
                return current
            revision = 1 if current is None else current.revision + 1
            entity = Entity(kind, entity_id, revision, data)
            self._entities[(kind, entity_id)] = entity
            return entity

    def snapshot(self) -> dict[str, dict[str, int]]:
        index: dict[str, dict[str, int]] = {kind: {} for kind in KINDS}
        for (kind, entity_id), entity in sorted(self._entities.items()):
            index[kind][entity_id] = entity.revision
        return index


def persist(store: ModelStore, path: str | Path) -> None:
    """Write one file per entity plus index.json; output is deterministic."""
    root = Path(path)
    root.mkdir(parents=True, exist_ok=True)
    index = store.snapshot()
    for kind in KINDS:
        kind_dir = root / kind
        kind_dir.mkdir(exist_ok=True)
        for entity in store.list(kind):
            (kind_dir / f"{entity.id}{_EXTENSIONS[kind]}").write_bytes(entity.data)
    (root / "index.json").write_text(
        json.dumps(index, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def load(path: str | Path) -> ModelStore:
    """Load a persisted store; a missing or corrupt entity names itself."""
    root = Path(path)
    index_path = root / "index.json"
    if not index_path.exists():
        raise EngineError("NOT_FOUND", f"no store index at {index_path}")
    try:
        index = json.loads(index_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise EngineError("PARSE_ERROR", f"corrupt store index: {exc}") from exc

    store = ModelStore()
    for kind in KINDS:
        for entity_id, revision in sorted(index.get(kind, {}).items()):
            file_path = root / kind / f"{entity_id}{_EXTENSIONS[kind]}"
            if not file_path.exists():
                raise EngineError(
                    "NOT_FOUND",
                    f"store index references missing {kind[:-1]} {entity_id!r} "
                    f"({file_path})",
                )
            data = file_path.read_bytes()
            _verify(kind, entity_id, data)
            with store._lock:
                store._entities[(kind, entity_id)] = Entity(
                    kind, entity_id, int(revision), data
                )
    return store


def _verify(kind: str, entity_id: str, data: bytes) -> None:
    from ..bowtie import parse_xml
    from ..heatmap import load_risk
    from ..transform import load_result

    try:
        if kind == "risks":
            load_risk(data)
        elif kind == "bowties":
            parse_xml(data)
        else:
            load_result(data)
    except EngineError as exc:
        raise EngineError(
            "PARSE_ERROR", f"corrupt {kind[:-1]} {entity_id!r}: {exc.message}"
        ) from exc
    except Exception as exc:  # malformed json and friends
        raise EngineError(
            "PARSE_ERROR", f"corrupt {kind[:-1]} {entity_id!r}: {exc}"
        ) from exc
