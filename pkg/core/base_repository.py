"""
Base repository implementation following Repository Pattern and SOLID principles.

Provides the abstract base class for JSON-file repositories. Each entity is
stored as one file under a root directory, named after its key.
"""
import hashlib
import json
import logging
import os
import re
import tempfile
from abc import ABC, abstractmethod
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Generic, Iterator, List, Optional, TypeVar

T = TypeVar('T')  # Entity type

logger = logging.getLogger(__name__)

_UNSAFE = re.compile(r'[^A-Za-z0-9._-]+')


class BaseRepository(ABC, Generic[T]):
    """
    Abstract file repository - Open/Closed Principle.

    Provides load/save/delete over a directory of JSON documents while
    subclasses define the entity mapping and the key.
    """

    def __init__(self, root):
        """
        Initialize repository with its storage directory.

        Args:
            root: Directory holding one JSON file per entity; created on demand
        """
        self.root = Path(root)

    @contextmanager
    def open_for_write(self, path: Path) -> Iterator:
        """
        Write to a temporary file and move it into place on success.

        Readers never observe a partially written document.
        """
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, suffix='.tmp')
        try:
            with os.fdopen(fd, 'w', encoding='utf-8') as handle:
                yield handle
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    @abstractmethod
    def _to_entity(self, data: Dict[str, Any]) -> T:
        """
        Convert a stored document to an entity - Template Method Pattern.

        Args:
            data: Parsed JSON document

        Returns:
            Entity instance
        """

    @abstractmethod
    def _to_dict(self, entity: T) -> Dict[str, Any]:
        """Convert an entity to a JSON-serializable document."""

    @abstractmethod
    def _key(self, entity: T) -> str:
        """Storage key of an entity."""

    def _path(self, key: str) -> Path:
        digest = hashlib.sha256(key.encode('utf-8')).hexdigest()[:12]
        stem = _UNSAFE.sub('_', key).strip('_')[:80]
        return self.root / f"{stem}-{digest}.json"

    def find_by_key(self, key: str) -> Optional[T]:
        """
        Load the entity stored under ``key``.

        Returns:
            Entity if found and readable, None otherwise
        """
        path = self._path(key)
        if not path.exists():
            return None
        try:
            with path.open(encoding='utf-8') as handle:
                return self._to_entity(json.load(handle))
        except (OSError, ValueError, KeyError) as e:
            logger.warning("Ignoring unreadable cache entry %s: %s", path.name, e)
            return None

    def find_all(self) -> List[T]:
        if not self.root.exists():
            return []
        entities = []
        for path in sorted(self.root.glob('*.json')):
            with path.open(encoding='utf-8') as handle:
                entities.append(self._to_entity(json.load(handle)))
        return entities

    def save(self, entity: T) -> T:
        path = self._path(self._key(entity))
        with self.open_for_write(path) as handle:
            json.dump(self._to_dict(entity), handle, sort_keys=True, indent=2)
        logger.debug("Stored %s", path.name)
        return entity

    def delete(self, key: str) -> bool:
        """
        Delete the entity stored under ``key``.

        Returns:
            True if a file was removed, False otherwise
        """
        path = self._path(key)
        if path.exists():
            path.unlink()
            return True
        return False

    def count(self) -> int:
        return len(list(self.root.glob('*.json'))) if self.root.exists() else 0
