"""
Structure Constant Repository
JSON cache of Chevalley-basis structure constants, one file per root system
Writes go through a temporary file and an atomic rename
"""
import json
import os
import tempfile
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from pydantic import ValidationError as SchemaError

from app.core.config import STRUCTURE_CACHE_CONFIG
from app.core.exceptions import CacheError
from app.repositories.base_repository import BaseRepository
from app.schemas.models import StructureConstantCache, StructureConstantEntry
from app.utils.logger import debug_logger

Constants = Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], int]


class StructureConstantRepository(BaseRepository[Constants]):
    """
    Repository for structure-constant tables
    Keyed by (type, rank, convention version)
    """

    def __init__(self, directory: str):
        super().__init__(directory)
        self.version = STRUCTURE_CACHE_CONFIG.VERSION
        self.signs_convention = STRUCTURE_CACHE_CONFIG.SIGNS_CONVENTION

    def path_for(self, type_label: str, rank: int) -> Path:
        return self.directory / f"{type_label.upper()}{rank}_v{self.version}.json"

    def load(self, type_label: str, rank: int) -> Optional[Constants]:
        """
        Read a cached table

        Returns:
            Constants mapping, or None on a miss, a stale version or a corrupt file
        """
        path = self.path_for(type_label, rank)
        if not path.is_file():
            return None
        try:
            record = StructureConstantCache.model_validate_json(path.read_text(encoding="utf-8"))
        except (OSError, SchemaError) as e:
            debug_logger.warning(f"Ignoring unreadable structure-constant cache {path}: {e}")
            return None
        if (
            record.version != self.version
            or record.signs_convention != self.signs_convention
            or record.type != type_label.upper()
            or record.rank != rank
        ):
            debug_logger.debug(f"Cache {path} does not match {type_label}{rank} v{self.version}")
            return None
        return {(tuple(e.alpha), tuple(e.beta)): e.N for e in record.constants}

    def save(self, type_label: str, rank: int, record: Constants) -> None:
        """
        Write a table atomically

        Raises:
            CacheError: If the directory or file cannot be written
        """
        entries: List[StructureConstantEntry] = [
            StructureConstantEntry(alpha=list(a), beta=list(b), N=n)
            for (a, b), n in sorted(record.items())
        ]
        payload = StructureConstantCache(
            version=self.version,
            type=type_label.upper(),
            rank=rank,
            constants=entries,
            signs_convention=self.signs_convention,
        )
        path = self.path_for(type_label, rank)
        tmp_name = None
        try:
            self.directory.mkdir(parents=True, exist_ok=True)
            with tempfile.NamedTemporaryFile(
                "w", encoding="utf-8", dir=self.directory, suffix=".tmp", delete=False
            ) as handle:
                tmp_name = handle.name
                json.dump(payload.model_dump(), handle, indent=1)
            os.replace(tmp_name, path)
            debug_logger.debug(f"Cached {len(entries)} structure constants at {path}")
        except OSError as e:
            if tmp_name and os.path.exists(tmp_name):
                os.remove(tmp_name)
            raise CacheError(f"cannot write structure-constant cache {path}: {e}")

