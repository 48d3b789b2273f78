"""
Base Repository
Generic base repository interface with essential abstract methods
"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, Optional, TypeVar

from app.utils.logger import debug_logger

# Generic type for cached records
RecordType = TypeVar("RecordType")


class IRepository(ABC, Generic[RecordType]):
    """
    Interface for repository operations
    Only essential abstract methods are defined here
    """

    @abstractmethod
    def load(self, type_label: str, rank: int) -> Optional[RecordType]:
        """Return the cached record, or None on a miss"""
        pass

    @abstractmethod
    def save(self, type_label: str, rank: int, record: RecordType) -> None:
        """Persist a record"""
        pass


class BaseRepository(IRepository[RecordType]):
    """
    Generic file-backed repository
    Provides common initialization pattern
    Subclasses implement the record format
    """

    def __init__(self, directory: str):
        """
        Initialize repository with its storage directory

        Args:
            directory: Directory holding one file per record
        """
        self.directory = Path(directory)
        debug_logger.debug(f"{self.__class__.__name__} initialized at {self.directory}")

    @abstractmethod
    def path_for(self, type_label: str, rank: int) -> Path:
        """File path of a record - must be implemented in subclass"""
        pass
