"""
Base service for all group-theory processing services
Provides common utilities and logging
"""
from abc import ABC, abstractmethod

import numpy as np

from app.utils.logger import debug_logger


class BaseService(ABC):
    """
    Base class for all processing services
    Provides configuration, a seeded generator and logging utilities
    """

    def __init__(self, config, seed: int = 0):
        """
        Initialize base service

        Args:
            config: Configuration object
            seed: Seed for every sampled check run by the service
        """
        self.config = config
        self.seed = seed
        self.rng = np.random.default_rng(seed)
        self.logger = debug_logger
        self._setup()

    @abstractmethod
    def _setup(self) -> None:
        """Setup method to be implemented by subclasses"""
        pass

    def log_info(self, message: str) -> None:
        """Log info message"""
        self.logger.info(message)

    def log_warning(self, message: str) -> None:
        """Log warning message"""
        self.logger.warning(message)

    def log_error(self, message: str) -> None:
        """Log error message"""
        self.logger.error(message)

    def log_debug(self, message: str) -> None:
        """Log debug message"""
        self.logger.debug(message)

    def reseed(self, seed: int) -> None:
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    @abstractmethod
    def cleanup(self) -> None:
        """Cleanup method to be implemented by subclasses"""
        pass
