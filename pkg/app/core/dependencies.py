"""
Dependency Injection
Factory functions wiring configuration, the cache repository and services
"""
from typing import Optional

from app.core.config import (
    ENUMERATION_CONFIG,
    STRUCTURE_CACHE_CONFIG,
    VERIFICATION_CONFIG,
    EnumerationConfig,
    VerificationConfig,
)
from app.repositories.base_repository import IRepository
from app.repositories.structure_constant_repository import Constants, StructureConstantRepository
from app.services.base_service import IGroupTheoryService
from app.services.group_theory_service import GroupTheoryService
from app.utils.logger import debug_logger

logger = debug_logger


def get_enumeration_config(cap: Optional[int] = None) -> EnumerationConfig:
    """
    Get enumeration configuration

    Args:
        cap: Enumeration cap from --cap; the configured default when None

    Returns:
        EnumerationConfig instance
    """
    if cap is None:
        return ENUMERATION_CONFIG
    return EnumerationConfig(ENUMERATION_CAP=cap)


def get_verification_config() -> VerificationConfig:
    return VERIFICATION_CONFIG


def get_repository(cache_dir: Optional[str] = None) -> IRepository[Constants]:
    """
    Get the structure-constant repository
    --cache-dir wins over TC_CACHE_DIR, which wins over the default directory

    Args:
        cache_dir: Directory from the command line

    Returns:
        Repository instance implementing IRepository
    """
    directory = STRUCTURE_CACHE_CONFIG.resolve_dir(cache_dir)
    logger.debug(f"Structure-constant cache at {directory}")
    return StructureConstantRepository(directory)


def get_group_theory_service(
    cache_dir: Optional[str] = None,
    cap: Optional[int] = None,
    seed: int = 0,
) -> IGroupTheoryService:
    """
    Get the group-theory service with its dependencies injected

    Args:
        cache_dir: Structure-constant cache directory
        cap: Enumeration cap
        seed: Seed for every sampled check

    Returns:
        Service instance implementing IGroupTheoryService
    """
    return GroupTheoryService(
        repository=get_repository(cache_dir),
        enumeration_config=get_enumeration_config(cap),
        verification_config=get_verification_config(),
        seed=seed,
    )
