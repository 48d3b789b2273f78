"""
Configuration settings for the twisted-conjugacy toolkit.
"""
from pathlib import Path
from dataclasses import dataclass
from typing import Optional, Tuple
from dotenv import load_dotenv
import os

from app.core.exceptions import ConfigurationError

load_dotenv()

ROOT_DIR = Path(__file__).resolve().parents[2]


@dataclass
class PathConfig:
    """Path Configuration settings"""
    ROOT_DIR: str = ROOT_DIR
    CACHE_DIR: str = ".structure_constants"

    @property
    def default_cache_dir(self) -> str:
        return str(Path(self.ROOT_DIR) / self.CACHE_DIR)


class StructureCacheConfig:
    """
    Structure-constant cache settings.
    Values are driven by environment variables with safe fallbacks.
    """

    VERSION: int = 1
    SIGNS_CONVENTION: str = "extraspecial-positive"

    @property
    def CACHE_DIR(self) -> Optional[str]:
        value = os.getenv("TC_CACHE_DIR", "").strip()
        if value and Path(value).exists() and not Path(value).is_dir():
            raise ConfigurationError(f"TC_CACHE_DIR={value} is not a directory")
        return value or None

    def resolve_dir(self, override: Optional[str] = None) -> str:
        """--cache-dir wins over TC_CACHE_DIR, which wins over the default."""
        return override or self.CACHE_DIR or PATH_CONFIG.default_cache_dir


@dataclass
class EnumerationConfig:
    """Limits for group enumeration and orbit bookkeeping"""

    # ── Enumeration ───────────────────────────────────────────────────────
    ENUMERATION_CAP: int              = 2_000_000
    CLASS_MATERIALIZE_LIMIT: int      = 10_000    # classes above this keep only counts
    CLASS_CLOSURE_SAMPLES: int        = 50        # random g per element in closure checks

    # ── Subgroup checks ───────────────────────────────────────────────────
    SUBGROUP_PAIR_CHECK_LIMIT: int    = 250_000   # |H|^2 above this is sampled
    SUBGROUP_PAIR_SAMPLES: int        = 10_000

    # ── Automorphism validation above the cap ────────────────────────────
    VALIDATION_SAMPLE_PAIRS: int      = 10_000
    VALIDATION_WORD_POOL: int         = 64        # random words in the generators
    VALIDATION_WORD_LENGTH: int       = 12


@dataclass
class VerificationConfig:
    """Defaults for the verify suites and sampled checks"""

    DEFAULT_SEED: int               = 0
    INNER_SHIFT_TRIALS: int         = 20
    UNIPOTENT_SOLVER_TRIALS: int    = 100
    TORUS_WITNESS_PRIMES: Tuple[int, ...] = (3, 5, 7)
    DIVIDED_POWER_ORDER: int        = 4

    # ── Acceptance grids ──────────────────────────────────────────────────
    RELATION_TYPES: Tuple[Tuple[str, int], ...] = (("A", 1), ("A", 2), ("A", 3), ("D", 4))
    RELATION_PRIMES: Tuple[int, ...] = (2, 3, 5)
    STRUCTURE_TYPES: Tuple[Tuple[str, int], ...] = (
        ("A", 1), ("A", 2), ("A", 3), ("D", 4), ("G", 2),
    )
    GAMMA_TABLE: Tuple[Tuple[str, int, int], ...] = (
        ("A", 1, 1), ("A", 2, 2), ("A", 3, 2), ("A", 4, 2), ("A", 5, 2), ("A", 6, 2),
        ("B", 2, 1), ("C", 3, 1), ("D", 4, 6), ("D", 5, 2), ("E", 6, 2),
        ("E", 7, 1), ("E", 8, 1), ("F", 4, 1), ("G", 2, 1),
    )
    DIAGRAM_TYPES: Tuple[Tuple[str, int], ...] = (("A", 2), ("A", 3), ("D", 4), ("E", 6))
    DIAGRAM_PRIME: int = 5
    STEP1_TYPES: Tuple[Tuple[str, int], ...] = (
        ("A", 2), ("A", 3), ("A", 4), ("A", 5), ("D", 4), ("D", 5), ("E", 6),
    )
    STEP1_PRIME: int = 5
    SL2_GROWTH_PRIMES: Tuple[int, ...] = (3, 5, 7, 11)
    BOREL_GROWTH_PRIMES: Tuple[int, ...] = (3, 5, 7)


# ── Singleton Instances ───────────────────────────────────────────────────────

PATH_CONFIG             = PathConfig()
STRUCTURE_CACHE_CONFIG  = StructureCacheConfig()
ENUMERATION_CONFIG      = EnumerationConfig()
VERIFICATION_CONFIG     = VerificationConfig()
