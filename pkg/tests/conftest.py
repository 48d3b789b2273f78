"""Shared fixtures: throwaway log and cache directories, seeded generators and services."""
import os
import tempfile

# logs from the test run stay out of the working tree
os.environ.setdefault("TC_LOG_DIR", tempfile.mkdtemp(prefix="tc-logs-"))

import numpy as np
import pytest

from app.core.config import EnumerationConfig, VerificationConfig
from app.repositories.structure_constant_repository import StructureConstantRepository
from app.services.group_theory_service import GroupTheoryService
from app.services.lie_processing import rootsystem
from app.services.lie_processing.liealgebra import structure_constants
from app.services.lie_processing.torusfixed import TorusFixedService
from app.services.lie_processing.twisted import TwistedConjugacyService


@pytest.fixture
def rng():
    return np.random.default_rng(0)


@pytest.fixture
def cache_dir(tmp_path):
    return tmp_path / "structure_constants"


@pytest.fixture
def repository(cache_dir):
    return StructureConstantRepository(str(cache_dir))


@pytest.fixture
def service(repository):
    return GroupTheoryService(
        repository=repository,
        enumeration_config=EnumerationConfig(),
        verification_config=VerificationConfig(),
        seed=0,
    )


@pytest.fixture
def twisted():
    return TwistedConjugacyService(EnumerationConfig(), seed=0)


@pytest.fixture
def torus():
    return TorusFixedService(VerificationConfig(), seed=0)


@pytest.fixture(scope="session")
def basis():
    """Chevalley bases shared across the session, keyed by (type, rank)."""
    cache = {}

    def get(type_label, rank):
        key = (type_label, rank)
        if key not in cache:
            cache[key] = structure_constants(rootsystem.build(type_label, rank))
        return cache[key]

    return get
