"""Tests for the on-disk structure-constant cache."""
import json

import pytest

from app.core.exceptions import CacheError
from app.repositories.structure_constant_repository import StructureConstantRepository


def test_roundtrip(repository, basis, cache_dir):
    cb = basis("A", 2)
    repository.save("A", 2, cb.constants)
    assert repository.load("A", 2) == cb.constants
    assert repository.load("a", 2) == cb.constants
    assert [p.name for p in cache_dir.iterdir()] == ["A2_v1.json"]


def test_file_format(repository, basis):
    repository.save("A", 1, basis("A", 1).constants)
    payload = json.loads(repository.path_for("A", 1).read_text(encoding="utf-8"))
    assert payload["type"] == "A"
    assert payload["rank"] == 1
    assert payload["version"] == 1
    assert payload["signs_convention"] == "extraspecial-positive"
    assert payload["constants"] == []


def test_miss_returns_none(repository):
    assert repository.load("D", 4) is None


def test_corrupt_file_is_ignored(repository, cache_dir):
    cache_dir.mkdir(parents=True)
    repository.path_for("A", 2).write_text("{not json", encoding="utf-8")
    assert repository.load("A", 2) is None


def test_stale_record_is_ignored(repository, basis):
    repository.save("A", 2, basis("A", 2).constants)
    path = repository.path_for("A", 2)
    payload = json.loads(path.read_text(encoding="utf-8"))
    payload["signs_convention"] = "something-else"
    path.write_text(json.dumps(payload), encoding="utf-8")
    assert repository.load("A", 2) is None


def test_mismatched_type_is_ignored(repository, basis):
    repository.save("A", 2, basis("A", 2).constants)
    repository.path_for("A", 2).rename(repository.path_for("G", 2))
    assert repository.load("G", 2) is None


def test_unwritable_directory(tmp_path, basis):
    blocker = tmp_path / "blocker"
    blocker.write_text("", encoding="utf-8")
    repository = StructureConstantRepository(str(blocker))
    with pytest.raises(CacheError) as info:
        repository.save("A", 2, basis("A", 2).constants)
    assert info.value.code == 5300
