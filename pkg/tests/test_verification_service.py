"""Tests for the verify suites."""
import numpy as np
import pytest

from app.cli.router import EXIT_FAILURE, EXIT_OK, exit_code_for
from app.core.config import EnumerationConfig, VerificationConfig
from app.schemas.models import CheckResult, Suite, SuiteReport
from app.services.group_theory_service import GroupTheoryService
from app.services.verification_service import VerificationService


@pytest.fixture
def quick_service(repository):
    """Service whose growth grids stay small."""
    config = VerificationConfig(SL2_GROWTH_PRIMES=(3, 5, 7), BOREL_GROWTH_PRIMES=(3, 5, 7),
                                UNIPOTENT_SOLVER_TRIALS=20)
    return GroupTheoryService(repository, EnumerationConfig(), config, seed=0)


def _failures(report):
    return [(r.name, r.detail) for r in report.results if not r.passed]


def test_filtered_chevalley_relations(service):
    report = service.run_suite(Suite.CHEVALLEY_RELATIONS, type_label="A", rank=1, p=3)
    assert report.passed, _failures(report)
    names = [r.name for r in report.results]
    assert len(names) == 9
    assert "rank-one subgroup order A1 p=3" in names
    assert "jacobi A1" in names
    rank_one = next(r for r in report.results if r.name.startswith("rank-one"))
    assert rank_one.detail == "order=12; expected=12"


def test_rank_one_subgroup_is_sl2_when_some_pairing_is_odd(service):
    report = service.run_suite(Suite.CHEVALLEY_RELATIONS, type_label="A", rank=2, p=3)
    rank_one = next(r for r in report.results if r.name.startswith("rank-one"))
    assert rank_one.checked == 24
    assert report.passed, _failures(report)


def test_lemmas(service):
    report = service.run_suite(Suite.LEMMAS)
    assert report.passed, _failures(report)
    names = [r.name for r in report.results]
    assert sum(1 for n in names if n.startswith("|Gamma|")) == len(VerificationConfig.GAMMA_TABLE)
    assert "torus action on U A2 p=7" in names
    assert any(n.startswith("product twist reduction") for n in names)
    assert any(n == "fixed torus D4 (1 3 4)" for n in names)
    flip = next(r for r in report.results if r.name == "diagram conjugation A2 (1 2) p=5")
    assert "roots_with_positive_sign=4" in flip.detail
    assert "signed_h_form_misses=2" in flip.detail


def test_worked_examples_suite(quick_service):
    report = quick_service.run_suite(Suite.PAPER_EXAMPLES)
    assert report.passed, _failures(report)
    rows = {r.name: r for r in report.results}
    assert "R=2" in rows["coordinatewise twist U_2(F_5) x D_1(F_5)"].detail
    assert "R=4" in rows["coordinatewise twist D_2(F_5) x U_3(F_5)"].detail
    assert "R=[7, 9, 11]" in rows["R(identity) grows on SL_2(F_p)"].detail
    assert rows["diag-cycle-twist D_3(F_7) r=3"].passed


def test_reports_are_reproducible(service, repository):
    first = service.run_suite(Suite.CHEVALLEY_RELATIONS, type_label="A", rank=1, p=5)
    again = GroupTheoryService(repository, EnumerationConfig(), VerificationConfig(), seed=0)
    second = again.run_suite(Suite.CHEVALLEY_RELATIONS, type_label="A", rank=1, p=5)
    assert first.model_dump() == second.model_dump()


def test_suite_runs_reseed(service):
    verifier = VerificationService(service)
    service.twisted.rng.integers(100, size=5)
    verifier.run(Suite.CHEVALLEY_RELATIONS, type_label="A", rank=1, p=2)
    # chevalley-relations never draws from the twisted service
    expected = np.random.default_rng(service.seed).integers(1000, size=3)
    assert list(service.twisted.rng.integers(1000, size=3)) == list(expected)


def test_failed_suite_exits_nonzero():
    failed = SuiteReport(suite=Suite.LEMMAS, seed=0, passed=False,
                         results=[CheckResult(name="x", passed=False)])
    assert exit_code_for(failed) == EXIT_FAILURE
    passed = SuiteReport(suite=Suite.LEMMAS, seed=0, passed=True, results=[])
    assert exit_code_for(passed) == EXIT_OK
