"""Tests for the orchestrating group-theory service and its reports."""
import pytest

from app.core.config import EnumerationConfig, VerificationConfig
from app.core.exceptions import (
    AutomorphismError,
    EnumerationCapError,
    FieldArithmeticError,
    RootSystemError,
    ValidationError,
)
from app.cli.specs import parse_group_spec, parse_phi_spec
from app.services.group_theory_service import (
    UNIPOTENT_SHADOW_NOTE,
    GroupTheoryService,
    render_element,
)
from app.services.lie_processing.chevgroup import ChevalleyGroup, GroupElement, classical
from app.services.lie_processing.liealgebra import structure_constants


def _reidemeister(service, group, phi):
    return service.reidemeister_report(parse_group_spec(group), parse_phi_spec(phi))


def test_root_system_report(service):
    report = service.root_system_report("A", 2)
    assert report.root_count == 6
    assert report.roots[:3] == [[0, 1], [1, 0], [1, 1]]
    assert report.cartan_matrix == [[2, -1], [-1, 2]]
    assert report.gamma == ["()", "(1 2)"]
    with pytest.raises(RootSystemError):
        service.root_system_report("B", 1)


def test_gamma_report(service):
    report = service.gamma_report("d", 4)
    assert report.type == "D"
    assert report.order == 6
    assert report.elements[0] == "()"


def test_chevalley_basis_is_cached(service, repository):
    cb = service.chevalley_basis("A", 2)
    assert service.chevalley_basis("A", 2) is cb
    assert repository.load("A", 2) == cb.constants
    fresh = GroupTheoryService(repository, EnumerationConfig(), VerificationConfig())
    assert fresh.chevalley_basis("A", 2).constants == cb.constants


def test_inconsistent_cache_is_recomputed(service, repository, basis):
    constants = dict(basis("A", 2).constants)
    constants[((1, 0), (0, 1))] = 5
    repository.save("A", 2, constants)
    cb = service.chevalley_basis("A", 2)
    assert cb.constants == basis("A", 2).constants
    assert repository.load("A", 2) == cb.constants


def test_service_without_cache():
    service = GroupTheoryService(None, EnumerationConfig(), VerificationConfig())
    assert service.chevalley_basis("G", 2).constants == structure_constants(service.root_system("G", 2)).constants


def test_build_group(service):
    adjoint = service.build_group(parse_group_spec("A:1:3"))
    assert isinstance(adjoint, ChevalleyGroup)
    assert adjoint.order() == 12
    assert service.build_group(parse_group_spec("A:1:3")) is adjoint
    assert service.build_group(parse_group_spec("A:1:3:sc")).order() == 24
    product = service.build_group(parse_group_spec("prod:D:1:5^2"))
    assert product.order() == 16
    with pytest.raises(ValidationError):
        service.build_group(parse_group_spec("B:2:3:sc"))
    with pytest.raises(FieldArithmeticError):
        service.build_group(parse_group_spec("SL:2:4"))


def test_evaluate_word(service):
    sl = classical("SL", 2, 3)
    g1, g2 = sl.generators[0], sl.generators[1]
    assert service.evaluate_word(sl, [[1, 1], [2, -1]]) == sl.multiply(g1, sl.inverse(g2))
    assert service.evaluate_word(sl, []) == sl.identity
    with pytest.raises(ValidationError):
        service.evaluate_word(sl, [[3, 1]])


@pytest.mark.parametrize(
    "group,phi,error",
    [("SL:2:3", "diagram:(1 2)", AutomorphismError),
     ("B:2:3", "diagram:(1 2)", AutomorphismError),
     ("U:3:5", "conj:d=1,2", ValidationError),
     ("U:3:5", "conj:d=1,5,2", ValidationError),
     ("SL:2:3", "product:identity;identity", AutomorphismError),
     ("prod:D:1:5^2", "product:identity", ValidationError),
     ("prod:D:1:5^2", "diag-inverse", AutomorphismError),
     ("U:2:5", "conj:d=1,0", ValidationError)],
)
def test_bad_automorphisms(service, group, phi, error):
    G = service.build_group(parse_group_spec(group))
    with pytest.raises(error):
        service.build_automorphism(G, parse_phi_spec(phi))


def test_unvalidated_automorphism(service):
    G = service.build_group(parse_group_spec("D:2:5"))
    phi = service.build_automorphism(G, parse_phi_spec("diag-cycle-twist:r=1"), validate=False)
    assert not phi.validated
    assert service.build_automorphism(G, parse_phi_spec("diag-cycle-twist:r=1")).validated


def test_reidemeister_report_for_sl2(service):
    report = _reidemeister(service, "SL:2:3", "identity")
    assert report.R == 7
    assert len(report.classes) == 7
    assert sum(c.size for c in report.classes) == 24
    assert report.classes[0].rep == [[0, 1], [2, 0]]
    assert not report.coincidence_surjective
    assert report.fixed_subgroup_order == 24
    assert report.note is None


def test_reidemeister_report_for_unipotent_conjugation(service):
    report = _reidemeister(service, "U:3:5", "unipotent-conj:d=1,2,4")
    assert report.R == 1
    assert report.coincidence_surjective
    assert report.fixed_subgroup_order == 1
    assert report.note == UNIPOTENT_SHADOW_NOTE
    assert report.phi == "unipotent-conj:d=1,2,4"


def test_reidemeister_report_diagram(service):
    report = _reidemeister(service, "A:2:2", "diagram:(1 2)")
    assert report.phi == "diagram:(1 2)"
    assert sum(c.size for c in report.classes) == 168
    assert report.R >= 1


def test_mixed_product_examples(service):
    two = _reidemeister(service, "prod:U:2:5*D:1:5", "product:conj:d=2,1;diag-inverse")
    assert two.R == 2
    assert len(two.classes[0].rep) == 2
    four = _reidemeister(service, "prod:D:2:5*U:3:5", "product:diag-inverse;unipotent-conj:d=1,2,4")
    assert four.R == 4


def test_swapped_product(service):
    report = _reidemeister(service, "prod:D:1:7^2", "product:diag-inverse;identity:sigma=(1 2)")
    assert report.R == 2


def test_compose_and_inner_reports(service):
    assert _reidemeister(service, "D:2:7", "compose:diag-inverse,diag-inverse").R == 36
    assert _reidemeister(service, "SL:2:5", "inner:g1*g2^-1").R == 9


def test_reidemeister_cap(repository):
    small = GroupTheoryService(repository, EnumerationConfig(ENUMERATION_CAP=10), VerificationConfig())
    with pytest.raises(EnumerationCapError):
        _reidemeister(small, "SL:2:3", "identity")


def test_validation_above_cap_uses_samples(repository):
    small = GroupTheoryService(repository, EnumerationConfig(ENUMERATION_CAP=10), VerificationConfig())
    G = small.build_group(parse_group_spec("A:1:5"))
    assert small.build_automorphism(G, parse_phi_spec("identity")).validated
    with pytest.raises(AutomorphismError, match="outside"):
        small.build_automorphism(G, parse_phi_spec("conj:d=1,2,3"))
    assert not G.is_enumerated


def test_group_build_report(service):
    report = service.group_build_report(parse_group_spec("PSL:2:5"))
    assert report.label == "PSL_2(F_5)"
    assert report.order == 60
    assert service.group_build_report(parse_group_spec("SL:2:3")).generator_count == 2


def test_torus_fixed_report(service):
    report = service.torus_fixed_report("A", 2, "(1 2)", p=5)
    assert report.witness_kind.value == "CaseII"
    assert report.alpha == [1, 2]
    assert report.nontrivial_t == 2
    assert report.verified
    assert service.torus_fixed_report("A", 3, "(1 3)").alpha == [2]
    with pytest.raises(AutomorphismError):
        service.torus_fixed_report("B", 2, "(1 2)")
    with pytest.raises(FieldArithmeticError):
        service.torus_fixed_report("A", 2, "(1 2)", p=4)


def test_solve_unipotent_report(service):
    report = service.solve_unipotent_report([1, 2], [[1, 1], [0, 1]], 5)
    assert report.y == [[1, 3], [0, 1]]
    assert report.verified
    assert service.solve_unipotent_report([6, 7], [[1, 1], [0, 1]], 5).d == [1, 2]
    with pytest.raises(ValidationError):
        service.solve_unipotent_report([1, 2], [[1, 1], [1, 1]], 5)
    with pytest.raises(FieldArithmeticError):
        service.solve_unipotent_report([1, 2], [[1, 1], [0, 1]], 6)


def test_render_element():
    m = GroupElement([[1, 2], [0, 1]], 5)
    assert render_element(m) == [[1, 2], [0, 1]]
    assert render_element((m, m)) == [[[1, 2], [0, 1]], [[1, 2], [0, 1]]]


def test_cleanup_drops_groups(service):
    first = service.build_group(parse_group_spec("SL:2:3"))
    service.cleanup()
    assert service.build_group(parse_group_spec("SL:2:3")) is not first
