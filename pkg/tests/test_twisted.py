"""Tests for twisted conjugacy partitions and the checks built on them."""
import pytest

from app.core.exceptions import (
    DegenerateTorusError,
    EnumerationCapError,
    FieldTooSmallError,
    ValidationError,
)
from app.core.config import EnumerationConfig
from app.services.lie_processing import rootsystem, twisted as twisted_module
from app.services.lie_processing.automorphisms import (
    Conjugation,
    DiagonalCycleTwist,
    DiagonalInverse,
    Identity,
    Inner,
)
from app.services.lie_processing.chevgroup import (
    DirectProduct,
    GroupElement,
    classical,
    diagonal,
    scalar_center,
)
from app.services.lie_processing.scalars import PrimeField
from app.services.lie_processing.twisted import TwistedConjugacyService, solve_unipotent


@pytest.mark.parametrize("kind,n,p,R", [("SL", 2, 3, 7), ("SL", 2, 5, 9), ("U", 3, 3, 11), ("B2", 2, 3, 6)])
def test_ordinary_class_numbers(twisted, kind, n, p, R):
    G = classical(kind, n, p)
    partition = twisted.reidemeister(G, Identity(G))
    assert partition.R == R
    assert twisted.brute_force_class_count(G, Identity(G)) == R


def test_partition_is_canonical(twisted):
    G = classical("SL", 2, 3)
    partition = twisted.reidemeister(G, Identity(G))
    reps = [c.representative for c in partition.classes]
    assert [G.encode(r) for r in reps] == sorted(G.encode(r) for r in reps)
    assert reps[0] == min(G.elements(), key=G.encode)
    assert sum(c.size for c in partition.classes) == 24
    for c in partition.classes:
        assert c.members[0] == c.representative
        assert len(c.members) == c.size
    assert partition.class_index(G.identity) == partition.class_index(reps[partition.class_index(G.identity)])


def test_large_classes_keep_counts_only():
    service = TwistedConjugacyService(EnumerationConfig(CLASS_MATERIALIZE_LIMIT=2), seed=0)
    G = classical("D", 2, 5)
    partition = service.reidemeister(G, DiagonalInverse(G))
    assert partition.R == 4
    assert all(c.members is None for c in partition.classes)
    assert service.partition_check(partition, DiagonalInverse(G))["passed"]


def test_reidemeister_respects_cap():
    service = TwistedConjugacyService(EnumerationConfig(ENUMERATION_CAP=10), seed=0)
    G = classical("SL", 2, 3)
    with pytest.raises(EnumerationCapError):
        service.reidemeister(G, Identity(G))


@pytest.mark.parametrize("n,p", [(1, 5), (2, 5), (3, 7)])
def test_diagonal_inverse_gives_square_classes(twisted, n, p):
    G = classical("D", n, p)
    phi = DiagonalInverse(G)
    partition = twisted.reidemeister(G, phi)
    assert partition.R == 2 ** n
    squares = {diagonal([a * a % p for a in t], p) for t in _diagonals(n, p)}
    identity_class = partition.classes[partition.class_index(G.identity)]
    assert set(identity_class.members) == squares


def _diagonals(n, p):
    if n == 0:
        yield []
        return
    for rest in _diagonals(n - 1, p):
        for t in range(1, p):
            yield rest + [t]


@pytest.mark.parametrize("n,p,r", [(2, 5, 1), (2, 7, 2), (2, 7, 3), (3, 5, 2)])
def test_cycle_twist_matches_gcd(twisted, n, p, r):
    G = classical("D", n, p)
    phi = DiagonalCycleTwist(G, r).validate()
    R = twisted.reidemeister(G, phi).R
    assert R == twisted.expected_cycle_twist_R(r, p)
    assert len(twisted.fixed_subgroup(G, phi)) == R


def test_unipotent_conjugation_has_one_class(twisted):
    U = classical("U", 3, 5)
    phi = Conjugation(U, diagonal([1, 2, 4], 5), "conj:d=1,2,4").validate()
    assert twisted.reidemeister(U, phi).R == 1
    assert twisted.fixed_subgroup(U, phi) == [U.identity]
    assert twisted.coincidence_surjective(U, phi)
    assert twisted.brute_force_class_count(U, phi) == 1


def test_twisted_class_orbit(twisted):
    G = classical("SL", 2, 3)
    assert twisted.twisted_class(G, Identity(G), G.identity) == [G.identity]
    x = GroupElement([[1, 1], [0, 1]], 3)
    orbit = twisted.twisted_class(G, Identity(G), x)
    partition = twisted.reidemeister(G, Identity(G))
    assert orbit == partition.classes[partition.class_index(x)].members
    with pytest.raises(ValidationError):
        twisted.twisted_class(G, Identity(G), diagonal([1, 2], 3))


def test_fixed_subgroup_and_coincidence(twisted):
    G = classical("D", 1, 5)
    assert len(twisted.fixed_subgroup(G, Identity(G))) == 4
    assert not twisted.coincidence_surjective(G, Identity(G))


def test_automorphism_of_another_group_rejected(twisted):
    G = classical("D", 3, 5)
    phi = Identity(classical("D", 2, 5))
    with pytest.raises(ValidationError, match="acts on D_2"):
        twisted.reidemeister(G, phi)
    with pytest.raises(ValidationError):
        twisted.fixed_subgroup(G, phi)


def test_partition_check(twisted):
    G = classical("SL", 2, 3)
    g = GroupElement([[1, 1], [0, 1]], 3)
    phi = Inner(G, g)
    result = twisted.partition_check(twisted.reidemeister(G, phi), phi)
    assert result["passed"]
    assert result["checked"] == 24


def test_inner_shift(twisted):
    G = classical("SL", 2, 5)
    g = GroupElement([[1, 2], [0, 1]], 5)
    result = twisted.inner_shift_check(G, Identity(G), g)
    assert result["passed"]
    assert result["R_phi"] == result["R_shifted"] == 9
    assert twisted.inner_shift_check(G, Identity(G), G.identity)["passed"]


def test_inner_shift_on_diagonal(twisted):
    G = classical("D", 2, 7)
    result = twisted.inner_shift_check(G, DiagonalInverse(G), diagonal([3, 5], 7))
    assert result["passed"]
    assert result["R_phi"] == 4


def test_short_exact_sequence_bound(twisted):
    G = classical("SL", 2, 3)
    result = twisted.ses_check(G, scalar_center(2, PrimeField(3)), Identity(G))
    assert result["passed"]
    assert result["R_phi"] == 7
    assert result["R_quotient"] == 4


def test_product_reduction(twisted):
    sl = classical("SL", 2, 3)
    P = DirectProduct([sl, sl])
    g = GroupElement([[1, 1], [0, 1]], 3)
    result = twisted.product_twist_analysis(P, [Inner(sl, g), Identity(sl)], (1, 0))
    assert result["passed"]
    assert result["R"] == 7
    assert result["cycles"] == [{"cycle": [1, 2], "composite": "compose:inner,identity", "R": 7}]


def test_product_without_swap_multiplies(twisted):
    d = classical("D", 1, 7)
    P = DirectProduct([d, d])
    result = twisted.product_twist_analysis(P, [DiagonalInverse(d), Identity(d)], (0, 1))
    assert result["passed"]
    assert result["product_of_cycle_R"] == 2 * 6
    assert result["R"] == 12


def test_solve_unipotent_small_case():
    y = solve_unipotent(diagonal([1, 2], 5), GroupElement([[1, 1], [0, 1]], 5))
    assert y.tolist() == [[1, 3], [0, 1]]


def test_solve_unipotent_rejects_bad_input():
    g = GroupElement([[1, 1], [0, 1]], 5)
    with pytest.raises(DegenerateTorusError):
        solve_unipotent(diagonal([2, 2], 5), g)
    with pytest.raises(ValidationError):
        solve_unipotent(GroupElement([[1, 1], [0, 2]], 5), g)
    with pytest.raises(ValidationError):
        solve_unipotent(diagonal([1, 2], 5), GroupElement([[1, 0], [1, 1]], 5))
    with pytest.raises(ValidationError):
        solve_unipotent(diagonal([1, 2], 7), g)


@pytest.mark.parametrize("n,p", [(2, 5), (3, 7), (4, 11)])
def test_solve_unipotent_trials(twisted, n, p):
    result = twisted.solve_unipotent_trials(n, p, [1, 2, 4, 8][:n], 25)
    assert result["passed"]
    assert result["checked"] == 25


def test_unipo_torus_search():
    a2 = rootsystem.build("A", 2)
    assert twisted_module.unipo_torus_search(a2, 7) == (1, 2)
    for p in (2, 3):
        with pytest.raises(FieldTooSmallError):
            twisted_module.unipo_torus_search(a2, p)


def test_unipotent_torus_analysis(twisted, basis):
    result = twisted.unipotent_torus_analysis(basis("A", 2), 7)
    assert result["passed"]
    assert result["torus"] == [1, 2]
    assert result["unipotent_order"] == 343
    assert result["fixed_order"] == 1


@pytest.mark.parametrize("p,hom", [(3, True), (5, True), (7, False)])
def test_borel_displayed_map(twisted, p, hom):
    result = twisted.borel2_analysis(p)
    assert result["passed"]
    assert result["displayed_map_homomorphism"] is hom
    assert result["order"] == p * (p - 1)
    assert result["R_identity"] == result["R_identity_brute_force"]
    assert (result["displayed_map_failing_pair"] is None) is hom


def test_borel_needs_odd_prime(twisted):
    with pytest.raises(ValidationError):
        twisted.borel2_analysis(2)
