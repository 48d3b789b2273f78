"""Tests for matrix groups, quotients, products and Chevalley group relations."""
import numpy as np
import pytest

from app.core.exceptions import (
    EnumerationCapError,
    FieldArithmeticError,
    NotNormalError,
    ValidationError,
)
from app.services.lie_processing import chevgroup
from app.services.lie_processing.chevgroup import (
    ChevalleyGroup,
    CosetGroup,
    DirectProduct,
    GroupElement,
    classical,
)
from app.services.lie_processing.scalars import PrimeField


@pytest.mark.parametrize(
    "kind,n,p,order",
    [("GL", 2, 3, 48), ("SL", 2, 3, 24), ("PSL", 2, 3, 12), ("PSL", 2, 5, 60),
     ("D", 2, 5, 16), ("U", 3, 5, 125), ("B2", 2, 5, 20), ("SL", 3, 2, 168)],
)
def test_classical_orders(kind, n, p, order):
    assert classical(kind, n, p).order() == order


def test_classical_labels():
    assert classical("Diagonal", 3, 7).label == "D_3(F_7)"
    assert classical("borel2", 5, 3).label == "B_2(F_3)"


@pytest.mark.parametrize("kind,n,p", [("XL", 2, 3), ("SL", 0, 3), ("GL", 2, 4)])
def test_classical_rejects_bad_input(kind, n, p):
    with pytest.raises((ValidationError, FieldArithmeticError)):
        classical(kind, n, p)


def test_det_and_inverse_mod():
    m = np.array([[2, 1], [1, 1]])
    assert chevgroup.det_mod(m, 5) == 1
    inv = chevgroup.inverse_mod(m, 5)
    assert np.array_equal((m @ inv) % 5, np.eye(2, dtype=np.int64))
    with pytest.raises(FieldArithmeticError):
        chevgroup.inverse_mod(np.array([[1, 2], [2, 4]]), 5)


def test_group_element_encoding_and_equality():
    a = GroupElement([[1, 1], [0, 1]], 3)
    b = GroupElement([[4, -2], [3, 1]], 3)
    assert a == b
    assert hash(a) == hash(b)
    assert a.key == bytes([0, 1, 0, 1, 0, 0, 0, 1])
    assert GroupElement([[1, 0], [0, 1]], 3).key < a.key
    assert not a.matrix.flags.writeable


def test_encoding_widens_past_16_bits():
    p = 65537
    a = GroupElement([[1, 65536], [0, 1]], p)
    assert a != GroupElement.identity(2, p)
    assert len(a.key) == 16
    assert a.key > GroupElement([[1, 65535], [0, 1]], p).key
    assert chevgroup.encoding_dtype(65521) == ">u2"
    assert chevgroup.encoding_dtype(65537) == ">u4"
    assert chevgroup.encoding_dtype(4294967311) == ">u8"


def test_unitriangular_order_for_a_large_prime():
    assert classical("U", 2, 65537).order() == 65537


def test_products_beyond_int64_rejected():
    with pytest.raises(ValidationError, match="too large"):
        classical("U", 2, 4294967311)


def test_checked_rejects_singular_and_non_square():
    with pytest.raises(ValidationError):
        GroupElement.checked([[1, 2], [2, 4]], 5)
    with pytest.raises(ValidationError):
        GroupElement.checked([[1, 2, 3]], 5)
    assert GroupElement.checked([[2, 0], [0, 3]], 5).det() == 1


def test_membership_without_enumeration():
    sl = classical("SL", 2, 3)
    assert sl.contains(chevgroup.diagonal([2, 2], 3))
    assert not sl.is_enumerated
    with pytest.raises(ValidationError):
        sl.check_member(chevgroup.diagonal([1, 2], 3))
    assert not sl.contains("not a matrix")


def test_enumeration_cap():
    with pytest.raises(EnumerationCapError) as info:
        classical("GL", 2, 3).elements(cap=10)
    assert info.value.cap == 10
    assert info.value.partial_count == 10
    assert not info.value.is_usage_error


def test_power_and_product():
    sl = classical("SL", 2, 5)
    t = GroupElement([[1, 1], [0, 1]], 5)
    assert sl.power(t, 5) == sl.identity
    assert sl.power(t, -1) == GroupElement([[1, 4], [0, 1]], 5)
    assert sl.product([t, t, t]) == GroupElement([[1, 3], [0, 1]], 5)


def test_psl_quotient_representatives():
    psl = classical("PSL", 2, 5)
    minus_one = chevgroup.diagonal([4, 4], 5)
    assert psl.representative(minus_one) == psl.identity
    x = GroupElement([[0, 1], [4, 0]], 5)
    rep = psl.representative(x)
    assert rep.key == min(x.key, (x @ minus_one).key)
    assert psl.contains(rep)
    assert len(psl.coset(x)) == 2


def test_non_normal_subgroup_rejected():
    sl = classical("SL", 2, 3)
    upper = [GroupElement([[1, k], [0, 1]], 3) for k in range(3)]
    with pytest.raises(NotNormalError):
        CosetGroup(sl, upper, "bad")


def test_subgroup_without_identity_rejected():
    sl = classical("SL", 2, 3)
    with pytest.raises(ValidationError):
        CosetGroup(sl, [GroupElement([[1, 1], [0, 1]], 3)], "bad")


def test_direct_product():
    sl = classical("SL", 2, 3)
    d = classical("D", 1, 5)
    prod = DirectProduct([sl, d])
    assert prod.label == "SL_2(F_3) x D_1(F_5)"
    assert prod.order() == 96
    assert DirectProduct([sl, sl]).label == "SL_2(F_3)^2"
    x = prod.embed(1, chevgroup.diagonal([2], 5))
    assert x[0] == sl.identity
    assert prod.contains(x)
    assert not prod.contains((sl.identity,))
    assert prod.encode(prod.identity) == sl.encode(sl.identity) + d.encode(d.identity)
    with pytest.raises(ValidationError):
        DirectProduct([])


@pytest.mark.parametrize("type_label,rank,p,order", [("A", 1, 3, 12), ("A", 2, 2, 168), ("A", 2, 3, 5616)])
def test_adjoint_orders(basis, type_label, rank, p, order):
    group = ChevalleyGroup(basis(type_label, rank), PrimeField(p))
    assert group.order() == order


def test_a2_subgroups(basis):
    group = ChevalleyGroup(basis("A", 2), PrimeField(3))
    assert group.rank_one_subgroup((1, 0)).order() == 24
    unipotent = group.positive_unipotent()
    assert unipotent.order() == 27
    assert all(chevgroup.is_unitriangular(u.matrix) for u in unipotent.elements())


def test_adjoint_membership_without_enumeration(basis):
    group = ChevalleyGroup(basis("A", 1), PrimeField(5))
    assert group.contains(group.x((1,), 3) @ group.x((-1,), 2))
    assert group.contains(group.h((1,), 2))
    assert not group.contains(chevgroup.diagonal([1, 2, 3], 5))
    assert not group.is_enumerated


def test_chevalley_elements(basis):
    cb = basis("A", 2)
    field = PrimeField(5)
    group = ChevalleyGroup(cb, field)
    assert group.x((1, 0), 0) == group.identity
    assert group.x((1, 1), 2) == chevgroup.x_alpha(cb, field, (1, 1), 2)
    assert group.h((0, 1), 1) == group.identity
    assert group.torus_element([1, 1]) == group.identity
    assert group.h((1, 0), field(2)) == chevgroup.h_alpha(cb, field, (1, 0), 2)
    with pytest.raises(FieldArithmeticError):
        group.n((1, 0), 0)
    with pytest.raises(FieldArithmeticError):
        group.x((1, 0), PrimeField(7)(1))
    with pytest.raises(ValidationError):
        group.torus_element([1])


@pytest.mark.parametrize("type_label,rank,p", [("A", 1, 3), ("A", 2, 2), ("A", 2, 5), ("G", 2, 3)])
def test_relation_checks_pass(basis, type_label, rank, p):
    cb = basis(type_label, rank)
    field = PrimeField(p)
    for check in (chevgroup.additivity_check, chevgroup.multiplicativity_check,
                  chevgroup.steinberg_conjugation_check):
        result = check(cb, field)
        assert result["passed"], result
        assert result["counterexample"] is None
        assert result["checked"] > 0


def test_group_axioms(rng):
    result = chevgroup.group_axioms_check(classical("PSL", 2, 5), rng, samples=50)
    assert result["passed"]
    assert result["checked"] == 60 + 50


def test_enumeration_is_deterministic():
    first = [g.key for g in classical("SL", 2, 5).elements()]
    second = [g.key for g in chevgroup.enumerate_group(classical("SL", 2, 5), 1000)]
    assert first == second
    assert first[0] == GroupElement.identity(2, 5).key
