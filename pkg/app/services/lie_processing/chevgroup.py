"""
Finite matrix groups over GF(p).

Adjoint Chevalley groups are generated by x_a(t) = sum_k t^k ad(e_a)^k/k!,
with the divided powers taken over the integers before reduction mod p.
Classical groups (GL, SL, PSL, diagonal, unitriangular, Borel of SL_2) are
built from explicit generators. Every group enumerates by breadth-first
closure of its generators under right multiplication.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from collections import deque
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.config import ENUMERATION_CONFIG
from app.core.exceptions import (
    EnumerationCapError,
    FieldArithmeticError,
    NotNormalError,
    ValidationError,
)
from app.services.lie_processing.liealgebra import ChevalleyBasis
from app.services.lie_processing.rootsystem import Root, neg, simple_root
from app.services.lie_processing.scalars import FieldElement, PrimeField
from app.utils.logger import debug_logger

Scalar = Union[int, FieldElement]


# ── Matrices mod p ────────────────────────────────────────────────────────────


def _eliminate(matrix: np.ndarray, p: int) -> Tuple[int, Optional[np.ndarray]]:
    """Gauss-Jordan over GF(p): (determinant, inverse or None)."""
    n = matrix.shape[0]
    A = np.concatenate([np.asarray(matrix, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    det = 1
    for col in range(n):
        nonzero = np.nonzero(A[col:, col])[0]
        if nonzero.size == 0:
            return 0, None
        r = col + int(nonzero[0])
        if r != col:
            A[[col, r]] = A[[r, col]]
            det = -det
        pivot = int(A[col, col])
        det = det * pivot % p
        A[col] = A[col] * pow(pivot, -1, p) % p
        factors = A[:, col].copy()
        factors[col] = 0
        A = (A - np.outer(factors, A[col])) % p
    return det % p, A[:, n:]


def det_mod(matrix: np.ndarray, p: int) -> int:
    return _eliminate(matrix, p)[0]


def inverse_mod(matrix: np.ndarray, p: int) -> np.ndarray:
    det, inv = _eliminate(matrix, p)
    if inv is None:
        raise FieldArithmeticError("matrix is not invertible mod p")
    return inv


def encoding_dtype(p: int) -> str:
    """Narrowest big-endian unsigned word holding every residue mod p."""
    if p <= 1 << 16:
        return ">u2"
    if p <= 1 << 32:
        return ">u4"
    return ">u8"


def check_product_range(p: int, dim: int) -> None:
    """int64 matrix products stay exact while dim * (p - 1)^2 < 2^63."""
    if dim * (p - 1) ** 2 >= 1 << 63:
        raise ValidationError(f"p={p} is too large for exact {dim}x{dim} products in int64")


class GroupElement:
    """Invertible square matrix over GF(p) with a canonical byte encoding.

    The encoding is the row-major residues as big-endian unsigned words,
    16 bits wide while p <= 2**16 and wider beyond, so byte order agrees with
    entrywise lexicographic order for a fixed p.
    """

    __slots__ = ("matrix", "p", "key", "_hash")

    def __init__(self, matrix, p: int):
        m = np.asarray(matrix, dtype=np.int64) % p
        m.setflags(write=False)
        self.matrix = m
        self.p = p
        self.key = m.astype(encoding_dtype(p)).tobytes()
        self._hash = hash((m.shape[0], self.key))

    @classmethod
    def checked(cls, matrix, p: int) -> "GroupElement":
        """Construct after checking shape and invertibility."""
        m = np.asarray(matrix, dtype=np.int64)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValidationError(f"group elements must be square matrices, got shape {m.shape}")
        if det_mod(m, p) == 0:
            raise ValidationError("matrix is singular mod p")
        return cls(m, p)

    @classmethod
    def identity(cls, n: int, p: int) -> "GroupElement":
        return cls(np.eye(n, dtype=np.int64), p)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def det(self) -> int:
        return det_mod(self.matrix, self.p)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.p == other.p and self.matrix.shape == other.matrix.shape and self.key == other.key

    def __hash__(self) -> int:
        return self._hash

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(self.matrix @ other.matrix, self.p)

    def tolist(self) -> List[List[int]]:
        return self.matrix.tolist()

    def __repr__(self) -> str:
        return f"GroupElement({self.tolist()}, p={self.p})"


def diagonal(values: Sequence[Scalar], p: int) -> GroupElement:
    return GroupElement(np.diag([int(v) for v in values]), p)


def is_diagonal(m: np.ndarray) -> bool:
    return not np.any(m - np.diag(np.diag(m)))


def is_unitriangular(m: np.ndarray) -> bool:
    return bool(np.all(np.diag(m) == 1) and not np.any(np.tril(m, -1)))


# ── Groups ────────────────────────────────────────────────────────────────────

Element = Hashable


class FiniteGroup(ABC):
    """A group given by generators, enumerated lazily by BFS closure."""

    def __init__(self, generators: Sequence[Element], label: str):
        self.generators: List[Element] = list(generators)
        self.label = label
        self._elements: Optional[List[Element]] = None
        self._index: Optional[Dict[Element, int]] = None

    @property
    @abstractmethod
    def identity(self) -> Element:
        raise NotImplementedError

    @abstractmethod
    def multiply(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    @abstractmethod
    def inverse(self, a: Element) -> Element:
        raise NotImplementedError

    @abstractmethod
    def encode(self, a: Element) -> bytes:
        """Injective canonical encoding; class ordering uses its byte order."""
        raise NotImplementedError

    @abstractmethod
    def _structurally_contains(self, x: Element) -> bool:
        """Cheap membership test used before enumeration."""
        raise NotImplementedError

    # ── Enumeration ──────────────────────────────────────────────────────────

    @property
    def is_enumerated(self) -> bool:
        return self._elements is not None

    def elements(self, cap: Optional[int] = None) -> List[Element]:
        if self._elements is None:
            self._enumerate(cap or ENUMERATION_CONFIG.ENUMERATION_CAP)
        return self._elements

    def _enumerate(self, cap: int) -> None:
        if cap < 1:
            raise ValidationError("enumeration cap must be at least 1")
        start = self.identity
        seen: Dict[Element, int] = {start: 0}
        order = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for s in self.generators:
                y = self.multiply(x, s)
                if y not in seen:
                    if len(order) >= cap:
                        raise EnumerationCapError(cap, len(order))
                    seen[y] = len(order)
                    order.append(y)
                    queue.append(y)
        self._elements, self._index = order, seen
        debug_logger.debug(f"Enumerated {self.label}: {len(order)} elements")

    def order(self, cap: Optional[int] = None) -> int:
        return len(self.elements(cap))

    def index_of(self, x: Element) -> int:
        self.elements()
        return self._index[x]

    def contains(self, x: Element) -> bool:
        if self._index is not None:
            try:
                return x in self._index
            except TypeError:
                return False
        return self._structurally_contains(x)

    def check_member(self, x: Element) -> Element:
        if not self.contains(x):
            raise ValidationError(f"element outside {self.label}")
        return x

    # ── Helpers ──────────────────────────────────────────────────────────────

    def conjugate(self, g: Element, x: Element) -> Element:
        """g x g^-1."""
        return self.multiply(self.multiply(g, x), self.inverse(g))

    def power(self, x: Element, k: int) -> Element:
        if k < 0:
            return self.power(self.inverse(x), -k)
        result, base = self.identity, x
        while k:
            if k & 1:
                result = self.multiply(result, base)
            base = self.multiply(base, base)
            k >>= 1
        return result

    def product(self, items: Iterable[Element]) -> Element:
        result = self.identity
        for x in items:
            result = self.multiply(result, x)
        return result

    def random_element(self, rng: np.random.Generator) -> Element:
        elems = self.elements()
        return elems[int(rng.integers(len(elems)))]

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.label})"


class MatrixGroup(FiniteGroup):
    def __init__(
        self,
        generators: Sequence[GroupElement],
        p: int,
        dim: int,
        label: str,
        member_test: Optional[Callable[[np.ndarray], bool]] = None,
    ):
        check_product_range(p, dim)
        super().__init__(generators, label)
        self.p = p
        self.dim = dim
        self._identity = GroupElement.identity(dim, p)
        self._member_test = member_test
        for g in self.generators:
            if g.p != p or g.dim != dim:
                raise ValidationError(f"generator of shape {g.matrix.shape} mod {g.p} does not fit {label}")

    @property
    def identity(self) -> GroupElement:
        return self._identity

    def multiply(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return GroupElement(a.matrix @ b.matrix, self.p)

    def inverse(self, a: GroupElement) -> GroupElement:
        return GroupElement(inverse_mod(a.matrix, self.p), self.p)

    def encode(self, a: GroupElement) -> bytes:
        return a.key

    def _structurally_contains(self, x) -> bool:
        if not isinstance(x, GroupElement) or x.p != self.p or x.dim != self.dim:
            return False
        if self._member_test is not None:
            return bool(self._member_test(x.matrix))
        return x.det() != 0


class CosetGroup(FiniteGroup):
    """G/N with the encoding-minimal element of each coset as representative."""

    def __init__(self, base: FiniteGroup, normal_subgroup: Sequence[Element], label: str, check_normal: bool = True):
        self.base = base
        self.subgroup: List[Element] = list(dict.fromkeys(normal_subgroup))
        self._subgroup_set = set(self.subgroup)
        if base.identity not in self._subgroup_set:
            raise ValidationError(f"{label}: subgroup must contain the identity")
        if check_normal:
            self._check_normal()
        gens = list(dict.fromkeys(self.representative(g) for g in base.generators))
        super().__init__([g for g in gens if g != self.representative(base.identity)], label)
        self._identity = self.representative(base.identity)

    def _check_normal(self) -> None:
        base = self.base
        for s in base.generators:
            for n in self.subgroup:
                if base.conjugate(s, n) not in self._subgroup_set:
                    raise NotNormalError(f"{self.base.label}: subgroup is not normal")
        size = len(self.subgroup)
        if size * size <= ENUMERATION_CONFIG.SUBGROUP_PAIR_CHECK_LIMIT:
            pairs = ((a, b) for a in self.subgroup for b in self.subgroup)
        else:
            rng = np.random.default_rng(0)
            picks = rng.integers(size, size=(ENUMERATION_CONFIG.SUBGROUP_PAIR_SAMPLES, 2))
            pairs = ((self.subgroup[i], self.subgroup[j]) for i, j in picks)
        for a, b in pairs:
            if base.multiply(a, b) not in self._subgroup_set:
                raise NotNormalError(f"{self.base.label}: given elements are not closed under products")

    def representative(self, x: Element) -> Element:
        return min((self.base.multiply(x, n) for n in self.subgroup), key=self.base.encode)

    def coset(self, x: Element) -> List[Element]:
        return [self.base.multiply(x, n) for n in self.subgroup]

    @property
    def identity(self) -> Element:
        return self._identity

    def multiply(self, a: Element, b: Element) -> Element:
        return self.representative(self.base.multiply(a, b))

    def inverse(self, a: Element) -> Element:
        return self.representative(self.base.inverse(a))

    def encode(self, a: Element) -> bytes:
        return self.base.encode(a)

    def _structurally_contains(self, x) -> bool:
        return self.base.contains(x) and self.representative(x) == x


class DirectProduct(FiniteGroup):
    """G_1 x ... x G_n with tuple elements."""

    def __init__(self, factors: Sequence[FiniteGroup], label: Optional[str] = None):
        if not factors:
            raise ValidationError("a direct product needs at least one factor")
        self.factors = list(factors)
        identity = tuple(f.identity for f in self.factors)
        gens = []
        for i, f in enumerate(self.factors):
            for s in f.generators:
                gens.append(identity[:i] + (s,) + identity[i + 1:])
        if label is None:
            labels = [f.label for f in self.factors]
            label = f"{labels[0]}^{len(labels)}" if len(set(labels)) == 1 else " x ".join(labels)
        super().__init__(gens, label)
        self._identity = identity

    @property
    def n(self) -> int:
        return len(self.factors)

    @property
    def identity(self) -> tuple:
        return self._identity

    def multiply(self, a: tuple, b: tuple) -> tuple:
        return tuple(f.multiply(x, y) for f, x, y in zip(self.factors, a, b))

    def inverse(self, a: tuple) -> tuple:
        return tuple(f.inverse(x) for f, x in zip(self.factors, a))

    def encode(self, a: tuple) -> bytes:
        return b"".join(f.encode(x) for f, x in zip(self.factors, a))

    def embed(self, i: int, x: Element) -> tuple:
        return self._identity[:i] + (x,) + self._identity[i + 1:]

    def _structurally_contains(self, x) -> bool:
        return (
            isinstance(x, tuple) and len(x) == self.n
            and all(f.contains(c) for f, c in zip(self.factors, x))
        )


# ── Chevalley groups ──────────────────────────────────────────────────────────


def _scalar(field: PrimeField, t: Scalar) -> FieldElement:
    if isinstance(t, FieldElement):
        if t.p != field.p:
            raise FieldArithmeticError(f"mismatched moduli: {t.p} and {field.p}")
        return t
    return field(t)


def x_alpha(cb: ChevalleyBasis, field: PrimeField, alpha: Root, t: Scalar) -> GroupElement:
    """exp(t ad e_alpha) reduced mod p."""
    t = _scalar(field, t)
    powers = cb.divided_power_terms(alpha)
    total = np.zeros((cb.dim, cb.dim), dtype=np.int64)
    coeff = 1
    for D in powers:
        total = (total + coeff * (D % field.p)) % field.p
        coeff = coeff * t.value % field.p
    return GroupElement(total, field.p)


def n_alpha(cb: ChevalleyBasis, field: PrimeField, alpha: Root, t: Scalar) -> GroupElement:
    """x_a(t) x_{-a}(-t^-1) x_a(t)."""
    t = _scalar(field, t)
    if not t:
        raise FieldArithmeticError("n_alpha(t) needs t != 0")
    xa = x_alpha(cb, field, alpha, t)
    return xa @ x_alpha(cb, field, neg(alpha), -t.inv()) @ xa


def h_alpha(cb: ChevalleyBasis, field: PrimeField, alpha: Root, t: Scalar) -> GroupElement:
    """n_a(t) n_a(-1)."""
    t = _scalar(field, t)
    if not t:
        raise FieldArithmeticError("h_alpha(t) needs t != 0")
    return n_alpha(cb, field, alpha, t) @ n_alpha(cb, field, alpha, -1)


def preserves_bracket(cb: ChevalleyBasis, m: np.ndarray, p: int) -> bool:
    """g[b_j, b_k] = [g b_j, g b_k] mod p for every pair of basis vectors."""
    C = cb.structure_tensor % p
    g = np.asarray(m, dtype=np.int64) % p
    lhs = np.einsum("im,mjk->ijk", g, C) % p
    rhs = np.einsum("iab,aj->ijb", C, g) % p
    rhs = np.einsum("ijb,bk->ijk", rhs, g) % p
    return bool(np.array_equal(lhs, rhs))


class ChevalleyGroup(MatrixGroup):
    """Adjoint Chevalley group generated by x_a(1), a in +-Delta.

    Before enumeration, membership is tested by bracket preservation, which
    every element of the adjoint group satisfies.
    """

    def __init__(self, cb: ChevalleyBasis, field: PrimeField):
        self.cb = cb
        self.field = field
        rs = cb.rs
        self._x_cache: Dict[Tuple[Root, int], GroupElement] = {}
        gens = []
        for i in range(rs.rank):
            a = simple_root(rs.rank, i)
            gens += [self.x(a, 1), self.x(neg(a), 1)]
        p = field.p
        super().__init__(
            gens, p, cb.dim, f"{rs.label}-adjoint-p{p}",
            member_test=lambda m: det_mod(m, p) != 0 and preserves_bracket(cb, m, p),
        )

    def x(self, alpha: Root, t: Scalar) -> GroupElement:
        t = _scalar(self.field, t)
        key = (tuple(alpha), t.value)
        if key not in self._x_cache:
            self._x_cache[key] = x_alpha(self.cb, self.field, alpha, t)
        return self._x_cache[key]

    def n(self, alpha: Root, t: Scalar) -> GroupElement:
        t = _scalar(self.field, t)
        if not t:
            raise FieldArithmeticError("n_alpha(t) needs t != 0")
        xa = self.x(alpha, t)
        return xa @ self.x(neg(alpha), -t.inv()) @ xa

    def h(self, alpha: Root, t: Scalar) -> GroupElement:
        return self.n(alpha, t) @ self.n(alpha, -1)

    def torus_element(self, coords: Sequence[Scalar]) -> GroupElement:
        """prod_j h_{alpha_j}(t_j) over the simple roots."""
        rs = self.cb.rs
        if len(coords) != rs.rank:
            raise ValidationError(f"expected {rs.rank} torus coordinates, got {len(coords)}")
        result = self.identity
        for j, t in enumerate(coords):
            result = result @ self.h(simple_root(rs.rank, j), t)
        return result

    def positive_unipotent(self) -> MatrixGroup:
        """U = <x_a(1) : a > 0>, upper unitriangular in the basis order."""
        rs = self.cb.rs
        gens = [self.x(a, 1) for a in rs.positive_roots]
        return MatrixGroup(gens, self.p, self.dim, f"U({rs.label})-p{self.p}", member_test=is_unitriangular)

    def rank_one_subgroup(self, alpha: Root) -> MatrixGroup:
        """<x_a(1), x_{-a}(1)>, a quotient of SL_2(p)."""
        gens = [self.x(alpha, 1), self.x(neg(alpha), 1)]
        return MatrixGroup(gens, self.p, self.dim, f"<x+-{list(alpha)}>-{self.cb.rs.label}-p{self.p}")


# ── Relation checks ───────────────────────────────────────────────────────────


def _result(name: str, checked: int, counterexample: Optional[dict] = None) -> Dict:
    return {
        "name": name,
        "passed": counterexample is None,
        "checked": checked,
        "counterexample": counterexample,
    }


def additivity_check(cb: ChevalleyBasis, field: PrimeField) -> Dict:
    """x_a(s) x_a(t) = x_a(s + t) for every root a and s, t in GF(p)."""
    checked = 0
    for alpha in cb.rs.roots:
        xs = [x_alpha(cb, field, alpha, s) for s in range(field.p)]
        for s in range(field.p):
            for t in range(field.p):
                checked += 1
                if xs[s] @ xs[t] != xs[(s + t) % field.p]:
                    return _result("x_alpha additivity", checked, {"alpha": list(alpha), "s": s, "t": t})
    return _result("x_alpha additivity", checked)


def multiplicativity_check(cb: ChevalleyBasis, field: PrimeField) -> Dict:
    """h_a(s) h_a(t) = h_a(st) for every root a and s, t in GF(p)^x."""
    checked = 0
    for alpha in cb.rs.roots:
        hs = {s: h_alpha(cb, field, alpha, s) for s in range(1, field.p)}
        if hs[1] != GroupElement.identity(cb.dim, field.p):
            return _result("h_alpha multiplicativity", checked, {"alpha": list(alpha), "s": 1, "t": 1})
        for s in range(1, field.p):
            for t in range(1, field.p):
                checked += 1
                if hs[s] @ hs[t] != hs[s * t % field.p]:
                    return _result("h_alpha multiplicativity", checked, {"alpha": list(alpha), "s": s, "t": t})
    return _result("h_alpha multiplicativity", checked)


def steinberg_conjugation_check(cb: ChevalleyBasis, field: PrimeField) -> Dict:
    """h_b(t) x_a(s) h_b(t)^-1 = x_a(t^<a, b^vee> s) for a > 0, b simple."""
    rs = cb.rs
    p = field.p
    checked = 0
    for beta in rs.simple_roots:
        for t in range(1, p):
            h = h_alpha(cb, field, beta, t)
            h_inv = GroupElement(inverse_mod(h.matrix, p), p)
            for alpha in rs.positive_roots:
                scale = field(t) ** rs.pairing(alpha, beta)
                for s in range(p):
                    checked += 1
                    lhs = h @ x_alpha(cb, field, alpha, s) @ h_inv
                    if lhs != x_alpha(cb, field, alpha, scale * s):
                        return _result(
                            "steinberg conjugation", checked,
                            {"alpha": list(alpha), "beta": list(beta), "s": s, "t": t},
                        )
    return _result("steinberg conjugation", checked)


def group_axioms_check(group: FiniteGroup, rng: np.random.Generator, samples: int = 200) -> Dict:
    """Inverse closure on every element plus sampled associativity triples."""
    elems = group.elements()
    checked = 0
    for x in elems:
        checked += 1
        inv = group.inverse(x)
        if not group.contains(inv) or group.multiply(x, inv) != group.identity:
            return _result("group axioms", checked, {"element": group.index_of(x)})
    for _ in range(samples):
        a, b, c = (group.random_element(rng) for _ in range(3))
        checked += 1
        if group.multiply(group.multiply(a, b), c) != group.multiply(a, group.multiply(b, c)):
            return _result("group axioms", checked, {"triple": [group.index_of(v) for v in (a, b, c)]})
    return _result("group axioms", checked)


def enumerate_group(group: FiniteGroup, cap: int) -> List[Element]:
    return group.elements(cap)


# ── Classical groups ──────────────────────────────────────────────────────────

CLASSICAL_KINDS = {
    "GL": "GL", "SL": "SL", "PSL": "PSL",
    "DIAGONAL": "Diagonal", "D": "Diagonal",
    "UNITRIANGULAR": "Unitriangular", "U": "Unitriangular",
    "BOREL2": "Borel2", "B2": "Borel2",
}


def _elementary(n: int, i: int, j: int, p: int) -> GroupElement:
    m = np.eye(n, dtype=np.int64)
    m[i, j] = 1
    return GroupElement(m, p)


def _transvections(n: int, p: int) -> List[GroupElement]:
    gens = []
    for i in range(n - 1):
        gens += [_elementary(n, i, i + 1, p), _elementary(n, i + 1, i, p)]
    return gens


def scalar_center(n: int, field: PrimeField) -> List[GroupElement]:
    """Scalars lambda I with lambda^n = 1, the center of SL_n."""
    return [
        diagonal([lam] * n, field.p) for lam in range(1, field.p) if pow(lam, n, field.p) == 1
    ]


def classical(kind: str, n: int, p: int) -> FiniteGroup:
    """GL_n, SL_n, PSL_n, D_n, U_n or B_2 over GF(p); enumeration is lazy."""
    field = PrimeField(p)
    canonical = CLASSICAL_KINDS.get(str(kind).upper())
    if canonical is None:
        raise ValidationError(f"unknown classical group kind {kind!r}")
    if canonical == "Borel2":
        n = 2
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"matrix size must be a positive integer, got {n!r}")
    g = field.primitive_root.value

    if canonical == "GL":
        gens = _transvections(n, p) + [diagonal([g] + [1] * (n - 1), p)]
        return MatrixGroup(gens, p, n, f"GL_{n}(F_{p})")
    if canonical == "SL":
        return MatrixGroup(
            _transvections(n, p), p, n, f"SL_{n}(F_{p})",
            member_test=lambda m: det_mod(m, p) == 1,
        )
    if canonical == "PSL":
        sl = classical("SL", n, p)
        return CosetGroup(sl, scalar_center(n, field), f"PSL_{n}(F_{p})", check_normal=False)
    if canonical == "Diagonal":
        gens = [diagonal([g if k == i else 1 for k in range(n)], p) for i in range(n)]
        return MatrixGroup(gens, p, n, f"D_{n}(F_{p})", member_test=lambda m: is_diagonal(m) and det_mod(m, p) != 0)
    if canonical == "Unitriangular":
        gens = [_elementary(n, i, i + 1, p) for i in range(n - 1)]
        return MatrixGroup(gens, p, n, f"U_{n}(F_{p})", member_test=is_unitriangular)
    gens = [_elementary(2, 0, 1, p), diagonal([g, pow(g, -1, p) if p > 2 else 1], p)]
    return MatrixGroup(
        gens, p, 2, f"B_2(F_{p})",
        member_test=lambda m: m[1, 0] == 0 and det_mod(m, p) == 1,
    )
