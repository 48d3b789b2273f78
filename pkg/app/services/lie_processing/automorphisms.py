"""
Algebraic automorphisms of enumerated finite groups.

Descriptors are small objects with a `descriptor` string and an `apply`
method. `validate()` checks phi(x s) = phi(x) phi(s) for every element x and
generator s, which forces the homomorphism property on all pairs, and checks
that phi is a bijection of the enumerated group. Domains beyond the
enumeration cap are checked on sampled pairs.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.config import ENUMERATION_CONFIG
from app.core.exceptions import (
    AutomorphismError,
    EnumerationCapError,
    SubgroupNotInvariantError,
    ValidationError,
)
from app.services.lie_processing.chevgroup import (
    ChevalleyGroup,
    CosetGroup,
    DirectProduct,
    Element,
    FiniteGroup,
    GroupElement,
    MatrixGroup,
    h_alpha,
    inverse_mod,
    is_diagonal,
    x_alpha,
)
from app.services.lie_processing.liealgebra import ChevalleyBasis, SignedLift
from app.services.lie_processing.rootsystem import extend_to_roots
from app.services.lie_processing.scalars import PrimeField
from app.utils.logger import debug_logger


class Automorphism(ABC):
    def __init__(self, domain: FiniteGroup, descriptor: str):
        self.domain = domain
        self.descriptor = descriptor
        self.validated = False

    @abstractmethod
    def _map(self, x: Element) -> Element:
        raise NotImplementedError

    def apply(self, x: Element) -> Element:
        if not self.domain.contains(x):
            raise AutomorphismError(f"element outside domain {self.domain.label} of {self.descriptor}")
        return self._map(x)

    __call__ = apply

    def inverse(self) -> "Automorphism":
        """Explicit inverse table; descriptors with a closed form override this."""
        table = {self._map(x): x for x in self.domain.elements()}
        return TableMap(self.domain, table, f"inverse({self.descriptor})")

    def validate(self, cap: Optional[int] = None, rng: Optional[np.random.Generator] = None) -> "Automorphism":
        """Bijective-homomorphism check.

        Exhaustive on the enumerated domain. When the domain exceeds the cap,
        phi(xy) = phi(x) phi(y), image membership and a trivial kernel are
        checked on sampled words in the generators instead.
        """
        G = self.domain
        try:
            elems = G.elements(cap)
        except EnumerationCapError as e:
            debug_logger.debug(f"{self.descriptor} on {G.label}: sampling ({e.message})")
            self._validate_sampled(rng if rng is not None else np.random.default_rng(0))
            self.validated = True
            return self
        images: Dict[Element, Element] = {}
        seen = set()
        for x in elems:
            y = self._map(x)
            if not G.contains(y):
                raise AutomorphismError(f"{self.descriptor} maps an element outside {G.label}")
            if y in seen:
                raise AutomorphismError(f"{self.descriptor} is not injective on {G.label}")
            seen.add(y)
            images[x] = y
        gen_images = [(s, images[s]) for s in G.generators]
        for x in elems:
            fx = images[x]
            for s, fs in gen_images:
                if images[G.multiply(x, s)] != G.multiply(fx, fs):
                    raise AutomorphismError(f"{self.descriptor} is not a homomorphism of {G.label}")
        self.validated = True
        debug_logger.debug(f"Validated {self.descriptor} on {G.label} ({len(elems)} elements)")
        return self

    def _validate_sampled(self, rng: np.random.Generator) -> None:
        G = self.domain
        config = ENUMERATION_CONFIG
        letters = list(G.generators) + [G.inverse(s) for s in G.generators]
        pool = [G.identity] + list(G.generators)
        while letters and len(pool) < config.VALIDATION_WORD_POOL:
            word = rng.integers(len(letters), size=config.VALIDATION_WORD_LENGTH)
            pool.append(G.product(letters[int(k)] for k in word))
        images = [self._map(x) for x in pool]
        for x, y in zip(pool, images):
            if not G.contains(y):
                raise AutomorphismError(f"{self.descriptor} maps an element outside {G.label}")
            if y == G.identity and x != G.identity:
                raise AutomorphismError(f"{self.descriptor} is not injective on {G.label}")
        pairs = rng.integers(len(pool), size=(config.VALIDATION_SAMPLE_PAIRS, 2))
        for i, j in pairs:
            if self._map(G.multiply(pool[i], pool[j])) != G.multiply(images[i], images[j]):
                raise AutomorphismError(f"{self.descriptor} is not a homomorphism of {G.label}")
        debug_logger.debug(f"Validated {self.descriptor} on {G.label} by {len(pairs)} sampled pairs")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.descriptor} on {self.domain.label})"


class Identity(Automorphism):
    def __init__(self, domain: FiniteGroup):
        super().__init__(domain, "identity")

    def _map(self, x):
        return x

    def inverse(self) -> "Identity":
        return self


class Inner(Automorphism):
    """x -> g x g^-1."""

    def __init__(self, domain: FiniteGroup, g: Element, descriptor: Optional[str] = None):
        domain.check_member(g)
        super().__init__(domain, descriptor or "inner")
        self.g = g
        self._g_inv = domain.inverse(g)

    def _map(self, x):
        return self.domain.multiply(self.domain.multiply(self.g, x), self._g_inv)

    def inverse(self) -> "Inner":
        return Inner(self.domain, self._g_inv, f"inverse({self.descriptor})")


class Conjugation(Automorphism):
    """x -> m x m^-1 for a matrix m normalizing the domain.

    Covers phi_d on U_n, torus actions on unipotent subgroups and the Borel
    scale maps. On a coset group the image is projected to its representative.
    """

    def __init__(self, domain: FiniteGroup, m: GroupElement, descriptor: str):
        base = domain.base if isinstance(domain, CosetGroup) else domain
        if not isinstance(base, MatrixGroup):
            raise AutomorphismError(f"conjugation needs a matrix group, got {domain.label}")
        if m.dim != base.dim or m.p != base.p:
            raise AutomorphismError(f"conjugating matrix does not fit {domain.label}")
        super().__init__(domain, descriptor)
        self.m = m
        self._m_inv = GroupElement(inverse_mod(m.matrix, m.p), m.p)

    def _map(self, x):
        y = self.m @ x @ self._m_inv
        if isinstance(self.domain, CosetGroup):
            return self.domain.representative(y)
        return y

    def inverse(self) -> "Conjugation":
        return Conjugation(self.domain, self._m_inv, f"inverse({self.descriptor})")


class DiagramConj(Conjugation):
    """rho-bar: X -> sigma X sigma^T for a signed lift sigma of rho."""

    def __init__(self, domain: ChevalleyGroup, lift: SignedLift):
        sigma = GroupElement(lift.matrix, domain.p)
        super().__init__(domain, sigma, f"diagram:{lift.rho.cycles()}")
        self.lift = lift


class TableMap(Automorphism):
    def __init__(self, domain: FiniteGroup, table: Dict[Element, Element], descriptor: str = "table"):
        super().__init__(domain, descriptor)
        self.table = dict(table)

    def _map(self, x):
        try:
            return self.table[x]
        except KeyError:
            raise AutomorphismError(f"{self.descriptor} has no image for the given element") from None

    def inverse(self) -> "TableMap":
        return TableMap(self.domain, {v: k for k, v in self.table.items()}, f"inverse({self.descriptor})")


def _diagonal_entries(domain: FiniteGroup, x: GroupElement) -> List[int]:
    if not isinstance(x, GroupElement) or not is_diagonal(x.matrix):
        raise AutomorphismError(f"element outside domain {domain.label}: not diagonal")
    return [int(v) for v in np.diag(x.matrix)]


class DiagonalInverse(Automorphism):
    """diag(t_1..t_n) -> diag(t_1^-1..t_n^-1)."""

    def __init__(self, domain: MatrixGroup):
        super().__init__(domain, "diag-inverse")

    def _map(self, x):
        p = self.domain.p
        return GroupElement(np.diag([pow(t, -1, p) for t in _diagonal_entries(self.domain, x)]), p)

    def inverse(self) -> "DiagonalInverse":
        return self


class DiagonalCycleTwist(Automorphism):
    """diag(t_1..t_n) -> diag(t_n, t_1, ..., t_{n-2}, t_{n-1} t_n^-r)."""

    def __init__(self, domain: MatrixGroup, r: int):
        if domain.dim < 2:
            raise AutomorphismError("diag-cycle-twist needs n >= 2")
        super().__init__(domain, f"diag-cycle-twist:r={r}")
        self.r = r

    def _map(self, x):
        p = self.domain.p
        t = _diagonal_entries(self.domain, x)
        out = [t[-1]] + t[:-2] + [t[-2] * pow(t[-1], -self.r, p) % p]
        return GroupElement(np.diag(out), p)


def _sigma_cycles(sigma: Sequence[int]) -> str:
    seen, parts = set(), []
    for start in range(len(sigma)):
        if start in seen:
            continue
        cycle, i = [], start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = sigma[i]
        if len(cycle) > 1:
            parts.append("(" + " ".join(str(k + 1) for k in cycle) + ")")
    return "".join(parts) or "()"


def invert_permutation(sigma: Sequence[int]) -> Tuple[int, ...]:
    inv = [0] * len(sigma)
    for i, j in enumerate(sigma):
        inv[j] = i
    return tuple(inv)


class ProductTwist(Automorphism):
    """(g_1..g_n) -> (phi_1(g_{s^-1(1)}), ..., phi_n(g_{s^-1(n)})) on a direct product."""

    def __init__(self, domain: DirectProduct, factors: Sequence[Automorphism], sigma: Sequence[int]):
        if not isinstance(domain, DirectProduct):
            raise AutomorphismError("product twists act on direct products")
        sigma = tuple(sigma)
        if len(factors) != domain.n or sorted(sigma) != list(range(domain.n)):
            raise AutomorphismError(f"need {domain.n} factor automorphisms and a permutation of {domain.n} points")
        self.sigma = sigma
        self.sigma_inv = invert_permutation(sigma)
        for i, phi in enumerate(factors):
            source = domain.factors[self.sigma_inv[i]]
            if phi.domain.label != domain.factors[i].label or source.label != domain.factors[i].label:
                raise AutomorphismError(f"factor {i + 1}: domain mismatch for {phi.descriptor}")
        self.factors = list(factors)
        body = ";".join(phi.descriptor for phi in self.factors)
        super().__init__(domain, f"product:{body}:sigma={_sigma_cycles(sigma)}")

    def _map(self, x):
        return tuple(phi._map(x[self.sigma_inv[i]]) for i, phi in enumerate(self.factors))

    def inverse(self) -> "ProductTwist":
        inverses = [self.factors[self.sigma[j]].inverse() for j in range(len(self.factors))]
        return ProductTwist(self.domain, inverses, self.sigma_inv)


class Compose(Automorphism):
    """phi_1 o phi_2 o ... o phi_k (rightmost first)."""

    def __init__(self, domain: FiniteGroup, parts: Sequence[Automorphism]):
        if not parts:
            raise AutomorphismError("compose needs at least one automorphism")
        for phi in parts:
            if phi.domain is not domain and phi.domain.label != domain.label:
                raise AutomorphismError(f"domain mismatch: {phi.domain.label} vs {domain.label}")
        self.parts = list(parts)
        super().__init__(domain, "compose:" + ",".join(phi.descriptor for phi in self.parts))

    def _map(self, x):
        for phi in reversed(self.parts):
            x = phi._map(x)
        return x

    def inverse(self) -> "Compose":
        return Compose(self.domain, [phi.inverse() for phi in reversed(self.parts)])


class QuotientAutomorphism(Automorphism):
    """phi-bar on G/N: [x] -> [phi(x)]."""

    def __init__(self, quotient: CosetGroup, phi: Automorphism):
        super().__init__(quotient, f"quotient({phi.descriptor})")
        self.quotient = quotient
        self.phi = phi

    def _map(self, x):
        return self.quotient.representative(self.phi._map(x))

    def inverse(self) -> "QuotientAutomorphism":
        return QuotientAutomorphism(self.quotient, self.phi.inverse())


# ── Operations ────────────────────────────────────────────────────────────────


def apply(phi: Automorphism, x: Element) -> Element:
    return phi.apply(x)


def compose(phi: Automorphism, psi: Automorphism) -> Automorphism:
    """x -> phi(psi(x)); Inner o Inner stays inner."""
    if phi.domain is not psi.domain and phi.domain.label != psi.domain.label:
        raise AutomorphismError(f"domain mismatch: {phi.domain.label} vs {psi.domain.label}")
    if isinstance(phi, Inner) and isinstance(psi, Inner):
        return Inner(phi.domain, phi.domain.multiply(phi.g, psi.g), f"compose:{phi.descriptor},{psi.descriptor}")
    return Compose(phi.domain, [phi, psi])


def inverse(phi: Automorphism) -> Automorphism:
    return phi.inverse()


def induced_quotient(
    phi: Automorphism,
    group: FiniteGroup,
    subgroup: Sequence[Element],
    label: Optional[str] = None,
) -> QuotientAutomorphism:
    """phi-bar on G/N; N must be normal and phi-invariant."""
    if phi.domain is not group and phi.domain.label != group.label:
        raise AutomorphismError(f"domain mismatch: {phi.domain.label} vs {group.label}")
    members = set(subgroup)
    if {phi._map(n) for n in members} != members:
        raise SubgroupNotInvariantError()
    quotient = CosetGroup(group, list(subgroup), label or f"{group.label}/N[{len(members)}]")
    phi_bar = QuotientAutomorphism(quotient, phi)
    for x in group.elements():
        # pi o phi = phi-bar o pi
        if quotient.representative(phi._map(x)) != phi_bar._map(quotient.representative(x)):
            raise AutomorphismError(f"{phi.descriptor} does not descend to {quotient.label}")
    return phi_bar


def diagram_conj_check(phi: DiagramConj, cb: ChevalleyBasis, field: PrimeField) -> Dict:
    """rho-bar(x_a(t)) = x_{rho a}(eps_a t) for all a and t; torus images.

    The torus elements satisfy rho-bar(h_a(t)) = h_{rho a}(eps_a t) h_{rho a}(eps_a)
    = h_{rho a}(t). The sign-scaled form h_{rho a}(eps_a t) holds exactly on
    the roots with eps_a = 1, which include +-Delta.
    """
    rs = cb.rs
    lift = phi.lift
    signs = lift.sign_table
    checked = 0
    failure = None
    literal_sign_roots = 0
    signed_form_misses = 0
    for alpha in rs.roots:
        eps = signs[alpha]
        beta = extend_to_roots(rs, lift.rho, alpha)
        for t in range(field.p):
            checked += 1
            if phi._map(x_alpha(cb, field, alpha, t)) != x_alpha(cb, field, beta, eps * t):
                failure = {"relation": "x", "alpha": list(alpha), "t": t}
                break
        if failure:
            break
        for t in range(1, field.p):
            checked += 1
            if phi._map(h_alpha(cb, field, alpha, t)) != h_alpha(cb, field, beta, t):
                failure = {"relation": "h", "alpha": list(alpha), "t": t}
                break
        if failure:
            break
        if eps == 1:
            literal_sign_roots += 1
        elif any(phi._map(h_alpha(cb, field, alpha, t)) != h_alpha(cb, field, beta, -t) for t in range(1, field.p)):
            signed_form_misses += 1
    simple_signs_ok = all(
        signs[r] == 1 and signs[tuple(-c for c in r)] == 1 for r in rs.simple_roots
    )
    return {
        "name": f"diagram conjugation {rs.label} {lift.rho.cycles()} p={field.p}",
        "passed": failure is None and simple_signs_ok,
        "checked": checked,
        "counterexample": failure,
        "simple_signs_positive": simple_signs_ok,
        "roots_with_positive_sign": literal_sign_roots if failure is None else None,
        "signed_h_form_holds": failure is None and signed_form_misses == 0,
        "signed_h_form_misses": signed_form_misses if failure is None else None,
    }


def torus_permutation_check(phi: DiagramConj, group: ChevalleyGroup) -> bool:
    """rho-bar(h_{a_i}(t)) = h_{a_rho(i)}(t) on the simple coroots."""
    rs = group.cb.rs
    for i, alpha in enumerate(rs.simple_roots):
        target = rs.simple_roots[phi.lift.rho(i)]
        for t in range(1, group.p):
            if phi._map(group.h(alpha, t)) != group.h(target, t):
                return False
    return True


def require_same_domain(phi: Automorphism, group: FiniteGroup) -> None:
    if phi.domain is not group and phi.domain.label != group.label:
        raise ValidationError(f"{phi.descriptor} acts on {phi.domain.label}, not {group.label}")
