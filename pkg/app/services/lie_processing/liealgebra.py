"""
Chevalley basis of the simple Lie algebra of a root system.

Structure constants follow the extraspecial-pair convention: for every
non-simple positive root xi, the pair (alpha_i, xi - alpha_i) with the
smallest index i has N = +(p + 1). All remaining constants are forced by

  N_{a,b} = -N_{b,a},   N_{-a,-b} = -N_{a,b},
  N_{a,b}/(c,c) = N_{b,c}/(a,a) = N_{c,a}/(b,b)           when a + b + c = 0,
  sum of N_{a,b}N_{c,d}/(a+b,a+b) over the three pairings = 0   when a+b+c+d = 0.

Basis order: positive roots by decreasing height, then h_1..h_n, then the
negative roots by increasing depth, so ad(e_a) is strictly upper triangular
for positive a.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

import numpy as np

from app.core.exceptions import InternalConsistencyError, RootSystemError
from app.services.lie_processing.rootsystem import (
    DiagramAutomorphism,
    Root,
    RootSystem,
    add_roots,
    extend_to_roots,
    height,
    is_positive,
    neg,
    root_order_key,
    simple_root,
)

SIGNS_CONVENTION = "extraspecial-positive"

RootPair = Tuple[Root, Root]


def extraspecial_pair(rs: RootSystem, xi: Root) -> RootPair:
    """(alpha_i, xi - alpha_i) for the smallest i keeping xi - alpha_i positive."""
    for i in range(rs.rank):
        alpha = simple_root(rs.rank, i)
        beta = tuple(x - a for x, a in zip(xi, alpha))
        if is_positive(beta) and rs.is_root(beta):
            return alpha, beta
    raise InternalConsistencyError(f"{rs.label}: no extraspecial pair for {xi}")


class _ConstantSolver:
    """Derives the full N table from the extraspecial signs, by height of the sum."""

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.positive: Dict[RootPair, int] = {}

    def _len(self, r: Root) -> int:
        return self.rs.inner_product(r, r)

    def n(self, a: Root, b: Root) -> Fraction:
        s = add_roots(a, b)
        if not any(s) or not self.rs.is_root(s):
            return Fraction(0)
        pa, pb = is_positive(a), is_positive(b)
        if pa and pb:
            if (a, b) not in self.positive:
                raise InternalConsistencyError(f"N{a, b} requested before it was derived")
            return Fraction(self.positive[(a, b)])
        if not pa and not pb:
            return -self.n(neg(a), neg(b))
        if not pa:
            return -self.n(b, a)
        # a positive, b negative
        if is_positive(s):
            return -Fraction(self._len(s), self._len(a)) * self.n(neg(b), s)
        return Fraction(self._len(s), self._len(b)) * self.n(neg(s), a)

    def solve(self) -> Dict[RootPair, int]:
        rs = self.rs
        positives = rs.positive_roots
        for xi in positives:
            if height(xi) == 1:
                continue
            a1, b1 = extraspecial_pair(rs, xi)
            n1 = rs.chain_length_below(a1, b1) + 1
            self.positive[(a1, b1)] = n1
            self.positive[(b1, a1)] = -n1
            xi_len = self._len(xi)
            for alpha in positives:
                beta = tuple(x - a for x, a in zip(xi, alpha))
                if not (is_positive(beta) and rs.is_root(beta)):
                    continue
                if root_order_key(alpha) >= root_order_key(beta):
                    continue
                if {alpha, beta} == {a1, b1}:
                    continue
                total = Fraction(0)
                eta = tuple(x - y for x, y in zip(beta, a1))
                if any(eta) and rs.is_root(eta):
                    total += self.n(beta, neg(a1)) * self.n(alpha, neg(b1)) / self._len(eta)
                mu = tuple(x - y for x, y in zip(alpha, a1))
                if any(mu) and rs.is_root(mu):
                    total += self.n(neg(a1), alpha) * self.n(beta, neg(b1)) / self._len(mu)
                value = Fraction(xi_len, n1) * total
                expected = rs.chain_length_below(alpha, beta) + 1
                if value.denominator != 1 or abs(value) != expected:
                    raise InternalConsistencyError(
                        f"{rs.label}: derived N{alpha, beta} = {value}, expected +-{expected}"
                    )
                self.positive[(alpha, beta)] = int(value)
                self.positive[(beta, alpha)] = -int(value)

        table: Dict[RootPair, int] = {}
        for a in rs.roots:
            for b in rs.roots:
                s = add_roots(a, b)
                if any(s) and rs.is_root(s):
                    table[(a, b)] = int(self.n(a, b))
        return table


@dataclass(frozen=True)
class SignedLift:
    """sigma_rho: e_a -> eps_a e_{rho a}, h_i -> h_{rho i}."""

    rho: DiagramAutomorphism
    signs: Tuple[Tuple[Root, int], ...]
    matrix: np.ndarray

    @property
    def sign_table(self) -> Dict[Root, int]:
        return dict(self.signs)

    def epsilon(self, alpha: Root) -> int:
        return self.sign_table[tuple(alpha)]


class ChevalleyBasis:
    """Chevalley basis {h_i} u {e_a} with integer structure constants."""

    def __init__(self, rs: RootSystem, constants: Dict[RootPair, int]):
        self.rs = rs
        self.constants = dict(constants)
        positives = sorted(rs.positive_roots, key=root_order_key, reverse=True)
        negatives = [neg(r) for r in sorted(rs.positive_roots, key=root_order_key)]
        self.root_order: List[Root] = positives + negatives
        n, m = rs.rank, len(positives)
        self.dim = n + len(rs.roots)
        self._index: Dict[Root, int] = {}
        for k, r in enumerate(positives):
            self._index[r] = k
        for k, r in enumerate(negatives):
            self._index[r] = m + n + k
        self._h_offset = m

    # ── Indexing ──────────────────────────────────────────────────────────

    def index_of_root(self, alpha: Root) -> int:
        try:
            return self._index[tuple(alpha)]
        except KeyError:
            raise RootSystemError(f"{alpha} is not a root of {self.rs.label}") from None

    def index_of_h(self, i: int) -> int:
        return self._h_offset + i

    # ── Structure ─────────────────────────────────────────────────────────

    def n(self, alpha: Root, beta: Root) -> int:
        """N_{alpha, beta}; zero when alpha + beta is not a root."""
        return self.constants.get((tuple(alpha), tuple(beta)), 0)

    def coroot(self, alpha: Root) -> Tuple[int, ...]:
        """h_alpha as integer coefficients over h_1..h_n."""
        rs = self.rs
        length = rs.inner_product(alpha, alpha)
        coeffs = []
        for i, a in enumerate(alpha):
            c = Fraction(a * rs.simple_lengths[i], length)
            if c.denominator != 1:
                raise InternalConsistencyError(f"non-integral coroot for {alpha}")
            coeffs.append(int(c))
        return tuple(coeffs)

    def ad_matrix(self, alpha: Root) -> np.ndarray:
        return self._ad_roots[self.index_of_root(alpha)]

    def ad_basis(self, k: int) -> np.ndarray:
        """ad of the k-th basis vector."""
        if self._h_offset <= k < self._h_offset + self.rs.rank:
            return self._ad_cartan[k - self._h_offset]
        return self._ad_roots[k]

    @cached_property
    def _ad_roots(self) -> Dict[int, np.ndarray]:
        rs = self.rs
        mats: Dict[int, np.ndarray] = {}
        for alpha in rs.roots:
            M = np.zeros((self.dim, self.dim), dtype=np.int64)
            k_alpha = self.index_of_root(alpha)
            for i in range(rs.rank):
                # [e_a, h_i] = -<a, alpha_i^vee> e_a
                M[k_alpha, self.index_of_h(i)] = -rs.pairing(alpha, simple_root(rs.rank, i))
            for beta in rs.roots:
                col = self.index_of_root(beta)
                if beta == neg(alpha):
                    for i, c in enumerate(self.coroot(alpha)):
                        M[self.index_of_h(i), col] = c
                    continue
                n_ab = self.n(alpha, beta)
                if n_ab:
                    M[self.index_of_root(add_roots(alpha, beta)), col] = n_ab
            M.setflags(write=False)
            mats[k_alpha] = M
        return mats

    @cached_property
    def _ad_cartan(self) -> List[np.ndarray]:
        rs = self.rs
        mats = []
        for i in range(rs.rank):
            M = np.zeros((self.dim, self.dim), dtype=np.int64)
            for beta in rs.roots:
                k = self.index_of_root(beta)
                M[k, k] = rs.pairing(beta, simple_root(rs.rank, i))
            M.setflags(write=False)
            mats.append(M)
        return mats

    def bracket_vector(self, j: int, k: int) -> np.ndarray:
        """[b_j, b_k] as a coefficient vector."""
        return self.ad_basis(j)[:, k]

    @cached_property
    def structure_tensor(self) -> np.ndarray:
        """C[i, j, k] = coefficient of b_i in [b_j, b_k]."""
        C = np.stack([self.ad_basis(j) for j in range(self.dim)], axis=1)
        C.setflags(write=False)
        return C

    # ── Divided powers ────────────────────────────────────────────────────

    def divided_powers(self, alpha: Root) -> List[np.ndarray]:
        """[ad(e_a)^k / k! for k = 0, 1, ...] up to the last nonzero term."""
        return [np.array(m) for m in self._divided_powers[self.index_of_root(alpha)]]

    def divided_power_terms(self, alpha: Root) -> Tuple[np.ndarray, ...]:
        """Read-only ad(e_a)^k/k!, shared between callers."""
        return self._divided_powers[self.index_of_root(alpha)]

    @cached_property
    def _divided_powers(self) -> Dict[int, Tuple[np.ndarray, ...]]:
        result = {}
        for alpha in self.rs.roots:
            k_alpha = self.index_of_root(alpha)
            A = self._ad_roots[k_alpha]
            powers = [np.eye(self.dim, dtype=np.int64)]
            k = 1
            while True:
                M = powers[-1] @ A
                if not M.any():
                    break
                if np.any(M % k):
                    raise InternalConsistencyError(f"ad(e{alpha})^{k}/{k}! is not integral")
                powers.append(M // k)
                k += 1
            for M in powers:
                M.setflags(write=False)
            result[k_alpha] = tuple(powers)
        return result


def structure_constants(rs: RootSystem) -> ChevalleyBasis:
    """Chevalley basis with extraspecial pairs positive."""
    return ChevalleyBasis(rs, _ConstantSolver(rs).solve())


def ad_matrix(cb: ChevalleyBasis, alpha: Root) -> np.ndarray:
    return cb.ad_matrix(alpha)


# ── Checks ────────────────────────────────────────────────────────────────


def antisymmetry_violations(cb: ChevalleyBasis) -> List[RootPair]:
    return [(a, b) for (a, b), v in cb.constants.items() if cb.n(b, a) != -v]


def chain_violations(cb: ChevalleyBasis) -> List[RootPair]:
    """Pairs where |N_{a,b}| != p + 1, p = max{k : b - k a in Phi}."""
    rs = cb.rs
    return [
        (a, b) for (a, b), v in cb.constants.items()
        if abs(v) != rs.chain_length_below(a, b) + 1
    ]


def jacobi_violation(cb: ChevalleyBasis) -> Optional[Tuple[int, int]]:
    """First basis pair (x, y) with ad([x, y]) != [ad x, ad y], i.e. Jacobi fails."""
    for j in range(cb.dim):
        Aj = cb.ad_basis(j)
        for k in range(j + 1, cb.dim):
            Ak = cb.ad_basis(k)
            lhs = sum(
                (int(c) * cb.ad_basis(m) for m, c in enumerate(cb.bracket_vector(j, k)) if c),
                np.zeros((cb.dim, cb.dim), dtype=np.int64),
            )
            if not np.array_equal(lhs, Aj @ Ak - Ak @ Aj):
                return j, k
    return None


def divided_powers_integral(cb: ChevalleyBasis, order: int) -> bool:
    """ad(e_a)^k divisible by k! entrywise for k <= order (0 beyond nilpotency)."""
    for alpha in cb.rs.roots:
        A = cb.ad_matrix(alpha)
        M = np.eye(cb.dim, dtype=np.int64)
        factorial = 1
        for k in range(1, order + 1):
            M = M @ A
            factorial *= k
            if np.any(M % factorial):
                return False
    return True


# ── Diagram automorphisms ─────────────────────────────────────────────────


def lift_diagram_automorphism(cb: ChevalleyBasis, rho: DiagramAutomorphism) -> SignedLift:
    """Signed lift sigma_rho with eps = 1 on +-Delta, fixed by height induction."""
    rs = cb.rs
    signs: Dict[Root, int] = {}
    for i in range(rs.rank):
        signs[simple_root(rs.rank, i)] = 1
        signs[neg(simple_root(rs.rank, i))] = 1
    for xi in rs.positive_roots:
        if height(xi) == 1:
            continue
        a, b = extraspecial_pair(rs, xi)
        ra, rb = extend_to_roots(rs, rho, a), extend_to_roots(rs, rho, b)
        # sigma[e_a, e_b] = [sigma e_a, sigma e_b]
        ratio = Fraction(signs[a] * signs[b] * cb.n(ra, rb), cb.n(a, b))
        if abs(ratio) != 1:
            raise InternalConsistencyError(f"{rs.label}: inconsistent sign system at {xi}")
        signs[xi] = int(ratio)
        signs[neg(xi)] = int(ratio)

    sigma = np.zeros((cb.dim, cb.dim), dtype=np.int64)
    for alpha in rs.roots:
        sigma[cb.index_of_root(extend_to_roots(rs, rho, alpha)), cb.index_of_root(alpha)] = signs[alpha]
    for i in range(rs.rank):
        sigma[cb.index_of_h(rho(i)), cb.index_of_h(i)] = 1
    sigma.setflags(write=False)

    for k in range(cb.dim):
        image = sigma[:, k]
        target = sum(
            (int(c) * cb.ad_basis(m) for m, c in enumerate(image) if c),
            np.zeros((cb.dim, cb.dim), dtype=np.int64),
        )
        # sigma ad(x) sigma^-1 = ad(sigma x); sigma^-1 = sigma^T
        if not np.array_equal(sigma @ cb.ad_basis(k) @ sigma.T, target):
            raise InternalConsistencyError(
                f"{rs.label}: sigma_rho for {rho.cycles()} is not a Lie automorphism"
            )

    ordered = tuple(sorted(signs.items(), key=lambda kv: _signed_order_key(kv[0])))
    return SignedLift(rho=rho, signs=ordered, matrix=sigma)


def _signed_order_key(r: Root) -> Tuple[bool, Tuple[int, Root]]:
    """Positive roots first, each half in height order."""
    positive = is_positive(r)
    return not positive, root_order_key(r if positive else neg(r))
