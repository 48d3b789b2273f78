"""
Twisted conjugacy engine.

x ~_phi y iff y = g x phi(g)^-1 for some g. Classes are the orbits of the
generator moves x -> s x phi(s)^-1, merged in a union-find over element
indices. Classes are reported in increasing order of the canonical encoding
of their minimal element.
"""
from dataclasses import dataclass, field
from itertools import product
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.core.exceptions import (
    DegenerateTorusError,
    FieldTooSmallError,
    InternalConsistencyError,
    ValidationError,
)
from app.services.lie_processing.automorphisms import (
    Automorphism,
    Compose,
    Conjugation,
    Identity,
    Inner,
    ProductTwist,
    induced_quotient,
    require_same_domain,
)
from app.services.lie_processing.base_lie_processing_service import BaseService
from app.services.lie_processing.chevgroup import (
    ChevalleyGroup,
    DirectProduct,
    Element,
    FiniteGroup,
    GroupElement,
    classical,
    diagonal,
    inverse_mod,
    is_diagonal,
    is_unitriangular,
)
from app.services.lie_processing.liealgebra import ChevalleyBasis
from app.services.lie_processing.rootsystem import RootSystem
from app.services.lie_processing.scalars import PrimeField
from app.services.lie_processing.union_find import UnionFind


@dataclass
class TwistedClass:
    representative: Element
    size: int
    members: Optional[List[Element]] = None


@dataclass
class TwistedPartition:
    group: FiniteGroup
    descriptor: str
    classes: List[TwistedClass]
    class_of: List[int] = field(repr=False)

    @property
    def R(self) -> int:
        return len(self.classes)

    def class_index(self, x: Element) -> int:
        return self.class_of[self.group.index_of(x)]


def _cycles(sigma: Sequence[int]) -> List[List[int]]:
    seen, cycles = set(), []
    for start in range(len(sigma)):
        if start in seen:
            continue
        cycle, i = [], start
        while i not in seen:
            seen.add(i)
            cycle.append(i)
            i = sigma[i]
        cycles.append(cycle)
    return cycles


def solve_unipotent(d: GroupElement, g: GroupElement) -> GroupElement:
    """Unique unitriangular y with y g = d y d^-1.

    Solves (t_i t_j^-1 - 1) y_ij = g_ij + sum_{i<k<j} y_ik g_kj along the
    superdiagonals and checks the matrix identity before returning.
    """
    p = d.p
    if g.p != p or g.dim != d.dim:
        raise ValidationError("d and g must be matrices of the same size over the same field")
    if not is_diagonal(d.matrix) or d.det() == 0:
        raise ValidationError("d must be an invertible diagonal matrix")
    if not is_unitriangular(g.matrix):
        raise ValidationError("g must be upper unitriangular")
    n = d.dim
    t = [int(v) for v in np.diag(d.matrix)]
    y = np.eye(n, dtype=np.int64)
    G = g.matrix
    for gap in range(1, n):
        for i in range(n - gap):
            j = i + gap
            coeff = (t[i] * pow(t[j], -1, p) - 1) % p
            if coeff == 0:
                raise DegenerateTorusError(f"degenerate torus element: t_{i + 1} t_{j + 1}^-1 = 1")
            rhs = (int(G[i, j]) + sum(int(y[i, k]) * int(G[k, j]) for k in range(i + 1, j))) % p
            y[i, j] = rhs * pow(coeff, -1, p) % p
    Y = GroupElement(y, p)
    d_inv = GroupElement(inverse_mod(d.matrix, p), p)
    if Y @ g != d @ Y @ d_inv:
        raise InternalConsistencyError("unipotent solver produced y with y g != d y d^-1")
    return Y


def _torus_character(coords: Sequence[int], exponents: Sequence[int], p: int) -> int:
    value = 1
    for t, e in zip(coords, exponents):
        value = value * pow(t, e, p) % p
    return value


def unipo_torus_search(rs: RootSystem, p: int) -> Tuple[int, ...]:
    """First (t_1..t_n) in lexicographic order with prod_j t_j^<a, b_j^vee> != 1 for all a > 0."""
    PrimeField(p)  # validates p
    exponents = [
        [rs.pairing(alpha, beta) for beta in rs.simple_roots] for alpha in rs.positive_roots
    ]
    for coords in product(range(1, p), repeat=rs.rank):
        if all(_torus_character(coords, row, p) != 1 for row in exponents):
            return tuple(coords)
    raise FieldTooSmallError(f"field too small: no torus element of {rs.label} over GF({p}) moves every root")


class TwistedConjugacyService(BaseService):
    """
    Reidemeister partitions and the structural checks built on them
    """

    def _setup(self) -> None:
        self.cap: int = self.config.ENUMERATION_CAP
        self.materialize_limit: int = self.config.CLASS_MATERIALIZE_LIMIT
        self.closure_samples: int = self.config.CLASS_CLOSURE_SAMPLES

    def cleanup(self) -> None:
        pass

    # ── Partition ────────────────────────────────────────────────────────────

    def _moves(self, G: FiniteGroup, phi: Automorphism) -> List[Tuple[Element, Element]]:
        return [(s, G.inverse(phi._map(s))) for s in G.generators]

    def reidemeister(self, G: FiniteGroup, phi: Automorphism) -> TwistedPartition:
        """Complete partition of G into phi-twisted classes."""
        require_same_domain(phi, G)
        elems = G.elements(self.cap)
        moves = self._moves(G, phi)
        uf = UnionFind(len(elems))
        for k, x in enumerate(elems):
            for s, t in moves:
                uf.union(k, G.index_of(G.multiply(G.multiply(s, x), t)))

        groups = []
        for members in uf.groups().values():
            rep = min((elems[k] for k in members), key=G.encode)
            groups.append((G.encode(rep), rep, members))
        groups.sort(key=lambda item: item[0])

        class_of = [0] * len(elems)
        classes = []
        for c, (_, rep, members) in enumerate(groups):
            for k in members:
                class_of[k] = c
            kept = None
            if len(members) <= self.materialize_limit:
                kept = sorted((elems[k] for k in members), key=G.encode)
            classes.append(TwistedClass(representative=rep, size=len(members), members=kept))
        self.log_debug(f"R({phi.descriptor}) on {G.label} = {len(classes)}")
        return TwistedPartition(group=G, descriptor=phi.descriptor, classes=classes, class_of=class_of)

    def twisted_class(self, G: FiniteGroup, phi: Automorphism, x: Element) -> List[Element]:
        """The orbit {g x phi(g)^-1}, sorted by encoding."""
        require_same_domain(phi, G)
        G.check_member(x)
        moves = self._moves(G, phi)
        seen = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for s, t in moves:
                    z = G.multiply(G.multiply(s, y), t)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
        return sorted(seen, key=G.encode)

    def brute_force_class_count(self, G: FiniteGroup, phi: Automorphism) -> int:
        """R by sweeping all g for every unassigned x; independent of the union-find."""
        require_same_domain(phi, G)
        elems = G.elements(self.cap)
        twisted_inv = [G.inverse(phi._map(g)) for g in elems]
        assigned = set()
        count = 0
        for x in elems:
            if x in assigned:
                continue
            count += 1
            for g, t in zip(elems, twisted_inv):
                assigned.add(G.multiply(G.multiply(g, x), t))
        return count

    def partition_check(self, partition: TwistedPartition, phi: Automorphism) -> Dict:
        """Cover-once and sampled class-closure checks."""
        G = partition.group
        elems = G.elements()
        total = sum(c.size for c in partition.classes)
        disjoint = len(partition.class_of) == len(elems) and total == len(elems)
        closed = True
        for cls in partition.classes:
            sample = cls.members if cls.members is not None else [cls.representative]
            for x in sample:
                for _ in range(self.closure_samples if len(elems) > 1 else 0):
                    g = G.random_element(self.rng)
                    y = G.multiply(G.multiply(g, x), G.inverse(phi._map(g)))
                    if partition.class_index(y) != partition.class_index(x):
                        closed = False
                        break
                if not closed:
                    break
            if not closed:
                break
        return {"name": f"partition {G.label} {phi.descriptor}", "passed": disjoint and closed,
                "checked": total, "counterexample": None if disjoint and closed else {"covers": disjoint, "closed": closed}}

    def coincidence_surjective(self, G: FiniteGroup, phi: Automorphism) -> bool:
        """g -> g phi(g)^-1 is onto."""
        require_same_domain(phi, G)
        elems = G.elements(self.cap)
        image = {G.multiply(g, G.inverse(phi._map(g))) for g in elems}
        return len(image) == len(elems)

    def fixed_subgroup(self, G: FiniteGroup, phi: Automorphism) -> List[Element]:
        """{x : phi(x) = x}, checked to be a subgroup."""
        require_same_domain(phi, G)
        fixed = [x for x in G.elements(self.cap) if phi._map(x) == x]
        members = set(fixed)
        if G.identity not in members:
            raise InternalConsistencyError(f"{phi.descriptor} does not fix the identity")
        if len(fixed) ** 2 <= self.config.SUBGROUP_PAIR_CHECK_LIMIT:
            pairs = ((a, b) for a in fixed for b in fixed)
        else:
            idx = self.rng.integers(len(fixed), size=(self.config.SUBGROUP_PAIR_SAMPLES, 2))
            pairs = ((fixed[i], fixed[j]) for i, j in idx)
        for a, b in pairs:
            if G.multiply(a, G.inverse(b)) not in members:
                raise InternalConsistencyError(f"fixed points of {phi.descriptor} are not a subgroup")
        return sorted(fixed, key=G.encode)

    # ── Lemma checks ─────────────────────────────────────────────────────────

    def inner_shift_check(self, G: FiniteGroup, phi: Automorphism, g: Element) -> Dict:
        """[x]_{phi o Int_g} -> [x phi(g)]_phi is a well-defined bijection."""
        G.check_member(g)
        psi = Compose(G, [phi, Inner(G, g)])
        part_phi = self.reidemeister(G, phi)
        part_psi = self.reidemeister(G, psi)
        shift = phi._map(g)
        mapping: Dict[int, int] = {}
        well_defined = True
        for x in G.elements():
            source = part_psi.class_index(x)
            target = part_phi.class_index(G.multiply(x, shift))
            if mapping.setdefault(source, target) != target:
                well_defined = False
                break
        bijective = well_defined and len(set(mapping.values())) == part_phi.R == len(mapping)
        identical = None
        if g == G.identity:
            identical = [c.size for c in part_phi.classes] == [c.size for c in part_psi.classes] and \
                part_phi.class_of == part_psi.class_of
        passed = well_defined and bijective and part_phi.R == part_psi.R and identical is not False
        return {
            "group": G.label,
            "phi": phi.descriptor,
            "R_phi": part_phi.R,
            "R_shifted": part_psi.R,
            "well_defined": well_defined,
            "bijective": bijective,
            "passed": passed,
        }

    def ses_check(self, G: FiniteGroup, N: Sequence[Element], phi: Automorphism) -> Dict:
        """R(phi) >= R(phi-bar) via the surjection [x]_phi -> [pi x]_phi-bar."""
        phi_bar = induced_quotient(phi, G, N)
        Q = phi_bar.domain
        part_G = self.reidemeister(G, phi)
        part_Q = self.reidemeister(Q, phi_bar)
        mapping: Dict[int, int] = {}
        well_defined = True
        for x in G.elements():
            target = part_Q.class_index(Q.representative(x))
            if mapping.setdefault(part_G.class_index(x), target) != target:
                well_defined = False
                break
        surjective = well_defined and set(mapping.values()) == set(range(part_Q.R))
        return {
            "group": G.label,
            "quotient": Q.label,
            "phi": phi.descriptor,
            "R_phi": part_G.R,
            "R_quotient": part_Q.R,
            "well_defined": well_defined,
            "surjective": surjective,
            "passed": well_defined and surjective and part_G.R >= part_Q.R,
        }

    def cycle_composite(self, twist: ProductTwist, start: int) -> Automorphism:
        """phi_i o phi_{s^-1(i)} o ... along the cycle of sigma through i."""
        parts, i = [], start
        while True:
            parts.append(twist.factors[i])
            i = twist.sigma_inv[i]
            if i == start:
                break
        domain = twist.domain.factors[start]
        if len(parts) == 1:
            return parts[0]
        return Compose(domain, parts)

    def product_twist_analysis(
        self,
        P: DirectProduct,
        factors: Sequence[Automorphism],
        sigma: Sequence[int],
    ) -> Dict:
        """R on the product against the cycle composites of sigma."""
        twist = ProductTwist(P, factors, sigma).validate(self.cap)
        part_P = self.reidemeister(P, twist)
        cycles_report = []
        product_R = 1
        reduction_ok = True
        for cycle in _cycles(tuple(sigma)):
            start = cycle[0]
            composite = self.cycle_composite(twist, start)
            G = P.factors[start]
            part_G = self.reidemeister(G, composite)
            product_R *= part_G.R
            forward: Dict[int, int] = {}
            backward: Dict[int, int] = {}
            for a in G.elements():
                cg = part_G.class_index(a)
                cp = part_P.class_index(P.embed(start, a))
                if forward.setdefault(cg, cp) != cp or backward.setdefault(cp, cg) != cg:
                    reduction_ok = False
                    break
            cycles_report.append({
                "cycle": [k + 1 for k in cycle],
                "composite": composite.descriptor,
                "R": part_G.R,
            })
        return {
            "group": P.label,
            "phi": twist.descriptor,
            "R": part_P.R,
            "cycles": cycles_report,
            "product_of_cycle_R": product_R,
            "reduction_holds": reduction_ok,
            "passed": reduction_ok and part_P.R == product_R,
        }

    # ── Unipotent analyses ───────────────────────────────────────────────────

    def solve_unipotent(self, d: GroupElement, g: GroupElement) -> GroupElement:
        return solve_unipotent(d, g)

    def solve_unipotent_trials(self, n: int, p: int, d_values: Sequence[int], trials: int) -> Dict:
        """Random g in U_n(F_p); every solution is self-checked."""
        d = diagonal(d_values, p)
        solved = 0
        for _ in range(trials):
            upper = self.rng.integers(p, size=(n, n))
            g = GroupElement(np.triu(upper, 1) + np.eye(n, dtype=np.int64), p)
            y = solve_unipotent(d, g)
            phi_y = d @ y @ GroupElement(inverse_mod(d.matrix, p), p)
            if GroupElement(inverse_mod(y.matrix, p), p) @ phi_y != g:
                break
            solved += 1
        return {"name": f"solve-unipotent n={n} p={p} d={list(d_values)}",
                "passed": solved == trials, "checked": solved, "counterexample": None}

    def unipo_torus_search(self, rs: RootSystem, p: int) -> Tuple[int, ...]:
        return unipo_torus_search(rs, p)

    def unipotent_torus_analysis(self, cb: ChevalleyBasis, p: int) -> Dict:
        """Torus element moving every root; its action on U has trivial fixed points and R = 1."""
        rs = cb.rs
        coords = unipo_torus_search(rs, p)
        G = ChevalleyGroup(cb, PrimeField(p))
        h = G.torus_element(coords)
        U = G.positive_unipotent()
        phi = Conjugation(U, h, "torus:t=" + ",".join(map(str, coords))).validate(self.cap)
        fixed = self.fixed_subgroup(U, phi)
        R = self.reidemeister(U, phi).R
        surjective = self.coincidence_surjective(U, phi)
        brute = self.brute_force_class_count(U, phi)
        return {
            "type": rs.label,
            "p": p,
            "torus": list(coords),
            "unipotent_order": U.order(),
            "fixed_order": len(fixed),
            "R": R,
            "R_brute_force": brute,
            "coincidence_surjective": surjective,
            "passed": len(fixed) == 1 and R == 1 and brute == 1 and surjective,
        }

    # ── Borel of SL_2 ────────────────────────────────────────────────────────

    def borel2_analysis(self, p: int) -> Dict:
        """Scale automorphisms, the displayed non-homomorphism and R(identity) of B_2(F_p)."""
        if p % 2 == 0:
            raise ValidationError("borel2 analysis needs odd p")
        B = classical("Borel2", 2, p)
        elems = B.elements(self.cap)
        field_ = PrimeField(p)

        def displayed(x: GroupElement, alpha: int) -> GroupElement:
            a, b = int(x.matrix[0, 0]), int(x.matrix[0, 1])
            a_inv = pow(a, -1, p)
            return GroupElement([[a_inv, alpha * a_inv * a_inv * b], [0, a]], p)

        failing_pair = None
        displayed_is_hom = True
        for x in elems:
            for y in elems:
                if displayed(B.multiply(x, y), 1) != B.multiply(displayed(x, 1), displayed(y, 1)):
                    displayed_is_hom = False
                    failing_pair = [x.tolist(), y.tolist()]
                    break
            if not displayed_is_hom:
                break
        all_alpha_agree = all(
            (displayed_is_hom == self._is_hom_table(B, {x: displayed(x, alpha) for x in elems}))
            for alpha in range(2, p)
        )

        scale_R = []
        for alpha in field_.units():
            psi = Conjugation(B, diagonal([alpha.value, 1], p), f"borel-scale:alpha={alpha.value}")
            psi.validate(self.cap)
            scale_R.append({"alpha": alpha.value, "R": self.reidemeister(B, psi).R})
        fourth_powers_trivial = all(pow(c, 4, p) == 1 for c in range(1, p))
        R_identity = self.reidemeister(B, Identity(B)).R
        return {
            "p": p,
            "order": len(elems),
            "R_identity": R_identity,
            "R_identity_brute_force": self.brute_force_class_count(B, Identity(B)),
            "scale_automorphisms": scale_R,
            "min_R": min(item["R"] for item in scale_R),
            "displayed_map_homomorphism": displayed_is_hom,
            "displayed_map_expected": fourth_powers_trivial,
            "displayed_map_failing_pair": failing_pair,
            "passed": displayed_is_hom == fourth_powers_trivial and all_alpha_agree,
        }

    def _is_hom_table(self, G: FiniteGroup, table: Dict[Element, Element]) -> bool:
        for x in G.elements():
            for s in G.generators:
                if table[G.multiply(x, s)] != G.multiply(table[x], table[s]):
                    return False
        return True

    # ── Abelian shadows ──────────────────────────────────────────────────────

    def expected_cycle_twist_R(self, r: int, p: int) -> int:
        """gcd(r, p - 1): the kernel of the coincidence map on D_n(F_p)."""
        return gcd(r, p - 1)


