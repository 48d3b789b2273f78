"""
Verification Service
Runs the verify suites and collects one CheckResult row per check
"""
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.schemas.models import CheckResult, Suite, SuiteReport
from app.services.group_theory_service import GroupTheoryService
from app.services.lie_processing import rootsystem
from app.services.lie_processing.automorphisms import (
    Automorphism,
    Conjugation,
    DiagonalCycleTwist,
    DiagonalInverse,
    DiagramConj,
    Identity,
    Inner,
    ProductTwist,
    diagram_conj_check,
    torus_permutation_check,
)
from app.services.lie_processing.chevgroup import (
    ChevalleyGroup,
    DirectProduct,
    FiniteGroup,
    additivity_check,
    classical,
    diagonal,
    group_axioms_check,
    multiplicativity_check,
    scalar_center,
    steinberg_conjugation_check,
)
from app.services.lie_processing.liealgebra import (
    antisymmetry_violations,
    chain_violations,
    divided_powers_integral,
    jacobi_violation,
    lift_diagram_automorphism,
)
from app.services.lie_processing.scalars import PrimeField
from app.utils.logger import debug_logger

ALGEBRAIC_CLOSURE_NOTE = "over an algebraically closed field every t is a square and R = 1"
SIGNED_TORUS_NOTE = "for eps=-1 the image is h(-t) h(-1) = h(t), so h(eps t) is off by h(-1)"


def _detail(**fields) -> str:
    return "; ".join(f"{k}={v}" for k, v in fields.items())


def _row(result: Dict, **extra) -> CheckResult:
    """CheckResult from a processing-layer result dict."""
    fields = {}
    if result.get("counterexample") is not None:
        fields["counterexample"] = result["counterexample"]
    fields.update(extra)
    return CheckResult(
        name=result["name"],
        passed=bool(result["passed"]),
        checked=int(result.get("checked", 0)),
        detail=_detail(**fields),
    )


class VerificationService:
    """
    Verify suites over the group-theory service
    Every suite reseeds the random generators so reports are reproducible
    """

    def __init__(self, service: GroupTheoryService):
        self.service = service
        self.config = service.verification_config
        self.twisted = service.twisted
        self.torus = service.torus
        self.rng = np.random.default_rng(service.seed)

    def run(self, suite: Suite, type_label: Optional[str] = None,
            rank: Optional[int] = None, p: Optional[int] = None) -> SuiteReport:
        suite = Suite(suite)
        runners: Dict[Suite, Callable[[], List[CheckResult]]] = {
            Suite.CHEVALLEY_RELATIONS: lambda: self.chevalley_relations(type_label, rank, p),
            Suite.LEMMAS: self.lemmas,
            Suite.PAPER_EXAMPLES: self.worked_examples,
        }
        order = list(runners) if suite == Suite.ALL else [suite]
        results: List[CheckResult] = []
        for name in order:
            self._reseed()
            debug_logger.info(f"Running verify suite {name.value}")
            results += runners[name]()
        passed = all(r.passed for r in results)
        if not passed:
            failed = [r.name for r in results if not r.passed]
            debug_logger.warning(f"Verify suite {suite.value}: {len(failed)} failing checks: {failed}")
        return SuiteReport(suite=suite, seed=self.service.seed, passed=passed, results=results)

    def _reseed(self) -> None:
        seed = self.service.seed
        self.rng = np.random.default_rng(seed)
        self.twisted.reseed(seed)
        self.torus.reseed(seed)

    # ── chevalley-relations ──────────────────────────────────────────────────

    def chevalley_relations(self, type_label: Optional[str] = None, rank: Optional[int] = None,
                            p: Optional[int] = None) -> List[CheckResult]:
        if type_label is not None and rank is not None:
            types: Sequence[Tuple[str, int]] = [(type_label.upper(), rank)]
        else:
            types = [
                t for t in self.config.RELATION_TYPES
                if (type_label is None or t[0] == type_label.upper()) and (rank is None or t[1] == rank)
            ]
        primes = [p] if p is not None else list(self.config.RELATION_PRIMES)
        results: List[CheckResult] = []
        for (t, r), q in product(types, primes):
            cb = self.service.chevalley_basis(t, r)
            field = PrimeField(q)
            label = f"{cb.rs.label} p={q}"
            for check in (additivity_check, multiplicativity_check, steinberg_conjugation_check):
                res = check(cb, field)
                res["name"] = f"{res['name']} {label}"
                results.append(_row(res))
            results += self._rank_one(cb, field)
        structure = types if type_label is not None else list(self.config.STRUCTURE_TYPES)
        for t, r in structure:
            results += self._structure_constants(t, r)
        return results

    def _rank_one(self, cb, field: PrimeField) -> List[CheckResult]:
        """<x_a(1), x_-a(1)> is SL_2(p), or PSL_2(p) when every <b, a^vee> is even."""
        rs = cb.rs
        G = ChevalleyGroup(cb, field)
        alpha = rs.simple_roots[0]
        H = G.rank_one_subgroup(alpha)
        q = field.p
        sl2 = q * (q * q - 1)
        faithful = q == 2 or any(rs.pairing(b, alpha) % 2 for b in rs.roots)
        expected = sl2 if faithful else sl2 // 2
        order = H.order(self.service.cap)
        axioms = group_axioms_check(H, self.rng)
        axioms["name"] = f"group axioms {H.label}"
        return [
            CheckResult(
                name=f"rank-one subgroup order {rs.label} p={q}",
                passed=order == expected,
                checked=order,
                detail=_detail(order=order, expected=expected),
            ),
            _row(axioms),
        ]

    def _structure_constants(self, type_label: str, rank: int) -> List[CheckResult]:
        cb = self.service.chevalley_basis(type_label, rank)
        label = cb.rs.label
        bad_anti = antisymmetry_violations(cb)
        bad_chain = chain_violations(cb)
        jacobi = jacobi_violation(cb)
        order = self.config.DIVIDED_POWER_ORDER
        pairs = len(cb.constants)
        return [
            CheckResult(name=f"antisymmetry {label}", passed=not bad_anti, checked=pairs,
                        detail=_detail(violations=len(bad_anti))),
            CheckResult(name=f"|N| = p + 1 {label}", passed=not bad_chain, checked=pairs,
                        detail=_detail(violations=len(bad_chain))),
            CheckResult(name=f"jacobi {label}", passed=jacobi is None, checked=cb.dim * (cb.dim - 1) // 2,
                        detail=_detail(first_failure=jacobi) if jacobi else ""),
            CheckResult(name=f"divided powers integral {label}", passed=divided_powers_integral(cb, order),
                        checked=len(cb.rs.roots), detail=_detail(order=order)),
        ]

    # ── lemmas ───────────────────────────────────────────────────────────────

    def lemmas(self) -> List[CheckResult]:
        results = self._gamma_table()
        results += self._diagram_conjugations()
        results += self._unipotent_torus()
        results += self._inner_shift()
        results += self._exact_sequence()
        results += self._product_reduction()
        results += self._fixed_torus()
        results += self._partitions()
        return results

    def _gamma_table(self) -> List[CheckResult]:
        results = []
        for t, r, expected in self.config.GAMMA_TABLE:
            rs = self.service.root_system(t, r)
            gamma = rootsystem.diagram_automorphisms(rs)
            results.append(CheckResult(
                name=f"|Gamma| {rs.label}", passed=len(gamma) == expected, checked=1,
                detail=_detail(order=len(gamma), expected=expected),
            ))
        return results

    def _diagram_conjugations(self) -> List[CheckResult]:
        results = []
        field = PrimeField(self.config.DIAGRAM_PRIME)
        for t, r in self.config.DIAGRAM_TYPES:
            cb = self.service.chevalley_basis(t, r)
            G = ChevalleyGroup(cb, field)
            for rho in rootsystem.diagram_automorphisms(cb.rs):
                if rho.is_identity:
                    continue
                phi = DiagramConj(G, lift_diagram_automorphism(cb, rho))
                res = diagram_conj_check(phi, cb, field)
                results.append(_row(
                    res,
                    simple_signs_positive=res["simple_signs_positive"],
                    roots_with_positive_sign=res["roots_with_positive_sign"],
                    signed_h_form_holds=res["signed_h_form_holds"],
                    signed_h_form_misses=res["signed_h_form_misses"],
                    note=SIGNED_TORUS_NOTE,
                ))
                permutes = torus_permutation_check(phi, G)
                results.append(CheckResult(
                    name=f"torus coordinates permuted {cb.rs.label} {rho.cycles()} p={field.p}",
                    passed=permutes, checked=cb.rs.rank * (field.p - 1),
                ))
        return results

    def _unipotent_torus(self) -> List[CheckResult]:
        cb = self.service.chevalley_basis("A", 2)
        report = self.twisted.unipotent_torus_analysis(cb, 7)
        return [CheckResult(
            name=f"torus action on U {report['type']} p={report['p']}",
            passed=report["passed"],
            checked=report["unipotent_order"],
            detail=_detail(torus=report["torus"], fixed_order=report["fixed_order"], R=report["R"],
                           R_brute_force=report["R_brute_force"],
                           coincidence_surjective=report["coincidence_surjective"]),
        )]

    def _automorphism_pool(self, G: FiniteGroup) -> List[Automorphism]:
        """Automorphisms sampled by the inner-shift check."""
        pool: List[Automorphism] = [Identity(G), Inner(G, G.random_element(self.rng), "inner:random")]
        if G.label.startswith("D_"):
            pool += [DiagonalInverse(G), DiagonalCycleTwist(G, 2)]
        elif G.label.startswith("U_"):
            pool.append(Conjugation(G, diagonal([1, 2] + [1] * (G.dim - 2), G.p), "conj:d=1,2,1"))
        elif G.label.startswith("B_2"):
            pool.append(Conjugation(G, diagonal([2, 1], G.p), "borel-scale:alpha=2"))
        for phi in pool:
            phi.validate(self.service.cap)
        return pool

    def _inner_shift(self) -> List[CheckResult]:
        results = []
        groups = [classical("SL", 2, 3), classical("U", 3, 3), classical("D", 2, 5), classical("B2", 2, 3)]
        trials = self.config.INNER_SHIFT_TRIALS
        for G in groups:
            pool = self._automorphism_pool(G)
            passed, checked, failure = True, 0, None
            for _ in range(trials):
                phi = pool[int(self.rng.integers(len(pool)))]
                g = G.random_element(self.rng)
                res = self.twisted.inner_shift_check(G, phi, g)
                checked += 1
                if not res["passed"]:
                    passed = False
                    failure = f"{res['phi']} R={res['R_phi']} shifted={res['R_shifted']}"
                    break
            results.append(CheckResult(
                name=f"R(phi o Int_g) = R(phi) {G.label}", passed=passed, checked=checked,
                detail=_detail(failure=failure) if failure else "",
            ))
        return results

    def _exact_sequence(self) -> List[CheckResult]:
        results = []
        for q in (3, 5):
            G = classical("SL", 2, q)
            center = scalar_center(2, PrimeField(q))
            for _ in range(3):
                phi = Inner(G, G.random_element(self.rng), "inner:random")
                results.append(self._ses_row(G, center, phi, "center"))
        D = classical("D", 2, 5)
        squares = [diagonal([a, b], 5) for a, b in product(PrimeField(5).squares(), repeat=2)]
        results.append(self._ses_row(D, squares, DiagonalInverse(D), "squares"))
        return results

    def _ses_row(self, G: FiniteGroup, N: Sequence, phi: Automorphism, subgroup: str) -> CheckResult:
        res = self.twisted.ses_check(G, N, phi)
        return CheckResult(
            name=f"R(phi) >= R(phi-bar) {G.label} mod {subgroup}",
            passed=res["passed"],
            checked=G.order(),
            detail=_detail(R_phi=res["R_phi"], R_quotient=res["R_quotient"],
                           well_defined=res["well_defined"], surjective=res["surjective"]),
        )

    def _product_reduction(self) -> List[CheckResult]:
        results = []
        sl2 = classical("SL", 2, 3)
        d1 = classical("D", 1, 7)
        cases = [
            (sl2, [Inner(sl2, sl2.generators[0], "inner:g1"), Identity(sl2)]),
            (d1, [DiagonalInverse(d1), Identity(d1)]),
        ]
        for G, factors in cases:
            P = DirectProduct([G, G])
            res = self.twisted.product_twist_analysis(P, factors, (1, 0))
            brute = self.twisted.brute_force_class_count(P, ProductTwist(P, factors, (1, 0)))
            results.append(CheckResult(
                name=f"product twist reduction {P.label} sigma=(1 2)",
                passed=res["passed"] and brute == res["R"],
                checked=P.order(),
                detail=_detail(R=res["R"], cycle_R=res["product_of_cycle_R"], R_brute_force=brute,
                               reduction_holds=res["reduction_holds"]),
            ))
        return results

    def _fixed_torus(self) -> List[CheckResult]:
        results = []
        q = self.config.STEP1_PRIME
        for t, r in self.config.STEP1_TYPES:
            cb = self.service.chevalley_basis(t, r)
            for rho in rootsystem.diagram_automorphisms(cb.rs):
                if rho.is_identity:
                    continue
                report = self.torus.case_witness(cb, rho, q)
                expected_kind = "CaseI" if rootsystem.fixed_simple_root_exists(cb.rs, rho) else "CaseII"
                results.append(CheckResult(
                    name=f"fixed torus {cb.rs.label} {rho.cycles()}",
                    passed=report["verified"] and report["d"] >= 1 and report["witness_kind"] == expected_kind,
                    checked=report["p"] - 1,
                    detail=_detail(d=report["d"], witness=report["witness_kind"], alpha=report["alpha"],
                                   p=report["p"], t=report["nontrivial_t"]),
                ))
        return results

    def _partitions(self) -> List[CheckResult]:
        results = []
        sl2 = classical("SL", 2, 3)
        d2 = classical("D", 2, 5)
        for G, phi in ((sl2, Identity(sl2)), (d2, DiagonalInverse(d2))):
            res = self.twisted.partition_check(self.twisted.reidemeister(G, phi), phi)
            results.append(_row(res))
        return results

    # ── worked examples ───────────────────────────────────────────────────────

    def worked_examples(self) -> List[CheckResult]:
        results = self._unipotent_solver()
        results += self._growth()
        results += self._diagonal_inverse()
        results += self._cycle_twist()
        results += self._mixed_products()
        results += self._borel()
        return results

    def _unipotent_solver(self) -> List[CheckResult]:
        results = []
        trials = self.config.UNIPOTENT_SOLVER_TRIALS
        for n, q in product((2, 3), (5, 7)):
            d_values = [1, 2, 4][:n]
            results.append(_row(self.twisted.solve_unipotent_trials(n, q, d_values, trials)))
        U = classical("U", 3, 5)
        phi = Conjugation(U, diagonal([1, 2, 4], 5), "unipotent-conj:d=1,2,4").validate(self.service.cap)
        R = self.twisted.reidemeister(U, phi).R
        brute = self.twisted.brute_force_class_count(U, phi)
        results.append(CheckResult(
            name=f"R(phi_d) = 1 {U.label} d=1,2,4",
            passed=R == 1 and brute == 1,
            checked=U.order(),
            detail=_detail(R=R, R_brute_force=brute, note="finite-field shadow"),
        ))
        return results

    def _growth(self) -> List[CheckResult]:
        results = []
        for family, primes in (("SL", self.config.SL2_GROWTH_PRIMES), ("B2", self.config.BOREL_GROWTH_PRIMES)):
            values, matches = [], True
            for q in primes:
                G = classical(family, 2, q)
                R = self.twisted.reidemeister(G, Identity(G)).R
                matches = matches and R == self.twisted.brute_force_class_count(G, Identity(G))
                if family == "SL":
                    matches = matches and R == q + 4
                values.append(R)
            increasing = all(a < b for a, b in zip(values, values[1:]))
            results.append(CheckResult(
                name=f"R(identity) grows on {family}_2(F_p)",
                passed=increasing and matches,
                checked=len(values),
                detail=_detail(primes=list(primes), R=values, brute_force_agrees=matches),
            ))
        return results

    def _diagonal_inverse(self) -> List[CheckResult]:
        results = []
        for n, q in product((1, 2, 3), (5, 7)):
            D = classical("D", n, q)
            field = PrimeField(q)
            part = self.twisted.reidemeister(D, DiagonalInverse(D).validate(self.service.cap))
            square_values = {s.value for s in field.squares()}
            square_classes = all(
                all(
                    (int(m.matrix[i, i]) * pow(int(c.representative.matrix[i, i]), -1, q)) % q in square_values
                    for i in range(n)
                )
                for c in part.classes for m in c.members
            )
            squares = {diagonal(list(t), q) for t in product(sorted(square_values), repeat=n)}
            identity_class = set(part.classes[part.class_index(D.identity)].members)
            passed = part.R == 2 ** n and square_classes and identity_class == squares
            results.append(CheckResult(
                name=f"diag-inverse square classes {D.label}",
                passed=passed,
                checked=D.order(),
                detail=_detail(R=part.R, expected=2 ** n, identity_class_is_squares=identity_class == squares,
                               note=ALGEBRAIC_CLOSURE_NOTE),
            ))
        return results

    def _cycle_twist(self) -> List[CheckResult]:
        results = []
        for n, q, r in product((2, 3), (5, 7), (1, 2, 3)):
            D = classical("D", n, q)
            phi = DiagonalCycleTwist(D, r).validate(self.service.cap)
            R = self.twisted.reidemeister(D, phi).R
            fixed = len(self.twisted.fixed_subgroup(D, phi))
            expected = self.twisted.expected_cycle_twist_R(r, q)
            results.append(CheckResult(
                name=f"diag-cycle-twist {D.label} r={r}",
                passed=R == expected == fixed,
                checked=D.order(),
                detail=_detail(R=R, fixed_order=fixed, expected=expected),
            ))
        return results

    def _mixed_products(self) -> List[CheckResult]:
        results = []
        for q in (5, 7):
            U = classical("U", 2, q)
            D = classical("D", 1, q)
            alpha = PrimeField(q).primitive_root.value
            factors = [Conjugation(U, diagonal([alpha, 1], q), f"conj:d={alpha},1"), DiagonalInverse(D)]
            results.append(self._product_row(DirectProduct([U, D]), factors, expected=2))
        D = classical("D", 2, 5)
        U = classical("U", 3, 5)
        factors = [DiagonalInverse(D), Conjugation(U, diagonal([1, 2, 4], 5), "unipotent-conj:d=1,2,4")]
        results.append(self._product_row(DirectProduct([D, U]), factors, expected=4))
        return results

    def _product_row(self, P: DirectProduct, factors: List[Automorphism], expected: int) -> CheckResult:
        res = self.twisted.product_twist_analysis(P, factors, tuple(range(P.n)))
        return CheckResult(
            name=f"coordinatewise twist {P.label}",
            passed=res["passed"] and res["R"] == expected,
            checked=P.order(),
            detail=_detail(phi=res["phi"], R=res["R"], expected=expected,
                           factor_R=[c["R"] for c in res["cycles"]], note="finite-field shadow"),
        )

    def _borel(self) -> List[CheckResult]:
        results = []
        for q in self.config.BOREL_GROWTH_PRIMES:
            report = self.twisted.borel2_analysis(q)
            results.append(CheckResult(
                name=f"borel scale automorphisms B_2(F_{q})",
                passed=report["passed"] and report["R_identity"] == report["R_identity_brute_force"],
                checked=report["order"],
                detail=_detail(R_identity=report["R_identity"], min_R=report["min_R"],
                               displayed_map_homomorphism=report["displayed_map_homomorphism"]),
            ))
        return results
