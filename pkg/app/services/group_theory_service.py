"""
Group Theory Service
Main service orchestrating root systems, groups, automorphisms and reports
"""
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from app.core.config import EnumerationConfig, VerificationConfig
from app.core.exceptions import (
    AppError,
    AutomorphismError,
    CacheError,
    ComputationError,
    ValidationError,
)
from app.repositories.base_repository import IRepository
from app.schemas.models import (
    ClassSummary,
    GammaReport,
    GroupBuildReport,
    GroupSpec,
    PhiSpec,
    ReidemeisterReport,
    RootSystemReport,
    SolveUnipotentReport,
    Suite,
    SuiteReport,
    TorusFixedReport,
)
from app.services.base_service import IGroupTheoryService
from app.services.lie_processing import rootsystem
from app.services.lie_processing.automorphisms import (
    Automorphism,
    Compose,
    Conjugation,
    DiagonalCycleTwist,
    DiagonalInverse,
    DiagramConj,
    Identity,
    Inner,
    ProductTwist,
)
from app.services.lie_processing.chevgroup import (
    ChevalleyGroup,
    DirectProduct,
    Element,
    FiniteGroup,
    GroupElement,
    MatrixGroup,
    classical,
    diagonal,
)
from app.services.lie_processing.liealgebra import (
    ChevalleyBasis,
    antisymmetry_violations,
    chain_violations,
    lift_diagram_automorphism,
    structure_constants,
)
from app.services.lie_processing.rootsystem import DiagramAutomorphism, RootSystem
from app.services.lie_processing.scalars import PrimeField
from app.services.lie_processing.torusfixed import TorusFixedService
from app.services.lie_processing.twisted import TwistedConjugacyService, solve_unipotent
from app.utils.logger import debug_logger

UNIPOTENT_SHADOW_NOTE = (
    "finite-field shadow: R = 1 over GF(p) whenever every t_i t_j^-1 != 1"
)


def render_element(x: Element):
    """JSON form of a group element: a matrix, or a list of matrices."""
    if isinstance(x, GroupElement):
        return x.tolist()
    return [render_element(c) for c in x]


class GroupTheoryService(IGroupTheoryService):
    """
    Main group-theory service
    Orchestrates processing services and the structure-constant cache
    """

    def __init__(
        self,
        repository: Optional[IRepository],
        enumeration_config: EnumerationConfig,
        verification_config: VerificationConfig,
        seed: int = 0,
    ):
        """
        Initialize the service with injected dependencies

        Args:
            repository: Structure-constant cache, or None to disable caching
            enumeration_config: Enumeration limits
            verification_config: Suite grids and sampling defaults
            seed: Seed for every sampled check
        """
        self.repository = repository
        self.enumeration_config = enumeration_config
        self.verification_config = verification_config
        self.seed = seed
        self.twisted = TwistedConjugacyService(enumeration_config, seed=seed)
        self.torus = TorusFixedService(verification_config, seed=seed)
        self._root_systems: Dict[Tuple[str, int], RootSystem] = {}
        self._bases: Dict[Tuple[str, int], ChevalleyBasis] = {}
        self._groups: Dict[str, FiniteGroup] = {}
        debug_logger.info("Group theory service initialized")

    @property
    def cap(self) -> int:
        return self.enumeration_config.ENUMERATION_CAP

    # ── Building blocks ──────────────────────────────────────────────────────

    def root_system(self, type_label: str, rank: int) -> RootSystem:
        key = (str(type_label).upper(), rank)
        if key not in self._root_systems:
            self._root_systems[key] = rootsystem.build(*key)
        return self._root_systems[key]

    def chevalley_basis(self, type_label: str, rank: int) -> ChevalleyBasis:
        """Chevalley basis from the cache, recomputed silently on a miss."""
        rs = self.root_system(type_label, rank)
        key = (rs.type_label, rs.rank)
        if key in self._bases:
            return self._bases[key]
        constants = self.repository.load(*key) if self.repository else None
        cb = ChevalleyBasis(rs, constants) if constants is not None else None
        if cb is not None and (antisymmetry_violations(cb) or chain_violations(cb)):
            debug_logger.warning(f"Cached constants for {rs.label} are inconsistent; recomputing")
            cb = None
        if cb is None:
            cb = structure_constants(rs)
            if self.repository:
                try:
                    self.repository.save(rs.type_label, rs.rank, cb.constants)
                except CacheError as e:
                    debug_logger.warning(e.message)
        self._bases[key] = cb
        return cb

    def build_group(self, spec: GroupSpec) -> FiniteGroup:
        """Construct (not enumerate) the group named by a parsed spec."""
        if spec.text in self._groups:
            return self._groups[spec.text]
        if spec.family == "chevalley":
            if spec.form == "sc":
                if spec.type_label != "A":
                    raise ValidationError("simply connected forms are available for type A only")
                group = classical("SL", spec.rank + 1, spec.p)
            else:
                group = ChevalleyGroup(self.chevalley_basis(spec.type_label, spec.rank), PrimeField(spec.p))
        elif spec.family == "classical":
            group = classical(spec.kind.value, spec.n, spec.p)
        elif spec.family == "product":
            factors = [self.build_group(f) for f in spec.factors]
            group = DirectProduct(factors)
        else:
            raise ValidationError(f"unknown group family {spec.family!r}")
        self._groups[spec.text] = group
        return group

    def evaluate_word(self, group: FiniteGroup, word: Sequence[Sequence[int]]) -> Element:
        result = group.identity
        for index, exponent in word:
            if not 1 <= index <= len(group.generators):
                raise ValidationError(f"{group.label} has {len(group.generators)} generators, no g{index}")
            result = group.multiply(result, group.power(group.generators[index - 1], exponent))
        return result

    def build_automorphism(self, group: FiniteGroup, spec: PhiSpec, validate: bool = True) -> Automorphism:
        phi = self._automorphism(group, spec)
        if validate:
            phi.validate(self.cap, np.random.default_rng(self.seed))
        return phi

    def _automorphism(self, group: FiniteGroup, spec: PhiSpec) -> Automorphism:
        kind = spec.kind
        if kind == "identity":
            return Identity(group)
        if kind == "inner":
            return Inner(group, self.evaluate_word(group, spec.word), spec.text)
        if kind == "diagram":
            if not isinstance(group, ChevalleyGroup):
                raise AutomorphismError("diagram automorphisms act on adjoint Chevalley groups")
            rs = group.cb.rs
            rho = DiagramAutomorphism.from_cycles(spec.cycles or "", rs.rank)
            if rho not in rootsystem.diagram_automorphisms(rs):
                raise AutomorphismError(f"{rho.cycles()} is not a diagram automorphism of {rs.label}")
            return DiagramConj(group, lift_diagram_automorphism(group.cb, rho))
        if kind == "diag-inverse":
            return DiagonalInverse(self._matrix_group(group, kind))
        if kind == "diag-cycle-twist":
            return DiagonalCycleTwist(self._matrix_group(group, kind), spec.r)
        if kind == "conj":
            matrix_group = self._matrix_group(group, kind)
            if len(spec.d) != matrix_group.dim:
                raise ValidationError(f"conj needs {matrix_group.dim} diagonal entries, got {len(spec.d)}")
            if any(v % matrix_group.p == 0 for v in spec.d):
                raise ValidationError("conj needs nonzero diagonal entries")
            return Conjugation(group, diagonal(spec.d, matrix_group.p), spec.text)
        if kind == "product":
            if not isinstance(group, DirectProduct):
                raise AutomorphismError("product automorphisms act on direct products")
            if len(spec.parts) != group.n:
                raise ValidationError(f"{group.label} needs {group.n} factor automorphisms, got {len(spec.parts)}")
            factors = [self._automorphism(f, part) for f, part in zip(group.factors, spec.parts)]
            sigma = DiagramAutomorphism.from_cycles(spec.cycles or "", group.n).perm
            return ProductTwist(group, factors, sigma)
        if kind == "compose":
            return Compose(group, [self._automorphism(group, part) for part in spec.parts])
        raise ValidationError(f"unknown automorphism kind {kind!r}")

    @staticmethod
    def _matrix_group(group: FiniteGroup, kind: str) -> MatrixGroup:
        if not isinstance(group, MatrixGroup):
            raise AutomorphismError(f"{kind} acts on matrix groups, not {group.label}")
        return group

    # ── Reports ──────────────────────────────────────────────────────────────

    def root_system_report(self, type_label: str, rank: int) -> RootSystemReport:
        rs = self.root_system(type_label, rank)
        return RootSystemReport(
            type=rs.type_label,
            rank=rs.rank,
            root_count=len(rs.roots),
            roots=[list(r) for r in rs.roots],
            cartan_matrix=[list(row) for row in rs.cartan_matrix],
            gamma=[g.cycles() for g in rootsystem.diagram_automorphisms(rs)],
        )

    def gamma_report(self, type_label: str, rank: int) -> GammaReport:
        rs = self.root_system(type_label, rank)
        gamma = rootsystem.diagram_automorphisms(rs)
        return GammaReport(type=rs.type_label, rank=rs.rank, order=len(gamma), elements=[g.cycles() for g in gamma])

    def group_build_report(self, group: GroupSpec) -> GroupBuildReport:
        try:
            G = self.build_group(group)
            return GroupBuildReport(label=G.label, order=G.order(self.cap), generator_count=len(G.generators))
        except AppError:
            raise
        except Exception as e:
            debug_logger.error(f"Group build failed for {group.text}: {e}", exc_info=True)
            raise ComputationError(f"group build failed: {e}")

    def reidemeister_report(self, group: GroupSpec, phi: PhiSpec) -> ReidemeisterReport:
        try:
            G = self.build_group(group)
            automorphism = self.build_automorphism(G, phi)
            partition = self.twisted.reidemeister(G, automorphism)
            fixed = self.twisted.fixed_subgroup(G, automorphism)
            surjective = self.twisted.coincidence_surjective(G, automorphism)
            if surjective != (partition.R == 1):
                raise ComputationError("coincidence surjectivity disagrees with R = 1")
            note = UNIPOTENT_SHADOW_NOTE if phi.kind == "conj" and group.kind is not None \
                and group.kind.value == "Unitriangular" else None
            return ReidemeisterReport(
                group=G.label,
                phi=automorphism.descriptor,
                R=partition.R,
                classes=[ClassSummary(rep=render_element(c.representative), size=c.size) for c in partition.classes],
                coincidence_surjective=surjective,
                fixed_subgroup_order=len(fixed),
                note=note,
            )
        except AppError:
            raise
        except Exception as e:
            debug_logger.error(f"Reidemeister computation failed: {e}", exc_info=True)
            raise ComputationError(f"reidemeister computation failed: {e}")

    def torus_fixed_report(self, type_label: str, rank: int, rho_text: str, p: Optional[int] = None) -> TorusFixedReport:
        cb = self.chevalley_basis(type_label, rank)
        rho = DiagramAutomorphism.from_cycles(rho_text, cb.rs.rank)
        if rho not in rootsystem.diagram_automorphisms(cb.rs):
            raise AutomorphismError(f"{rho.cycles()} is not a diagram automorphism of {cb.rs.label}")
        if p is not None:
            PrimeField(p)
        return TorusFixedReport(**self.torus.case_witness(cb, rho, p))

    def solve_unipotent_report(self, d_values: Sequence[int], g_rows: Sequence[Sequence[int]], p: int) -> SolveUnipotentReport:
        PrimeField(p)
        d = diagonal(d_values, p)
        g = GroupElement.checked(np.array(g_rows, dtype=np.int64), p)
        y = solve_unipotent(d, g)
        return SolveUnipotentReport(p=p, d=[int(v) % p for v in d_values], g=g.tolist(), y=y.tolist(), verified=True)

    def run_suite(self, suite: Suite, type_label: Optional[str] = None,
                  rank: Optional[int] = None, p: Optional[int] = None) -> SuiteReport:
        from app.services.verification_service import VerificationService

        return VerificationService(self).run(suite, type_label=type_label, rank=rank, p=p)

    def cleanup(self) -> None:
        self.twisted.cleanup()
        self.torus.cleanup()
        self._groups.clear()
