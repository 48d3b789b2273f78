"""
Base service interfaces
"""
from abc import ABC, abstractmethod
from typing import Optional

from app.schemas.models import (
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


class IGroupTheoryService(ABC):
    """Interface for the group-theory service"""

    @abstractmethod
    def root_system_report(self, type_label: str, rank: int) -> RootSystemReport:
        """Roots, Cartan matrix and Gamma of a root system"""
        raise NotImplementedError

    @abstractmethod
    def gamma_report(self, type_label: str, rank: int) -> GammaReport:
        """The diagram automorphism group"""
        raise NotImplementedError

    @abstractmethod
    def group_build_report(self, group: GroupSpec) -> GroupBuildReport:
        """Build and enumerate a group from its spec"""
        raise NotImplementedError

    @abstractmethod
    def reidemeister_report(self, group: GroupSpec, phi: PhiSpec) -> ReidemeisterReport:
        """Twisted conjugacy classes of a group under an automorphism"""
        raise NotImplementedError

    @abstractmethod
    def torus_fixed_report(self, type_label: str, rank: int, rho_text: str, p: Optional[int] = None) -> TorusFixedReport:
        """Fixed torus dimension and Case I / Case II witness"""
        raise NotImplementedError

    @abstractmethod
    def solve_unipotent_report(self, d_values, g_rows, p: int) -> SolveUnipotentReport:
        """Solve y g = d y d^-1 in U_n(F_p)"""
        raise NotImplementedError

    @abstractmethod
    def run_suite(self, suite: Suite, type_label: Optional[str] = None,
                  rank: Optional[int] = None, p: Optional[int] = None) -> SuiteReport:
        """Run a verification suite"""
        raise NotImplementedError

    @abstractmethod
    def cleanup(self) -> None:
        """Release cached groups and processing services"""
        raise NotImplementedError
