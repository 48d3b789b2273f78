"""
Processing layer: prime fields, root systems, Chevalley bases and groups,
automorphisms and the twisted conjugacy engine
"""
from .automorphisms import Automorphism
from .chevgroup import ChevalleyGroup, FiniteGroup, GroupElement
from .liealgebra import ChevalleyBasis, structure_constants
from .rootsystem import DiagramAutomorphism, RootSystem
from .scalars import FieldElement, PrimeField
from .twisted import TwistedConjugacyService, TwistedPartition

__all__ = [
    "Automorphism",
    "ChevalleyBasis",
    "ChevalleyGroup",
    "DiagramAutomorphism",
    "FieldElement",
    "FiniteGroup",
    "GroupElement",
    "PrimeField",
    "RootSystem",
    "TwistedConjugacyService",
    "TwistedPartition",
    "structure_constants",
]
