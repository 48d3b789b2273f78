"""
Fixed torus of a diagram automorphism.

On the universal torus T = {prod_i h_{a_i}(t_i)}, rho-bar permutes the
coordinates by rho, so dim T^rho-bar is the number of rho-orbits on the
simple roots. Group-level witnesses are checked in the adjoint group:
Case I uses h_a(t) for a rho-fixed simple root a; Case II (type A_{2l})
uses h_a(t) h_{rho a}(t).
"""
from typing import Dict, Optional

from app.core.exceptions import ValidationError
from app.services.lie_processing.automorphisms import DiagramConj
from app.services.lie_processing.base_lie_processing_service import BaseService
from app.services.lie_processing.chevgroup import ChevalleyGroup
from app.services.lie_processing.liealgebra import ChevalleyBasis, lift_diagram_automorphism
from app.services.lie_processing.rootsystem import DiagramAutomorphism, RootSystem
from app.services.lie_processing.scalars import PrimeField

CASE_I = "CaseI"
CASE_II = "CaseII"

MODEL_NOTE = (
    "d counts rho-orbits on the simple roots (universal torus coordinates); "
    "the adjoint-group check only witnesses a non-identity fixed element"
)


def fixed_torus_dimension(rs: RootSystem, rho: DiagramAutomorphism) -> int:
    if len(rho.perm) != rs.rank:
        raise ValidationError(f"permutation of {len(rho.perm)} points does not act on {rs.label}")
    return len(rho.orbits())


class TorusFixedService(BaseService):
    """
    Case I / Case II witnesses for the fixed torus
    """

    def _setup(self) -> None:
        self.witness_primes = tuple(self.config.TORUS_WITNESS_PRIMES)

    def cleanup(self) -> None:
        pass

    def fixed_torus_dimension(self, rs: RootSystem, rho: DiagramAutomorphism) -> int:
        return fixed_torus_dimension(rs, rho)

    def case_witness(self, cb: ChevalleyBasis, rho: DiagramAutomorphism, p: Optional[int] = None) -> Dict:
        """Verified witness over GF(p), trying the configured primes when p fails."""
        rs = cb.rs
        if rho.is_identity:
            raise ValidationError("case witness needs a nontrivial diagram automorphism")
        primes = (p,) + tuple(q for q in self.witness_primes if q != p) if p else self.witness_primes
        lift = lift_diagram_automorphism(cb, rho)
        fixed_nodes = [i for i in range(rs.rank) if rho(i) == i]
        kind = CASE_I if fixed_nodes else CASE_II
        node = fixed_nodes[0] if fixed_nodes else 0
        alpha = rs.simple_roots[node]
        partner = rs.simple_roots[rho(node)]

        report = {
            "type": rs.label,
            "rho": rho.cycles(),
            "d": fixed_torus_dimension(rs, rho),
            "witness_kind": kind,
            "alpha": [node + 1] if kind == CASE_I else [node + 1, rho(node) + 1],
            "p": None,
            "fixed_for_all_t": False,
            "nontrivial_t": None,
            "verified": False,
            "note": MODEL_NOTE,
        }
        for q in primes:
            G = ChevalleyGroup(cb, PrimeField(q))
            phi = DiagramConj(G, lift)
            fixed_all = True
            nontrivial_t = None
            for t in range(1, q):
                w = G.h(alpha, t) if kind == CASE_I else G.h(alpha, t) @ G.h(partner, t)
                if phi._map(w) != w:
                    fixed_all = False
                    break
                if nontrivial_t is None and w != G.identity:
                    nontrivial_t = t
            self.log_debug(f"{rs.label} {rho.cycles()} p={q}: fixed={fixed_all} witness t={nontrivial_t}")
            report.update(p=q, fixed_for_all_t=fixed_all, nontrivial_t=nontrivial_t)
            if fixed_all and nontrivial_t is not None:
                report["verified"] = True
                break
        if not report["verified"]:
            self.log_warning(f"No torus witness for {rs.label} {rho.cycles()} over primes {primes}")
        return report
