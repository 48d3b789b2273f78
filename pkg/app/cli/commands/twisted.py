"""
Twisted conjugacy commands
reidemeister and solve-unipotent
"""
import argparse

from app.cli.specs import parse_group_spec, parse_ints, parse_phi_spec, parse_rows
from app.schemas.models import ReidemeisterReport, SolveUnipotentReport
from app.services.base_service import IGroupTheoryService


def register(subparsers, common: argparse.ArgumentParser) -> None:
    reidemeister = subparsers.add_parser(
        "reidemeister", parents=[common], help="twisted conjugacy classes of a group"
    )
    reidemeister.add_argument("--group", required=True, help="group spec, e.g. SL:2:3 or prod:D:1:7^2")
    reidemeister.add_argument("--phi", required=True, help="automorphism spec, e.g. inner:g1*g2^-1")
    reidemeister.set_defaults(handler=handle_reidemeister)

    solve = subparsers.add_parser(
        "solve-unipotent", parents=[common], help="solve y g = d y d^-1 in U_n(F_p)"
    )
    solve.add_argument("--d", required=True, help="diagonal entries, e.g. 1,2,4")
    solve.add_argument("--g", required=True, help="unitriangular rows, e.g. '1,2,3;0,1,4;0,0,1'")
    solve.add_argument("--p", type=int, required=True)
    solve.set_defaults(handler=handle_solve_unipotent)


def handle_reidemeister(args: argparse.Namespace, service: IGroupTheoryService) -> ReidemeisterReport:
    # both specs are parsed before anything is built
    group = parse_group_spec(args.group)
    phi = parse_phi_spec(args.phi)
    return service.reidemeister_report(group, phi)


def handle_solve_unipotent(args: argparse.Namespace, service: IGroupTheoryService) -> SolveUnipotentReport:
    d_values = parse_ints(args.d, "d")
    rows = parse_rows(args.g)
    return service.solve_unipotent_report(d_values, rows, args.p)
