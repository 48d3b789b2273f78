"""
Torus commands
torus-fixed
"""
import argparse

from app.cli.specs import parse_cycles
from app.schemas.models import TorusFixedReport
from app.services.base_service import IGroupTheoryService


def register(subparsers, common: argparse.ArgumentParser) -> None:
    fixed = subparsers.add_parser(
        "torus-fixed", parents=[common], help="fixed torus dimension and Case I / II witness"
    )
    fixed.add_argument("--type", dest="type_label", required=True)
    fixed.add_argument("--rank", type=int, required=True)
    fixed.add_argument("--rho", required=True, help="diagram automorphism in cycle notation, e.g. '(1 2)'")
    fixed.add_argument("--p", type=int, default=None, help="prime for the group-level witness")
    fixed.set_defaults(handler=handle_torus_fixed)


def handle_torus_fixed(args: argparse.Namespace, service: IGroupTheoryService) -> TorusFixedReport:
    return service.torus_fixed_report(args.type_label, args.rank, parse_cycles(args.rho), args.p)
