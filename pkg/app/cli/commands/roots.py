"""
Root system commands
roots and gamma: request handling only, all logic in services
"""
import argparse

from app.schemas.models import GammaReport, RootSystemReport
from app.services.base_service import IGroupTheoryService


def _add_type_rank(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--type", dest="type_label", required=True, help="Cartan type letter A-G")
    parser.add_argument("--rank", type=int, required=True)


def register(subparsers, common: argparse.ArgumentParser) -> None:
    roots = subparsers.add_parser("roots", parents=[common], help="roots, Cartan matrix and Gamma")
    _add_type_rank(roots)
    roots.set_defaults(handler=handle_roots)

    gamma = subparsers.add_parser("gamma", parents=[common], help="diagram automorphism group")
    _add_type_rank(gamma)
    gamma.set_defaults(handler=handle_gamma)


def handle_roots(args: argparse.Namespace, service: IGroupTheoryService) -> RootSystemReport:
    return service.root_system_report(args.type_label, args.rank)


def handle_gamma(args: argparse.Namespace, service: IGroupTheoryService) -> GammaReport:
    return service.gamma_report(args.type_label, args.rank)
