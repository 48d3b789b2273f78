"""
Verification commands
verify --suite {paper-examples, lemmas, chevalley-relations, all}
"""
import argparse

from app.schemas.models import Suite, SuiteReport
from app.services.base_service import IGroupTheoryService


def register(subparsers, common: argparse.ArgumentParser) -> None:
    verify = subparsers.add_parser("verify", parents=[common], help="run a verification suite")
    verify.add_argument("--suite", choices=[s.value for s in Suite], default=Suite.ALL.value)
    verify.add_argument("--type", dest="type_label", help="restrict chevalley-relations to one type")
    verify.add_argument("--rank", type=int)
    verify.add_argument("--p", type=int, help="restrict chevalley-relations to one prime")
    verify.set_defaults(handler=handle_verify)


def handle_verify(args: argparse.Namespace, service: IGroupTheoryService) -> SuiteReport:
    return service.run_suite(Suite(args.suite), type_label=args.type_label, rank=args.rank, p=args.p)
