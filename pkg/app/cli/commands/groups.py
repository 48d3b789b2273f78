"""
Group commands
group build: from a spec string or from --family/--classical flags
"""
import argparse

from app.cli.specs import CLASSICAL_TOKENS, parse_group_spec
from app.core.exceptions import ValidationError
from app.schemas.models import GroupBuildReport
from app.services.base_service import IGroupTheoryService


def register(subparsers, common: argparse.ArgumentParser) -> None:
    group = subparsers.add_parser("group", parents=[common], help="group construction")
    actions = group.add_subparsers(dest="action", metavar="ACTION")
    actions.required = True

    build = actions.add_parser("build", parents=[common], help="build and enumerate a group")
    build.add_argument("--group", help="group spec, e.g. A:2:3:adjoint or U:3:5")
    build.add_argument("--family", help="Cartan type letter of a Chevalley group")
    build.add_argument("--rank", type=int)
    build.add_argument("--form", choices=("adjoint", "sc"), default="adjoint")
    build.add_argument("--classical", choices=sorted(CLASSICAL_TOKENS) + ["B2"])
    build.add_argument("--n", type=int)
    build.add_argument("--p", type=int)
    build.set_defaults(handler=handle_build)


def group_text(args: argparse.Namespace) -> str:
    """Spec string equivalent to the flag form."""
    if args.group:
        if args.family or args.classical:
            raise ValidationError("--group cannot be combined with --family or --classical")
        return args.group
    if args.p is None:
        raise ValidationError("--p is required without --group")
    if args.family:
        if args.rank is None:
            raise ValidationError("--family needs --rank")
        return f"{args.family.upper()}:{args.rank}:{args.p}:{args.form}"
    if args.classical == "B2":
        return f"B2:{args.p}"
    if args.classical:
        if args.n is None:
            raise ValidationError("--classical needs --n")
        return f"{args.classical}:{args.n}:{args.p}"
    raise ValidationError("give --group, --family or --classical")


def handle_build(args: argparse.Namespace, service: IGroupTheoryService) -> GroupBuildReport:
    args.group = group_text(args)
    return service.group_build_report(parse_group_spec(args.group))
