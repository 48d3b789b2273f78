"""
Central CLI router
Consolidates every command group and maps errors to exit codes
"""
import argparse
import sys
from typing import List, Optional

from pydantic import BaseModel
from pydantic import ValidationError as SchemaError

from app.cli.commands import groups, roots, torus, twisted, verify
from app.cli.output import emit
from app.core.config import ENUMERATION_CONFIG, VERIFICATION_CONFIG
from app.core.dependencies import get_group_theory_service
from app.core.exceptions import AppError
from app.schemas.models import OutputFormat, RunConfig, SuiteReport, TorusFixedReport
from app.utils.logger import debug_logger

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def _add_global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    """Global flags; subcommands accept them too without overriding the top level."""

    def default(value):
        return argparse.SUPPRESS if suppress else value

    parser.add_argument("--format", dest="output_format", choices=[f.value for f in OutputFormat],
                        default=default(OutputFormat.JSON.value), help="report format")
    parser.add_argument("--cache-dir", dest="cache_dir", default=default(None),
                        help="structure-constant cache directory (overrides TC_CACHE_DIR)")
    parser.add_argument("--cap", type=int, default=default(ENUMERATION_CONFIG.ENUMERATION_CAP),
                        help="largest group that will be enumerated")
    parser.add_argument("--seed", type=int, default=default(VERIFICATION_CONFIG.DEFAULT_SEED),
                        help="seed for every sampled check")
    parser.add_argument("--log-level", dest="log_level", type=str.upper, choices=LOG_LEVELS,
                        default=default(None), help="console log level (stderr)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twisted-conjugacy",
        description="Chevalley groups over prime fields and their twisted conjugacy classes",
    )
    _add_global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_global_flags(common, suppress=True)

    subparsers = parser.add_subparsers(dest="subcommand", metavar="COMMAND")
    subparsers.required = True
    for module in (roots, groups, twisted, torus, verify):
        module.register(subparsers, common)
    return parser


def _run_config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        group=getattr(args, "group", None),
        phi=getattr(args, "phi", None),
        p=getattr(args, "p", None),
        output_format=args.output_format,
        cache_dir=args.cache_dir,
        cap=args.cap,
        seed=args.seed,
    )


def exit_code_for(report: BaseModel) -> int:
    if isinstance(report, SuiteReport) and not report.passed:
        return EXIT_FAILURE
    if isinstance(report, TorusFixedReport) and not report.verified:
        return EXIT_FAILURE
    return EXIT_OK


def run(argv: Optional[List[str]] = None) -> int:
    """
    Parse argv, run one command and write its report to standard output

    Returns:
        0 on success, 1 on computation or verification failure, 2 on usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    if args.log_level:
        debug_logger.set_console_level(args.log_level)
    try:
        config = _run_config(args)
    except SchemaError as e:
        debug_logger.error(f"invalid arguments: {e.errors()[0]['msg']}")
        return EXIT_USAGE

    service = None
    try:
        service = get_group_theory_service(cache_dir=config.cache_dir, cap=config.cap, seed=config.seed)
        report = args.handler(args, service)
        emit(report, config.output_format, sys.stdout)
    except AppError as e:
        debug_logger.error(f"[{e.code}] {e.message}")
        return EXIT_USAGE if e.is_usage_error else EXIT_FAILURE
    except Exception as e:
        debug_logger.exception(f"Unexpected failure in {config.subcommand}: {e}")
        return EXIT_FAILURE
    finally:
        if service is not None:
            service.cleanup()
    return exit_code_for(report)
