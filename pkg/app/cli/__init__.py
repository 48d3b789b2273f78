"""Command-line front end"""
from app.cli.router import build_parser, run

__all__ = ["build_parser", "run"]
