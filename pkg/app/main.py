"""
Command-line entry point for the twisted-conjugacy toolkit
Reports go to standard output, diagnostics to standard error
"""
import sys
from pathlib import Path
from typing import List, Optional

# Add parent directory to path so 'app' module can be imported correctly
parent_dir = str(Path(__file__).parent.parent)
if parent_dir not in sys.path:
    sys.path.insert(0, parent_dir)

from dotenv import load_dotenv

load_dotenv()

from app.cli.router import run  # noqa: E402


def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns the process exit code."""
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
