import glob
import logging
import os
import sys
from datetime import datetime, timezone, timedelta
from pathlib import Path

from dotenv import load_dotenv

load_dotenv()


class DebugLogger:
    """
    Process-wide logger: date-wise debug file plus a console stream on stderr.
    Standard output is left to the report emitters.
    """

    def __init__(self, logger_name="debug_logger"):
        self._logger_name = logger_name
        self._root_dir = Path(__file__).resolve().parents[2]
        self._logs_dir = os.getenv("TC_LOG_DIR") or str(self._root_dir / "debug_logs")
        self._console_handler: logging.Handler | None = None
        self._debug_logger: logging.Logger = self._create_logger()
        self._clean_old_logs()

    def _create_logger(self):
        """Creates and returns a logger with date-wise log files."""
        logger = logging.getLogger(self._logger_name)
        logger.setLevel(logging.DEBUG)

        # Clear existing handlers to avoid duplicates
        for handler in logger.handlers[:]:
            logger.removeHandler(handler)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(os.getenv("TC_LOG_LEVEL", "WARNING").upper())
        console_handler.setFormatter(logging.Formatter('%(levelname)s: %(message)s'))
        logger.addHandler(console_handler)
        self._console_handler = console_handler

        try:
            os.makedirs(self._logs_dir, exist_ok=True)
            current_date = datetime.now(timezone.utc).strftime("%Y-%m-%d")
            log_filename = str(Path(self._logs_dir) / f"debug_logs_{current_date}.log")
            file_handler = logging.FileHandler(log_filename, encoding='utf-8')
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(logging.Formatter('%(asctime)s - %(levelname)s - %(message)s'))
            logger.addHandler(file_handler)
        except OSError as e:
            # read-only installs still get console diagnostics
            logger.debug(f"File logging disabled: {e}")

        # Prevent propagation to root logger to avoid duplicate logs
        logger.propagate = False

        return logger

    def _clean_old_logs(self, days_to_keep=30):
        try:
            cutoff_date = datetime.now() - timedelta(days=days_to_keep)
            deleted_files = []
            for log_file in glob.glob(os.path.join(self._logs_dir, "*.log")):
                file_mod_time = datetime.fromtimestamp(os.path.getmtime(log_file))
                if file_mod_time < cutoff_date:
                    os.remove(log_file)
                    deleted_files.append(log_file)

            if deleted_files:
                self._debug_logger.debug(f"Cleanup completed: deleted {len(deleted_files)} old log files")
            return deleted_files

        except OSError as e:
            self._debug_logger.debug(f"Error cleaning up logs: {e}")
            return []

    def set_console_level(self, level: str) -> None:
        """Adjust console verbosity (CLI --log-level)."""
        if self._console_handler is not None:
            self._console_handler.setLevel(level.upper())

    def info(self, msg: object, *args, **kwargs) -> None:
        self._debug_logger.info(msg, *args, **kwargs)

    def debug(self, msg: object, *args, **kwargs) -> None:
        self._debug_logger.debug(msg, *args, **kwargs)

    def warning(self, msg: object, *args, **kwargs) -> None:
        self._debug_logger.warning(msg, *args, **kwargs)

    def error(self, msg: object, *args, **kwargs) -> None:
        self._debug_logger.error(msg, *args, **kwargs)

    def critical(self, msg: object, *args, **kwargs) -> None:
        self._debug_logger.critical(msg, *args, **kwargs)

    def exception(self, msg: object, *args, **kwargs) -> None:
        self._debug_logger.exception(msg, *args, **kwargs)


debug_logger = DebugLogger()
