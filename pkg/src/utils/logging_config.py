"""Logging configuration for the hunter library and its command line."""

import logging
import logging.handlers
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

from src.config import Settings, get_settings


class ColoredFormatter(logging.Formatter):
    """Colored formatter for console output."""

    COLORS = {
        "DEBUG": "\033[36m",  # Cyan
        "INFO": "\033[32m",  # Green
        "WARNING": "\033[33m",  # Yellow
        "ERROR": "\033[31m",  # Red
        "CRITICAL": "\033[35m",  # Magenta
    }
    RESET = "\033[0m"

    def format(self, record):
        levelname = record.levelname
        if levelname in self.COLORS:
            record.levelname = f"{self.COLORS[levelname]}{levelname}{self.RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = levelname


def setup_logging(
    log_level: str = "INFO",
    log_dir: Optional[Path] = None,
    enable_console: bool = True,
    max_file_size: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5,
):
    """
    Setup logging for a command-line run.

    Console output goes to stderr; stdout carries command results only.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_dir: Directory for rotating log files; file logging is off when None
        enable_console: Enable console logging
        max_file_size: Maximum size of log file before rotation
        backup_count: Number of backup files to keep
    """
    level = getattr(logging, log_level.upper(), logging.INFO)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    root_logger.handlers.clear()

    if enable_console:
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(
            ColoredFormatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        console_handler.setLevel(level)
        root_logger.addHandler(console_handler)

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)

        file_handler = logging.handlers.RotatingFileHandler(
            log_dir / "hunter.log",
            maxBytes=max_file_size,
            backupCount=backup_count,
            encoding="utf-8",
        )
        file_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        file_handler.setLevel(logging.DEBUG)  # Always log everything to file
        root_logger.addHandler(file_handler)

        # Error file handler (separate file for errors)
        error_handler = logging.handlers.RotatingFileHandler(
            log_dir / "errors.log",
            maxBytes=max_file_size,
            backupCount=backup_count,
            encoding="utf-8",
        )
        error_handler.setFormatter(
            logging.Formatter(
                "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s",
                datefmt="%Y-%m-%d %H:%M:%S",
            )
        )
        error_handler.setLevel(logging.ERROR)
        root_logger.addHandler(error_handler)

    configure_specific_loggers()

    logging.debug(f"Logging configured - Level: {log_level}, Dir: {log_dir}")


def configure_specific_loggers():
    """Configure specific loggers for different components."""

    # Reduce noise from external libraries
    logging.getLogger("concurrent.futures").setLevel(logging.WARNING)
    logging.getLogger("multiprocessing").setLevel(logging.WARNING)

    # Set appropriate levels for our components
    level = logging.getLogger().level
    logging.getLogger("src.services").setLevel(level)
    logging.getLogger("src.workers").setLevel(level)
    logging.getLogger("src.cli").setLevel(level)


def get_logger(name: str) -> logging.Logger:
    """Get a logger with the specified name."""
    return logging.getLogger(name)


@contextmanager
def log_performance(operation: str) -> Iterator[None]:
    """Context manager to log performance of operations."""
    logger = get_logger("performance")
    start_time = time.perf_counter()
    logger.debug(f"Starting {operation}")

    try:
        yield
        execution_time = time.perf_counter() - start_time
        logger.info(f"Completed {operation} in {execution_time:.3f}s")
    except Exception as e:
        execution_time = time.perf_counter() - start_time
        logger.error(f"Failed {operation} after {execution_time:.3f}s: {e}")
        raise


class StructuredLogger:
    """Structured logger for better log analysis."""

    def __init__(self, name: str):
        self.logger = get_logger(name)

    @staticmethod
    def _fields(kwargs: dict) -> str:
        return " ".join(f"{k}={v}" for k, v in kwargs.items())

    def log_hunt_event(self, center: Optional[int], step: str, **kwargs):
        """Log a hunter pipeline step with structured data."""
        self.logger.info(
            f"HUNT_EVENT center={center} step={step} {self._fields(kwargs)}".rstrip()
        )

    def log_command(self, command: str, exit_code: int, duration: float, **kwargs):
        """Log a finished CLI command with structured data."""
        self.logger.info(
            f"COMMAND name={command} exit={exit_code} duration={duration:.3f}s "
            f"{self._fields(kwargs)}".rstrip()
        )

    def log_error(self, error_type: str, message: str, **kwargs):
        """Log errors with structured data."""
        self.logger.error(
            f"ERROR type={error_type} message={message} {self._fields(kwargs)}".rstrip()
        )


def init_logging(settings: Optional[Settings] = None, log_level: Optional[str] = None):
    """
    Initialize logging from application settings.

    An explicit ``log_level`` wins; otherwise ``debug`` forces DEBUG.
    """
    settings = settings or get_settings()
    if log_level is None:
        log_level = "DEBUG" if settings.debug else settings.log_level
    setup_logging(
        log_level=log_level,
        log_dir=settings.log_dir,
        max_file_size=settings.log_max_bytes,
        backup_count=settings.log_backup_count,
    )
