"""Validation of input files and output names handed to the command line."""

import logging
import re
from pathlib import Path
from typing import Iterable, Optional

from src.config import get_settings

logger = logging.getLogger(__name__)

GRAPH_EXTENSIONS = {".col", ".dimacs", ".txt"}
CERTIFICATE_EXTENSIONS = {".json"}

MAX_FILENAME_LENGTH = 255
MAX_LOG_LENGTH = 1000

# Dangerous filename patterns
DANGEROUS_PATTERNS = [
    r"(^|/)\.\.(/|$)",  # Path traversal
    r"\.\.\\",  # Windows path traversal
    r'[<>:"|?*]',  # Windows forbidden characters
    r"[\x00-\x1f]",  # Control characters
]


class InputValidationError(Exception):
    """An input file or output name was rejected."""

    pass


def validate_filename(filename: str) -> str:
    """
    Validate an output file name.

    Args:
        filename: Name (or relative path) given on the command line

    Returns:
        The name unchanged

    Raises:
        InputValidationError: If the name is empty, too long or dangerous
    """
    if not filename:
        raise InputValidationError("Filename cannot be empty")

    if len(filename) > MAX_FILENAME_LENGTH:
        raise InputValidationError(
            f"Filename too long (max {MAX_FILENAME_LENGTH} characters)"
        )

    for pattern in DANGEROUS_PATTERNS:
        if re.search(pattern, filename):
            raise InputValidationError(f"Filename contains dangerous pattern: {pattern}")

    return filename


def validate_input_file(
    path: Path,
    allowed_extensions: Iterable[str],
    max_size: Optional[int] = None,
) -> bytes:
    """
    Read an input file after checking it is safe to parse.

    Args:
        path: File to read
        allowed_extensions: Accepted suffixes, lower case with the dot
        max_size: Size limit in bytes (defaults to ``max_graph_file_size``)

    Returns:
        The file content

    Raises:
        InputValidationError: If the file is missing, not regular, has the
            wrong extension, is empty or too large
    """
    if max_size is None:
        max_size = get_settings().max_graph_file_size
    allowed = {ext.lower() for ext in allowed_extensions}

    path = Path(path)
    if not path.exists():
        raise InputValidationError(f"File not found: {path}")
    if not path.is_file():
        raise InputValidationError(f"Not a regular file: {path}")
    if path.suffix.lower() not in allowed:
        raise InputValidationError(
            f"File extension not allowed. Allowed: {', '.join(sorted(allowed))}"
        )

    size = path.stat().st_size
    if size == 0:
        raise InputValidationError(f"File is empty: {path}")
    if size > max_size:
        raise InputValidationError(
            f"File too large: {size} bytes (max {max_size} bytes)"
        )

    content = path.read_bytes()
    logger.debug(f"Read {sanitize_log_data(str(path))} ({len(content)} bytes)")
    return content


def sanitize_log_data(data: str) -> str:
    """
    Sanitize data for logging to prevent log injection.

    Args:
        data: Data to sanitize

    Returns:
        Sanitized data
    """
    if not data:
        return ""

    # Remove control characters and newlines
    sanitized = re.sub(r"[\x00-\x1f\x7f-\x9f]", "", str(data))

    if len(sanitized) > MAX_LOG_LENGTH:
        sanitized = sanitized[:MAX_LOG_LENGTH] + "..."

    return sanitized
