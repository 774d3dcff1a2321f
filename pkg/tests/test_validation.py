"""Tests for input file and output name validation."""

import pytest

from src.utils.validation import (
    CERTIFICATE_EXTENSIONS,
    GRAPH_EXTENSIONS,
    InputValidationError,
    sanitize_log_data,
    validate_filename,
    validate_input_file,
)


class TestFilenameValidation:
    """Test output name validation."""

    def test_valid_filename(self):
        """Test plain and nested relative names pass unchanged."""
        assert validate_filename("grotzsch.col") == "grotzsch.col"
        assert validate_filename("out/cert.json") == "out/cert.json"

    def test_path_traversal_detection(self):
        """Test path traversal attempts are blocked."""
        with pytest.raises(InputValidationError, match="dangerous pattern"):
            validate_filename("../../../etc/passwd")

        with pytest.raises(InputValidationError, match="dangerous pattern"):
            validate_filename("..\\..\\windows\\system32\\config.json")

    def test_forbidden_characters(self):
        with pytest.raises(InputValidationError, match="dangerous pattern"):
            validate_filename("cert|rm.json")

    def test_empty_filename(self):
        """Test empty filename is rejected."""
        with pytest.raises(InputValidationError, match="cannot be empty"):
            validate_filename("")

    def test_long_filename(self):
        """Test overly long filename is rejected."""
        with pytest.raises(InputValidationError, match="too long"):
            validate_filename("a" * 300 + ".json")


class TestInputFileValidation:
    """Test input file checks."""

    def test_reads_graph_file(self, tmp_path):
        path = tmp_path / "c5.col"
        path.write_text("p edge 5 5\n")
        assert validate_input_file(path, GRAPH_EXTENSIONS) == b"p edge 5 5\n"

    def test_extension_case_insensitive(self, tmp_path):
        path = tmp_path / "G.COL"
        path.write_text("p edge 1 0\n")
        assert validate_input_file(path, GRAPH_EXTENSIONS)

    def test_missing_file(self, tmp_path):
        """Test a missing file is reported, not raised as OSError."""
        with pytest.raises(InputValidationError, match="not found"):
            validate_input_file(tmp_path / "absent.col", GRAPH_EXTENSIONS)

    def test_directory_rejected(self, tmp_path):
        folder = tmp_path / "graphs.col"
        folder.mkdir()
        with pytest.raises(InputValidationError, match="Not a regular file"):
            validate_input_file(folder, GRAPH_EXTENSIONS)

    def test_wrong_extension(self, tmp_path):
        path = tmp_path / "cert.col"
        path.write_text("{}")
        with pytest.raises(InputValidationError, match="extension not allowed"):
            validate_input_file(path, CERTIFICATE_EXTENSIONS)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.col"
        path.write_text("")
        with pytest.raises(InputValidationError, match="empty"):
            validate_input_file(path, GRAPH_EXTENSIONS)

    def test_size_limit(self, tmp_path):
        """Test files above the limit are rejected."""
        path = tmp_path / "big.col"
        path.write_text("c " + "x" * 100 + "\n")
        with pytest.raises(InputValidationError, match="too large"):
            validate_input_file(path, GRAPH_EXTENSIONS, max_size=50)

    def test_default_limit_from_settings(self, tmp_path, mocker):
        mocker.patch(
            "src.utils.validation.get_settings",
            return_value=mocker.Mock(max_graph_file_size=4),
        )
        path = tmp_path / "g.col"
        path.write_text("p edge 1 0\n")
        with pytest.raises(InputValidationError, match="too large"):
            validate_input_file(path, GRAPH_EXTENSIONS)


class TestLogSanitization:
    """Test log data sanitization."""

    def test_strips_control_characters(self):
        """Test newlines cannot forge extra log records."""
        assert sanitize_log_data("bad\nERROR fake") == "badERROR fake"

    def test_truncates(self):
        result = sanitize_log_data("x" * 2000)
        assert len(result) == 1003
        assert result.endswith("...")

    def test_empty(self):
        assert sanitize_log_data("") == ""
