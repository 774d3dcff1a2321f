"""Tests for the tree-hunt command line."""

import json
import logging

import pytest

from src.cli.app import run
from src.cli.commands import EXIT_INPUT_ERROR, EXIT_NEGATIVE, EXIT_OK
from src.services.certificates import serialize_certificate
from src.services.dimacs import write_dimacs
from src.services.graph_ops import build_graph
from src.services.hunter import hunt
from tests.planted import main_instance


@pytest.fixture
def graph_file(tmp_path):
    """Write a graph to a .col file and return its path."""

    def _write(g, name="graph.col"):
        path = tmp_path / name
        path.write_text(write_dimacs(g))
        return path

    return _write


def cli(capsys, *argv):
    code = run(list(argv), configure_logging=False)
    out, err = capsys.readouterr()
    return code, out, err


class TestGenerate:
    """Test graph generation subcommands."""

    def test_cycle_to_stdout(self, capsys):
        code, out, _ = cli(capsys, "generate", "cycle", "--n", "5")
        assert code == EXIT_OK
        assert out.splitlines()[:2] == ["c cycle n=5", "p edge 5 5"]

    def test_mycielski_to_file(self, capsys, tmp_path):
        target = tmp_path / "grotzsch.col"
        code, out, _ = cli(capsys, "generate", "mycielski", "--k", "1", "--output", str(target))
        assert code == EXIT_OK
        assert out == ""
        assert "p edge 11 20" in target.read_text()

    def test_random_is_reproducible(self, capsys):
        argv = ("generate", "random", "--n", "12", "--m", "20", "--seed", "3")
        assert cli(capsys, *argv)[1] == cli(capsys, *argv)[1]

    def test_invalid_parameters(self, capsys):
        code, _, err = cli(capsys, "generate", "kneser", "--n", "3", "--k", "2")
        assert code == EXIT_INPUT_ERROR
        assert err.startswith("error: ")

    def test_usage_error(self, capsys):
        assert cli(capsys)[0] == 2
        assert cli(capsys, "generate", "cycle")[0] == 2


class TestColorAndStats:
    """Test the inspection subcommands."""

    def test_color(self, capsys, graph_file, grotzsch):
        code, out, _ = cli(capsys, "color", "--input", str(graph_file(grotzsch)))
        doc = json.loads(out)
        assert code == EXIT_OK
        assert (doc["n"], doc["lower"], doc["upper"], doc["exact"]) == (11, 4, 4, True)
        assert min(doc["colors"]) == 1 and max(doc["colors"]) == 4

    def test_color_budget(self, capsys, graph_file, grotzsch):
        _, out, _ = cli(capsys, "color", "--input", str(graph_file(grotzsch)), "--budget", "1")
        assert json.loads(out)["exact"] is False

    def test_stats(self, capsys, graph_file, c5):
        code, out, _ = cli(capsys, "stats", "--input", str(graph_file(c5)))
        assert code == EXIT_OK
        assert out == (
            '{"degree_histogram":[[2,5]],"m":5,"n":5,"radius":2,"triangle_free":true}\n'
        )

    def test_stats_disconnected(self, capsys, graph_file):
        _, out, _ = cli(capsys, "stats", "--input", str(graph_file(build_graph(3, [(0, 1)]))))
        assert json.loads(out)["radius"] is None


class TestOracle:
    """Test brute-force search from the command line."""

    def test_found(self, capsys, graph_file, t121_graph):
        code, out, _ = cli(capsys, "oracle", "--spec", "1,2,1", "--input", str(graph_file(t121_graph)))
        assert code == EXIT_OK
        doc = json.loads(out)
        assert doc["pattern"] == "T(1,2,1)"
        assert doc["mapping"] == [[k, k] for k in range(1, 7)]

    def test_absent(self, capsys, graph_file, c5):
        code, out, _ = cli(capsys, "oracle", "--spec", "2,1", "--input", str(graph_file(c5)))
        assert code == EXIT_NEGATIVE
        assert json.loads(out) == {"found": False, "pattern": "T(2,1)"}

    def test_bad_spec(self, capsys, graph_file, c5):
        code, _, _ = cli(capsys, "oracle", "--spec", "2,x", "--input", str(graph_file(c5)))
        assert code == EXIT_INPUT_ERROR


class TestHuntAndVerify:
    """Test hunting, certificates and verification end to end."""

    def test_hunt_then_verify(self, capsys, tmp_path, graph_file, grotzsch):
        graph = graph_file(grotzsch)
        cert = tmp_path / "cert.json"
        code, _, _ = cli(capsys, "hunt", "--t", "1", "--input", str(graph), "--output", str(cert))
        assert code == EXIT_OK
        doc = json.loads(cert.read_text())
        assert (doc["status"], doc["branch"], doc["root"]) == ("found", "phase1", 1)

        code, out, _ = cli(capsys, "verify", "--cert", str(cert), "--input", str(graph))
        assert (code, out) == (EXIT_OK, "valid\n")

    @pytest.mark.slow
    def test_certificate_bytes_are_stable(self, capsys, graph_file):
        """Test repeated and parallel hunts print the same certificate bytes."""
        inst = main_instance(1)
        graph = str(graph_file(inst.graph))
        outputs = [
            cli(capsys, "hunt", "--t", "1", "--input", graph, "--jobs", jobs)
            for jobs in ("1", "1", "2")
        ]
        expected = serialize_certificate(hunt(inst.graph, 1, jobs=1), 1).decode("utf-8")
        assert [out for _, out, _ in outputs] == [expected] * 3
        assert {code for code, _, _ in outputs} == {EXIT_OK}

    def test_color_output_is_stable(self, capsys, graph_file, grotzsch):
        graph = str(graph_file(grotzsch))
        first = cli(capsys, "color", "--input", graph)
        second = cli(capsys, "color", "--input", graph)
        assert first[:2] == second[:2]

    def test_tampered_certificate(self, capsys, tmp_path, graph_file, grotzsch):
        graph = graph_file(grotzsch)
        cert = tmp_path / "cert.json"
        cli(capsys, "hunt", "--t", "1", "--input", str(graph), "--output", str(cert))
        doc = json.loads(cert.read_text())
        doc["mapping"][5][1] = doc["mapping"][0][1] + 1
        cert.write_text(json.dumps(doc))
        code, out, _ = cli(capsys, "verify", "--cert", str(cert), "--input", str(graph))
        assert code == EXIT_NEGATIVE
        assert out == "invalid: mapping is not an induced T(1,2,1)\n"

    def test_negative_certificate_does_not_verify(self, capsys, tmp_path, graph_file, c5):
        graph = graph_file(c5)
        cert = tmp_path / "cert.json"
        code, _, _ = cli(capsys, "hunt", "--t", "1", "--input", str(graph), "--output", str(cert))
        assert code == EXIT_NEGATIVE
        code, out, _ = cli(capsys, "verify", "--cert", str(cert), "--input", str(graph))
        assert code == EXIT_NEGATIVE
        assert out == "invalid: certificate status is not_found\n"

    def test_step_failed_without_fallback(self, capsys, graph_file, t121_graph):
        code, out, _ = cli(
            capsys, "hunt", "--t", "1", "--input", str(graph_file(t121_graph)), "--no-fallback"
        )
        doc = json.loads(out)
        assert code == EXIT_NEGATIVE
        assert doc["status"] == "step_failed"
        assert doc["stall"]["claim"] == "claim2"
        assert doc["stall"]["center"] == 2

    def test_premise_violation_exit(self, capsys, graph_file):
        triangle = build_graph(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5)])
        code, out, _ = cli(capsys, "hunt", "--t", "1", "--input", str(graph_file(triangle)))
        assert code == EXIT_INPUT_ERROR
        assert json.loads(out)["stall"]["witness"] == [1, 2, 3]

    def test_invalid_t(self, capsys, graph_file, c5):
        code, _, err = cli(capsys, "hunt", "--t", "0", "--input", str(graph_file(c5)))
        assert code == EXIT_INPUT_ERROR
        assert "--t must be positive" in err


class TestInputErrors:
    """Test bad input files map to exit status 2."""

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = cli(capsys, "stats", "--input", str(tmp_path / "absent.col"))
        assert code == EXIT_INPUT_ERROR
        assert "not found" in err

    def test_malformed_dimacs(self, capsys, tmp_path):
        path = tmp_path / "bad.col"
        path.write_text("p edge 2 1\ne 1 3\n")
        code, _, err = cli(capsys, "stats", "--input", str(path))
        assert code == EXIT_INPUT_ERROR
        assert "line 2" in err

    def test_malformed_certificate(self, capsys, tmp_path, graph_file, c5):
        cert = tmp_path / "cert.json"
        cert.write_text("{")
        code, _, _ = cli(capsys, "verify", "--cert", str(cert), "--input", str(graph_file(c5)))
        assert code == EXIT_INPUT_ERROR


class TestLoggingSetup:
    """Test a full run configures logging from settings."""

    def test_command_logged_to_file(self, capsys, mocker, graph_file, test_settings, c5):
        mocker.patch("src.cli.app.get_settings", return_value=test_settings)
        code = run(["--log-level", "DEBUG", "stats", "--input", str(graph_file(c5))])
        capsys.readouterr()
        assert code == EXIT_OK
        log_text = (test_settings.log_dir / "hunter.log").read_text()
        assert "COMMAND name=stats exit=0" in log_text

    def test_debug_setting_raises_verbosity(self, capsys, mocker, graph_file, test_settings, c5):
        debug_settings = test_settings.model_copy(update={"debug": True})
        mocker.patch("src.cli.app.get_settings", return_value=debug_settings)
        assert run(["stats", "--input", str(graph_file(c5))]) == EXIT_OK
        capsys.readouterr()
        assert logging.getLogger().level == logging.DEBUG

    def test_help_names_the_application(self, capsys, mocker, test_settings):
        renamed = test_settings.model_copy(update={"app_name": "Tree Hunt Lab"})
        mocker.patch("src.cli.app.get_settings", return_value=renamed)
        code, out, _ = cli(capsys, "--help")
        assert code == EXIT_OK
        assert "Tree Hunt Lab" in out
