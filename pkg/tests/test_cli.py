import json
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

import omatrix
from src.checks.factory import catalog

DATA = Path(__file__).parent.parent / "data"
FIXTURES = sorted(DATA.glob("*.json"))


@pytest.fixture
def quick_sweeps(monkeypatch):
    monkeypatch.setenv("OMATRIX_RANDOM_TRIALS", "2")


def write_manifest(tmp_path: Path, checks, **sections) -> Path:
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"schema": "omatrix/1", "checks": checks, **sections}), encoding="utf-8")
    return path


class TestCatalogCommands:
    """Test list and explain"""

    def test_list(self, capsys):
        assert omatrix.main(["list"]) == 0
        out = capsys.readouterr().out
        assert out.strip().endswith(f"{len(catalog())} checks")
        assert "cybe" in out

    def test_explain(self, capsys):
        assert omatrix.main(["explain", "cybe"]) == 0
        assert capsys.readouterr().out.startswith("cybe: ")

    def test_explain_names_conventions_entry(self, capsys):
        assert omatrix.main(["explain", "quadratic-poisson"]) == 0
        out = capsys.readouterr().out
        assert "ref: docs/conventions.md, Poisson Brackets on G*: Quadratic" in out

    def test_explain_unknown(self, capsys):
        assert omatrix.main(["explain", "nosuch"]) == 2
        assert "Unknown check: nosuch" in capsys.readouterr().err


@pytest.mark.usefixtures("quick_sweeps")
class TestRunCommand:
    """Test manifest runs through the command line"""

    def test_run_is_default_command(self, tmp_path, capsys):
        path = write_manifest(tmp_path, ["jacobi"], lie_algebra={"preset": "sl2"})
        assert omatrix.main([str(path), "--no-log"]) == 0
        out = capsys.readouterr().out
        assert "PASS jacobi" in out
        assert out.strip().endswith("1 passed, 0 failed, 0 skipped")

    def test_failing_check(self, tmp_path, capsys):
        path = write_manifest(
            tmp_path,
            ["cybe"],
            lie_algebra={"preset": "sl2"},
            r_matrix={"dense": [[0, 0, 0], [0, 0, 1], [0, -1, 0]]},
        )
        assert omatrix.main(["run", str(path), "--no-log"]) == 1
        assert "FAIL cybe" in capsys.readouterr().out

    def test_refused_input(self, tmp_path, capsys):
        path = write_manifest(
            tmp_path,
            ["cybe"],
            lie_algebra={"preset": "sl2"},
            r_matrix={"dense": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]},
        )
        assert omatrix.main(["run", str(path), "--no-log"]) == 2
        assert capsys.readouterr().err.startswith("error: ")

    def test_corrupted_manifest(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert omatrix.main(["run", str(path), "--no-log"]) == 2
        assert "error: " in capsys.readouterr().err

    def test_missing_manifest(self, tmp_path):
        assert omatrix.main(["run", str(tmp_path / "absent.json"), "--no-log"]) == 2

    def test_bad_setting(self, tmp_path, capsys):
        path = write_manifest(tmp_path, ["jacobi"], lie_algebra={"preset": "sl2"})
        assert omatrix.main(["run", str(path), "--no-log", "--witness-limit", "0"]) == 2
        assert "witness_limit" in capsys.readouterr().err

    def test_timings(self, tmp_path):
        path = write_manifest(tmp_path, ["jacobi"], lie_algebra={"preset": "sl2"})
        out = tmp_path / "report.json"
        assert omatrix.main(["run", str(path), "--no-log", "--timings", "--json", str(out)]) == 0
        assert json.loads(out.read_text(encoding="utf-8"))["results"][0]["wall_time"] is not None

    def test_log_dir(self, tmp_path):
        path = write_manifest(tmp_path, ["jacobi"], lie_algebra={"preset": "sl2"})
        logs = tmp_path / "logs"
        assert omatrix.main(["run", str(path), "--log-dir", str(logs)]) == 0
        assert list(logs.glob("*/decisions.jsonl"))


class TestBundledManifests:
    """Every shipped manifest passes and reports the same bytes twice"""

    @pytest.mark.parametrize("manifest", FIXTURES, ids=[p.stem for p in FIXTURES])
    def test_fixture_passes(self, manifest, tmp_path, capsys):
        first, second = tmp_path / "first.json", tmp_path / "second.json"
        assert omatrix.main(["run", str(manifest), "--no-log", "--json", str(first)]) == 0
        assert omatrix.main(["run", str(manifest), "--no-log", "--json", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        report = json.loads(first.read_text(encoding="utf-8"))
        assert report["exit_code"] == 0
        assert report["counts"]["fail"] == 0
        assert "wall_time" not in report["results"][0]
