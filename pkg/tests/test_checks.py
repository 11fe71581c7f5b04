import json
import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.checks.base import CONVENTIONS_DOC, REQUIREMENTS, generated_input
from src.checks.factory import MODULE_ORDER, catalog, create_check, create_checks
from src.checks.orchestrator import END, Orchestrator, run_manifest
from src.core.errors import InternalConsistencyError, ManifestError, PreconditionError
from src.logging.decision_logger import DecisionLogger
from src.state.run_state import RunState
from src.utils.settings import Settings

SL2 = {"preset": "sl2"}
H_WEDGE_E = {"dense": [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]}
E_WEDGE_F = {"dense": [[0, 0, 0], [0, 0, 1], [0, -1, 0]]}


def write_manifest(tmp_path: Path, checks, **sections) -> Path:
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"schema": "omatrix/1", "checks": checks, **sections}), encoding="utf-8")
    return path


@pytest.fixture
def settings(tmp_path):
    return Settings(log_dir=str(tmp_path / "logs"), random_trials=2)


@pytest.fixture
def orchestrator():
    return Orchestrator(DecisionLogger("test", enabled=False))


class TestCatalog:
    """Test the registry of named checks"""

    def test_catalog_is_complete(self):
        entries = catalog()
        assert len(entries) >= 50
        modules = {cls.module for cls in entries.values()}
        assert {"yang_baxter", "lie_core", "poisson_poly", "clebsch", "doubles", "diff_alg"} <= modules

    def test_every_check_is_documented(self):
        for name, cls in catalog().items():
            assert cls.name == name
            assert cls.title and cls.formula
            assert cls.module in MODULE_ORDER
            assert set(cls.requires) <= set(REQUIREMENTS)

    def test_prerequisites_exist(self):
        entries = catalog()
        for cls in entries.values():
            for prerequisite in cls.prerequisites:
                assert prerequisite in entries

    def test_catalog_order_follows_modules(self):
        positions = [MODULE_ORDER.index(cls.module) for cls in catalog().values()]
        assert positions == sorted(positions)

    def test_unknown_check(self):
        logger = DecisionLogger("test", enabled=False)
        with pytest.raises(ValueError, match="Unknown check: nosuch"):
            create_check("nosuch", logger)

    def test_create_checks(self):
        checks = create_checks(["jacobi", "cybe"], DecisionLogger("test", enabled=False))
        assert set(checks) == {"jacobi", "cybe"}

    def test_describe(self):
        text = create_check("cybe", DecisionLogger("test", enabled=False)).describe()
        assert text.startswith("cybe: ")
        assert "needs: lie_algebra, r" in text
        assert "after: jacobi" in text
        assert "ref: docs/conventions.md, O-operators and r: CYBE" in text

    def test_every_reference_resolves(self):
        """Each check points at a conventions section that holds its entry"""
        doc = (Path(__file__).parent.parent / CONVENTIONS_DOC).read_text(encoding="utf-8").replace("`", "")
        sections = {}
        for block in doc.split("\n## ")[1:]:
            heading, _, body = block.partition("\n")
            sections[heading.strip()] = body
        for name in catalog():
            check = create_check(name, DecisionLogger("test", enabled=False))
            section, _, entry = check.anchor().partition(": ")
            assert section in sections, name
            assert entry in sections[section], name


class TestOrchestrator:
    """Test planning and routing"""

    def test_plan_adds_prerequisites(self, orchestrator):
        state = RunState(session_id="s", requested=["quadratic-poisson"])
        assert orchestrator.plan(state) == ["jacobi", "o-operator", "quadratic-poisson"]
        assert state.implied == ["jacobi", "o-operator"]

    def test_plan_keeps_request_order(self, orchestrator):
        state = RunState(session_id="s", requested=["cybe", "jacobi", "unitarity"])
        assert orchestrator.plan(state) == ["jacobi", "cybe", "unitarity"]
        assert state.implied == []

    def test_plan_unknown_check(self, orchestrator):
        with pytest.raises(ValueError, match="Unknown check"):
            orchestrator.plan(RunState(session_id="s", requested=["nosuch"]))

    def test_route_ends_when_done(self, orchestrator):
        state = RunState(session_id="s")
        assert orchestrator.route(state) == END
        assert not orchestrator.should_continue(state)

    def test_process_error_stops_the_run(self, orchestrator):
        state = RunState(session_id="s", requested=["jacobi"])
        orchestrator.plan(state)
        assert orchestrator.process_error(state, PreconditionError("refused"), "jacobi") == END
        assert state.decision_log[-1]["decision"] == "ERROR"
        assert not orchestrator.should_continue(state)


class TestRuns:
    """Test whole manifest runs"""

    def test_passing_run(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["cybe", "dual-cocycle"], lie_algebra=SL2, r_matrix=H_WEDGE_E)
        report, state = run_manifest(path, settings)
        assert report.exit_code == 0
        assert [r.name for r in report.results] == ["jacobi", "cybe", "o-operator", "dual-cocycle"]
        assert state.results["o-operator"].implied

    def test_failed_prerequisite_skips_dependents(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["quadratic-poisson"], lie_algebra=SL2, r_matrix=E_WEDGE_F)
        report, state = run_manifest(path, settings)
        verdicts = {r.name: r.verdict for r in report.results}
        assert verdicts == {"jacobi": "pass", "o-operator": "fail", "quadratic-poisson": "skipped"}
        assert "o-operator did not pass" in state.results["quadratic-poisson"].message
        assert report.exit_code == 1

    def test_failing_check_reports_witness(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["cybe"], lie_algebra=SL2, r_matrix=E_WEDGE_F)
        report, _ = run_manifest(path, settings)
        cybe = report.results[-1]
        assert cybe.verdict == "fail"
        assert 0 < len(cybe.witness) <= settings.witness_limit
        assert cybe.nonzero_count >= len(cybe.witness)

    def test_degenerate_r_skips_constant_bracket(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["constant-poisson"], lie_algebra=SL2, r_matrix=H_WEDGE_E)
        report, _ = run_manifest(path, settings)
        assert report.results[-1].verdict == "skipped"
        assert "degenerate" in report.results[-1].message

    def test_non_skew_r_is_refused(self, tmp_path, settings):
        path = write_manifest(
            tmp_path, ["cybe"], lie_algebra=SL2, r_matrix={"dense": [[1, 0, 0], [0, 0, 0], [0, 0, 0]]}
        )
        with pytest.raises(PreconditionError, match="skew"):
            run_manifest(path, settings, session_id="refused")
        logger = DecisionLogger("refused", log_dir=settings.log_dir)
        assert logger.get_errors()[0]["component"] == "cybe"

    def test_refused_sample_is_an_internal_error(self):
        """Sampled inputs never refuse the manifest"""
        with pytest.raises(InternalConsistencyError, match=r"Sample abelian-linear\[4\] was refused"):
            with generated_input("abelian-linear[4]"):
                raise PreconditionError("Quadratic bracket needs a skew r")

    def test_missing_section(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["cybe"], lie_algebra=SL2)
        with pytest.raises(ManifestError, match="needs a r_matrix section"):
            run_manifest(path, settings)

    def test_wrong_r_shape(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["cybe"], lie_algebra=SL2, r_matrix={"dense": [[0, 1], [-1, 0]]})
        with pytest.raises(ManifestError) as info:
            run_manifest(path, settings)
        assert info.value.paths == ["r_matrix"]

    def test_decision_log_written(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["jacobi"], lie_algebra=SL2)
        run_manifest(path, settings, session_id="logged")
        logger = DecisionLogger("logged", log_dir=settings.log_dir)
        assert logger.get_component_decisions("jacobi")[0]["decision"] == "pass"
        assert logger.summary()["components"]["orchestrator"] >= 2

    def test_logging_disabled(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["jacobi"], lie_algebra=SL2)
        run_manifest(path, settings.merged(log_decisions=False), session_id="quiet")
        assert not (Path(settings.log_dir) / "quiet").exists()

    def test_same_seed_same_report(self, tmp_path, settings):
        path = write_manifest(tmp_path, ["drinfeld-random", "crossed-random"])
        first, _ = run_manifest(path, settings)
        second, _ = run_manifest(path, settings)
        assert first.to_json() == second.to_json()
        assert first.exit_code == 0

    def test_differential_checks(self, tmp_path, settings):
        path = write_manifest(
            tmp_path, ["gmu-dual-iso", "d1-casimir", "im-partial"], diff_params={"mu": "1/2", "eps": 3}
        )
        report, _ = run_manifest(path, settings)
        assert report.exit_code == 0
        dual = next(r for r in report.results if r.name == "gmu-dual-iso")
        assert dual.details["target_mu"] == "5/2"
