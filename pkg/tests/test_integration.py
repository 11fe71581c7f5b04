import sys
from pathlib import Path

import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.checks.context import RunContext
from src.checks.orchestrator import END, Orchestrator, run_manifest
from src.logging.decision_logger import DecisionLogger
from src.state.manifest import Manifest
from src.state.run_state import RunState
from src.utils.settings import Settings

DATA = Path(__file__).parent.parent / "data"


@pytest.fixture
def settings(tmp_path):
    return Settings(log_dir=str(tmp_path / "logs"), random_trials=2)


class TestOrchestratorIntegration:
    """Test orchestrator with state and logging"""

    def test_step_by_step_routing(self, tmp_path, settings):
        """Drive the orchestrator by hand over the sl2 manifest"""
        logger = DecisionLogger("step", log_dir=settings.log_dir)
        orchestrator = Orchestrator(logger)
        manifest = Manifest.load(DATA / "sl2.json")
        state = RunState(session_id="step", requested=manifest.checks)
        plan = orchestrator.plan(state)
        context = RunContext(manifest, settings)
        orchestrator.check_sections(state, context)

        assert plan[0] == "jacobi"
        assert state.decision_log[0]["decision"] == "plan"

        first = orchestrator.route(state)
        assert first == "jacobi"
        assert state.current_check == "jacobi"
        assert orchestrator.run_check(state, context, first).verdict == "pass"

        # the next route reports the prerequisite verdicts
        second = orchestrator.route(state)
        assert second == plan[1]
        assert state.decision_log[-1]["decision"] == f"route_to_{second}"

        while orchestrator.should_continue(state):
            name = orchestrator.route(state)
            orchestrator.run_check(state, context, name)
        assert orchestrator.route(state) == END
        assert set(state.results) == set(plan)

    def test_routing_summary(self, settings):
        logger = DecisionLogger("summary", enabled=False)
        orchestrator = Orchestrator(logger)
        manifest = Manifest.load(DATA / "sl2.json")
        state = RunState(session_id="summary", requested=manifest.checks)
        orchestrator.plan(state)
        orchestrator.execute(state, RunContext(manifest, settings))

        summary = orchestrator.get_routing_summary(state)
        assert summary["planned"] == len(state.plan)
        assert summary["verdicts"]["pass"] == len(state.plan)
        # the plan plus one route per check
        assert summary["total_routes"] == len(state.plan) + 1
        assert not summary["terminated"]

    def test_log_matches_state(self, settings):
        report, state = run_manifest(DATA / "clebsch-sl2.json", settings, session_id="clebsch")
        logger = DecisionLogger("clebsch", log_dir=settings.log_dir)
        logs = logger.get_session_logs()

        assert logs[0]["component"] == "orchestrator"
        logged = [entry["component"] for entry in logs if entry["component"] != "orchestrator"]
        assert logged == state.plan
        for entry in logs:
            if entry["component"] in state.results:
                assert entry["decision"] == state.results[entry["component"]].verdict
                assert "wall_time" in entry
        assert logger.summary()["errors"] == 0
        assert report.exit_code == 0

    def test_state_round_trip(self, settings):
        _, state = run_manifest(DATA / "gl2-double.json", settings.merged(log_decisions=False))
        restored = RunState.from_json(state.to_json())
        assert restored.plan == state.plan
        assert {n: r.verdict for n, r in restored.results.items()} == {n: r.verdict for n, r in state.results.items()}


class TestEndToEnd:
    """Run every bundled manifest through the full pipeline"""

    @pytest.mark.parametrize("name", ["sl2", "gmu", "gl2-double", "clebsch-sl2"])
    def test_bundled_manifest(self, name, tmp_path):
        """Full-size random sweeps, as a plain run would use them"""
        defaults = Settings(log_dir=str(tmp_path / "logs"), log_decisions=False)
        assert defaults.random_trials == 20
        report, state = run_manifest(DATA / f"{name}.json", defaults)
        assert report.exit_code == 0, report.to_text()
        assert report.counts()["pass"] == len(state.plan)
        assert report.manifest == f"{name}.json"

    def test_seed_changes_only_random_sweeps(self, settings):
        quiet = settings.merged(log_decisions=False)
        first, _ = run_manifest(DATA / "gl2-double.json", quiet)
        second, _ = run_manifest(DATA / "gl2-double.json", quiet.merged(seed=7))
        assert [r.verdict for r in first.results] == [r.verdict for r in second.results]
        assert second.seed == 7
