"""
Run orchestrator: orders requested checks after their prerequisites, runs them
and assembles the report
"""
import uuid
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from src.checks.base import BaseCheck
from src.checks.context import RunContext
from src.checks.factory import create_check
from src.core.errors import ManifestError, PreconditionError
from src.logging.decision_logger import DecisionLogger
from src.state.manifest import Manifest
from src.state.report import CheckResult, RunReport
from src.state.run_state import RunState
from src.utils.settings import Settings

END = "END"
SECTION_OF = {
    "lie_algebra": "lie_algebra",
    "representation": "representation",
    "operator": "o_operator",
    "r": "r_matrix",
    "product": "product",
    "diff_params": "diff_params",
}


class Orchestrator:
    """Routes a run through its checks, prerequisites first"""

    def __init__(self, logger: DecisionLogger):
        self.logger = logger
        self.checks: Dict[str, BaseCheck] = {}

    def plan(self, state: RunState) -> List[str]:
        """
        Fill the state's plan: requested checks in order, each preceded by its
        prerequisites; a prerequisite not requested itself is marked implied

        Raises:
            ValueError: If a requested check or prerequisite is unknown
        """
        reasoning = []
        order: List[str] = []

        def visit(name: str, trail: Tuple[str, ...]) -> None:
            if name in order:
                return
            if name in trail:
                raise ValueError(f"Prerequisite cycle through {name}")
            check = self._check(name)
            for prerequisite in check.prerequisites:
                visit(prerequisite, trail + (name,))
            order.append(name)

        for name in state.requested:
            visit(name, ())
        state.plan = order
        state.implied = [name for name in order if name not in state.requested]
        reasoning.append(f"{len(state.requested)} requested, {len(order)} planned")
        if state.implied:
            reasoning.append(f"Implied prerequisites: {', '.join(state.implied)}")

        self.logger.log_routing(
            current_state={"completed": 0, "requested": state.requested},
            next_check=order[0] if order else END,
            reasoning=reasoning,
        )
        state.add_decision(component="orchestrator", decision="plan", reasoning=reasoning)
        return order

    def check_sections(self, state: RunState, context: RunContext) -> None:
        """
        Every requested check must find the manifest sections it needs

        Raises:
            ManifestError: Naming the first missing section
        """
        for name in state.requested:
            for requirement in self._check(name).requires:
                if not context.provides(requirement):
                    section = SECTION_OF[requirement]
                    raise ManifestError(f"Check {name} needs a {section} section", [section])

    def route(self, state: RunState) -> str:
        """
        Determine which check should run next

        Returns:
            str: Name of the next check or "END" to terminate
        """
        reasoning = []
        pending = state.pending()

        if not pending:
            reasoning.append(f"All {len(state.plan)} planned checks have results")
            next_check = END
        else:
            next_check = pending[0]
            prerequisites = self._check(next_check).prerequisites
            if prerequisites:
                verdicts = ", ".join(f"{p}={state.verdict_of(p)}" for p in prerequisites)
                reasoning.append(f"Prerequisites of {next_check}: {verdicts}")
            else:
                reasoning.append(f"{next_check} has no prerequisites")

        self.logger.log_routing(
            current_state={"completed": len(state.results), "pending": len(pending)},
            next_check=next_check,
            reasoning=reasoning,
        )
        state.add_decision(component="orchestrator", decision=f"route_to_{next_check}", reasoning=reasoning)
        if next_check != END:
            state.current_check = next_check
        return next_check

    def run_check(self, state: RunState, context: RunContext, name: str) -> CheckResult:
        """Run one check, or skip it when a prerequisite or a needed section is missing"""
        check = self._check(name)
        implied = name in state.implied
        failed = [p for p in check.prerequisites if state.verdict_of(p) != "pass"]
        missing = [SECTION_OF[r] for r in check.requires if not context.provides(r)]

        if failed or missing:
            reason = (
                f"Prerequisite {', '.join(failed)} did not pass"
                if failed
                else f"Manifest has no {', '.join(missing)} section"
            )
            self.logger.log_routing(
                current_state={"completed": len(state.results)},
                next_check=f"skip {name}",
                reasoning=[reason],
            )
            result = CheckResult(name=name, title=check.title, verdict="skipped", implied=implied, message=reason)
        else:
            result = check.run(context, implied=implied)
        state.add_result(result)
        return result

    def process_error(self, state: RunState, error: Exception, check: str) -> str:
        """
        Handle an input refusal raised inside a check

        Returns:
            str: Always "END"; the run stops
        """
        self.logger.log_error(
            component=check,
            error_message=str(error),
            context={"completed": len(state.results), "plan": state.plan},
        )
        state.add_decision(
            component=check,
            decision="ERROR",
            reasoning=[f"Error in {check}: {error}", "Terminating: the input was refused"],
        )
        state.current_check = END
        return END

    def should_continue(self, state: RunState) -> bool:
        if state.current_check == END:
            return False
        if any(d.get("decision") == "ERROR" for d in state.decision_log[-1:]):
            return False
        return bool(state.pending())

    def execute(self, state: RunState, context: RunContext) -> None:
        """
        Run the plan to the end

        Raises:
            PreconditionError: When a check refuses the manifest's input
        """
        while self.should_continue(state):
            name = self.route(state)
            if name == END:
                break
            try:
                self.run_check(state, context, name)
            except PreconditionError as exc:
                self.process_error(state, exc, name)
                raise

    def get_routing_summary(self, state: RunState) -> Dict[str, Any]:
        """
        Get summary of routing decisions for this run

        Returns:
            dict: Summary statistics
        """
        verdicts = {"pass": 0, "fail": 0, "skipped": 0}
        for result in state.results.values():
            verdicts[result.verdict] += 1
        return {
            "total_routes": len([d for d in state.decision_log if d["component"] == "orchestrator"]),
            "planned": len(state.plan),
            "implied": len(state.implied),
            "verdicts": verdicts,
            "terminated": state.current_check == END,
        }

    def _check(self, name: str) -> BaseCheck:
        if name not in self.checks:
            self.checks[name] = create_check(name, self.logger)
        return self.checks[name]


def run_manifest(
    path: Union[str, Path], settings: Settings, session_id: Optional[str] = None
) -> Tuple[RunReport, RunState]:
    """
    Load a manifest, run its checks and build the report

    Raises:
        ManifestError: Unreadable or invalid manifest, or a missing section
        ValueError: Unknown check name
        PreconditionError: A check refused the input
    """
    session_id = session_id or str(uuid.uuid4())
    logger = DecisionLogger(session_id, log_dir=settings.log_dir, enabled=settings.log_decisions)
    manifest = Manifest.load(path)
    state = RunState(session_id=session_id, requested=list(dict.fromkeys(manifest.checks)))
    orchestrator = Orchestrator(logger)
    orchestrator.plan(state)
    context = RunContext(manifest, settings)
    orchestrator.check_sections(state, context)
    orchestrator.execute(state, context)

    report = RunReport(manifest=Path(path).name, seed=settings.seed)
    for result in state.ordered_results():
        report.add_result(result)
    return report, state
