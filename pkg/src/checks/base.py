"""
Base class for checks and the registry every check module adds to
"""
import time
from contextlib import contextmanager
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Tuple, Type, Union

from src.checks.context import RunContext
from src.core.errors import InternalConsistencyError, JetOrderExceeded, PreconditionError, VerificationFailure
from src.core.verification import VerificationReport, YBReport
from src.logging.decision_logger import DecisionLogger
from src.state.report import CheckResult
from src.utils.rationals import render_value

Outcome = Union[YBReport, VerificationReport]

REQUIREMENTS = ("lie_algebra", "representation", "operator", "r", "product", "diff_params")

CATALOG: Dict[str, Type["BaseCheck"]] = {}

CONVENTIONS_DOC = "docs/conventions.md"

# section of the conventions doc each module follows, unless a check names its own
MODULE_REFERENCES = {
    "exact_core": "Operators on V⊗V",
    "yang_baxter": "Operators on V⊗V",
    "lie_core": "O-operators and r",
    "poisson_poly": "Poisson Brackets on G*",
    "clebsch": "Phase Space",
    "doubles": "Doubles",
    "diff_alg": "Jets",
}


def register(cls: Type["BaseCheck"]) -> Type["BaseCheck"]:
    """Class decorator adding a check to the catalog under its name"""
    if cls.name in CATALOG:
        raise ValueError(f"Duplicate check name: {cls.name}")
    unknown = set(cls.requires) - set(REQUIREMENTS)
    if unknown:
        raise ValueError(f"Unknown requirement for {cls.name}: {', '.join(sorted(unknown))}")
    CATALOG[cls.name] = cls
    return cls


@contextmanager
def generated_input(label: str) -> Iterator[None]:
    """
    Wraps work on a sampled input. Samplers only build valid inputs, so a
    PreconditionError here fails the check instead of refusing the manifest.
    """
    try:
        yield
    except PreconditionError as exc:
        raise InternalConsistencyError(f"Sample {label} was refused: {exc}") from exc


class BaseCheck:
    """
    One named verification over a RunContext

    Subclasses set the class attributes and implement `evaluate`, appending
    their reasoning steps as they go. `run` turns the outcome into a
    CheckResult and logs it.
    """

    name: str = ""
    title: str = ""
    module: str = ""
    formula: str = ""
    requires: Tuple[str, ...] = ()
    prerequisites: Tuple[str, ...] = ()
    reference: str = ""

    def __init__(self, logger: DecisionLogger):
        self.logger = logger

    def evaluate(self, context: RunContext, reasoning: List[str]) -> Outcome:
        raise NotImplementedError

    def run(self, context: RunContext, implied: bool = False) -> CheckResult:
        """
        Evaluate and summarise. A failed precondition on a needed property
        skips the check; internal disagreements and jet-ceiling overruns fail it.
        PreconditionError propagates: it means the input was refused.
        """
        reasoning: List[str] = []
        started = time.perf_counter()
        error = None
        try:
            outcome = self.evaluate(context, reasoning)
            result = self._result(outcome, implied)
        except VerificationFailure as exc:
            reasoning.append(f"Needed property does not hold: {exc}")
            result = self._bare("skipped", implied, str(exc))
            error = str(exc)
        except (InternalConsistencyError, JetOrderExceeded) as exc:
            reasoning.append(f"Computation stopped: {exc}")
            result = self._bare("fail", implied, str(exc))
            error = str(exc)
        result.wall_time = round(time.perf_counter() - started, 6)

        self.logger.log_decision(
            component=self.name,
            input_received={"requires": list(self.requires), "implied": implied},
            reasoning_steps=reasoning,
            decision_made=result.verdict,
            output_produced={"nonzero_count": result.nonzero_count, "message": result.message},
            error=error,
            wall_time=result.wall_time,
        )
        return result

    def _bare(self, verdict: str, implied: bool, message: str) -> CheckResult:
        return CheckResult(name=self.name, title=self.title, verdict=verdict, implied=implied, message=message)

    def _result(self, outcome: Outcome, implied: bool) -> CheckResult:
        if isinstance(outcome, VerificationReport):
            failing = outcome.first_failure() if not outcome.is_valid else None
            details = dict(outcome.details)
            details["parts"] = {key: part.holds for key, part in outcome.parts.items()}
            return CheckResult(
                name=self.name,
                title=self.title,
                verdict="pass" if outcome.is_valid else "fail",
                implied=implied,
                witness=failing.witness if failing else [],
                nonzero_count=failing.nonzero_count if failing else 0,
                message=None if outcome.is_valid else "; ".join(outcome.violations),
                details=jsonable(details),
            )
        return CheckResult(
            name=self.name,
            title=self.title,
            verdict="pass" if outcome.holds else "fail",
            implied=implied,
            witness=outcome.witness,
            nonzero_count=outcome.nonzero_count,
            message=None if outcome.holds else outcome.get_summary(),
            details=jsonable(outcome.details),
        )

    def anchor(self) -> str:
        """Conventions section (and entry) the checked formula is written in"""
        return self.reference or MODULE_REFERENCES.get(self.module, "")

    def describe(self) -> str:
        lines = [f"{self.name}: {self.title}", f"  module: {self.module}", f"  checks: {self.formula}"]
        if self.requires:
            lines.append(f"  needs: {', '.join(self.requires)}")
        if self.prerequisites:
            lines.append(f"  after: {', '.join(self.prerequisites)}")
        lines.append(f"  ref: {CONVENTIONS_DOC}, {self.anchor()}")
        return "\n".join(lines)


def jsonable(value: Any) -> Any:
    """Details as plain JSON values, exact numbers rendered as "p/q\""""
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (int, Fraction)):
        return render_value(value)
    return str(value)
