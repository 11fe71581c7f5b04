"""
Check results and the run report
"""
import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.state.manifest import SCHEMA

Verdict = Literal["pass", "fail", "skipped"]


class CheckResult(BaseModel):
    """Outcome of one check"""

    name: str = Field(description="Check name")
    title: str = Field(description="One-line description")
    verdict: Verdict = Field(description="pass, fail or skipped")
    implied: bool = Field(default=False, description="Run only as a prerequisite of a requested check")
    witness: List[Dict[str, Any]] = Field(default_factory=list, description="Leading nonzero defect entries")
    nonzero_count: int = Field(default=0, description="Nonzero defect entries in total")
    message: Optional[str] = Field(default=None, description="Failure or skip reason")
    details: Dict[str, Any] = Field(default_factory=dict, description="Extra computed facts")
    wall_time: Optional[float] = Field(default=None, description="Seconds spent, recorded with --timings")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def get_summary(self) -> str:
        tag = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP"}[self.verdict]
        line = f"{tag:<5}{self.name}: {self.title}"
        if self.implied:
            line += " (implied)"
        if self.message:
            line += f" [{self.message}]"
        return line


class RunReport(BaseModel):
    """All results of one run, in plan order"""

    model_config = ConfigDict(populate_by_name=True)

    schema_tag: str = Field(default=SCHEMA, alias="schema", description="Report schema tag")
    manifest: str = Field(description="Manifest file name")
    seed: int = Field(description="Seed of the randomized sweeps")
    results: List[CheckResult] = Field(default_factory=list, description="Per-check results")
    exit_code: int = Field(default=0, description="Process exit code")

    def add_result(self, result: CheckResult) -> None:
        self.results.append(result)
        if result.verdict != "pass" and self.exit_code == 0:
            self.exit_code = 1

    def counts(self) -> Dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for result in self.results:
            out[result.verdict] += 1
        return out

    def to_json(self, timings: bool = False) -> str:
        """Sorted-key JSON; wall time only when `timings` is set"""
        data = self.model_dump(by_alias=True)
        data["counts"] = self.counts()
        if not timings:
            for result in data["results"]:
                result.pop("wall_time", None)
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self, timings: bool = False) -> str:
        lines = [f"omatrix report for {self.manifest} (seed {self.seed})"]
        for result in self.results:
            line = result.get_summary()
            if timings and result.wall_time is not None:
                line += f" ({result.wall_time:.3f}s)"
            lines.append(line)
            for entry in result.witness:
                lines.append(f"      {entry['indices']} = {entry['value']}")
        counts = self.counts()
        lines.append(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skipped']} skipped")
        return "\n".join(lines) + "\n"
