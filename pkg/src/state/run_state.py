from datetime import datetime
from typing import Dict, List, Optional
from pydantic import BaseModel, Field
import json

from src.state.report import CheckResult


class RunState(BaseModel):
    """Flat state of one run: the plan, the results so far and the decision trail"""
    session_id: str = Field(description="Unique session identifier")
    requested: List[str] = Field(default_factory=list, description="Checks named in the manifest")
    plan: List[str] = Field(default_factory=list, description="Checks in execution order, prerequisites first")
    implied: List[str] = Field(default_factory=list, description="Checks added only as prerequisites")
    results: Dict[str, CheckResult] = Field(default_factory=dict, description="Results by check name")
    current_check: str = Field(default="orchestrator", description="Check being run")
    decision_log: List[Dict] = Field(default_factory=list, description="Orchestrator and check decisions")

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, json_str: str) -> 'RunState':
        return cls(**json.loads(json_str))

    def add_result(self, result: CheckResult) -> None:
        self.results[result.name] = result

    def add_decision(self, component: str, decision: str, reasoning: List[str]) -> None:
        self.decision_log.append({
            "component": component,
            "decision": decision,
            "reasoning": reasoning,
            "timestamp": datetime.now().isoformat(),
            "completed": len(self.results),
        })

    def pending(self) -> List[str]:
        return [name for name in self.plan if name not in self.results]

    def verdict_of(self, name: str) -> Optional[str]:
        result = self.results.get(name)
        return result.verdict if result else None

    def ordered_results(self) -> List[CheckResult]:
        return [self.results[name] for name in self.plan if name in self.results]
