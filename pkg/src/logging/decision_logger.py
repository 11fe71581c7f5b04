"""
JSONL decision log of one run: every check verdict, every orchestrator
ordering or skip decision and every refused input, with reasoning steps
"""
import json
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

DEFAULT_LOG_DIR = "logs/sessions"
ORCHESTRATOR = "orchestrator"
MAX_FIELD = 1000
VERDICTS = ("pass", "fail", "skipped")


def _clip(value: Any) -> str:
    return str(value)[:MAX_FIELD] if value else ""


class DecisionLogger:
    """Logger for tracking every check decision and its reasoning"""

    def __init__(self, session_id: str, log_dir: Union[str, Path] = DEFAULT_LOG_DIR, enabled: bool = True):
        self.session_id = session_id
        self.enabled = enabled
        self.log_dir = Path(log_dir) / session_id
        self.log_file = self.log_dir / "decisions.jsonl"

        if self.enabled:
            self.log_dir.mkdir(parents=True, exist_ok=True)

    def log_decision(
        self,
        component: str,
        input_received: Any,
        reasoning_steps: List[str],
        decision_made: str,
        output_produced: Any,
        error: Optional[str] = None,
        wall_time: Optional[float] = None,
    ) -> None:
        """Append one entry; a disabled logger writes nothing"""
        if not self.enabled:
            return

        entry = {
            "timestamp": datetime.now().isoformat(),
            "session_id": self.session_id,
            "component": component,
            "input": _clip(input_received),
            "reasoning": reasoning_steps,
            "decision": decision_made,
            "output": _clip(output_produced),
            "error": error,
        }
        if wall_time is not None:
            entry["wall_time"] = round(wall_time, 6)

        with open(self.log_file, "a", encoding="utf-8") as f:
            f.write(json.dumps(entry, ensure_ascii=False) + "\n")

    def log_routing(self, current_state: Dict, next_check: str, reasoning: List[str]) -> None:
        """Log an orchestrator ordering or skip decision"""
        self.log_decision(
            component=ORCHESTRATOR,
            input_received=f"State with {current_state.get('completed', 0)} completed checks",
            reasoning_steps=reasoning,
            decision_made=f"Route to {next_check}",
            output_produced=next_check,
        )

    def log_error(self, component: str, error_message: str, context: Optional[Dict] = None) -> None:
        """Log a refusal raised while running a check"""
        self.log_decision(
            component=component,
            input_received=context,
            reasoning_steps=["Input refused"],
            decision_made="ERROR",
            output_produced=None,
            error=error_message,
        )

    def get_session_logs(self) -> List[Dict]:
        if not self.log_file.exists():
            return []
        with open(self.log_file, "r", encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]

    def get_component_decisions(self, component: str) -> List[Dict]:
        return [entry for entry in self.get_session_logs() if entry.get("component") == component]

    def get_errors(self) -> List[Dict]:
        return [entry for entry in self.get_session_logs() if entry.get("error") is not None]

    def get_verdicts(self) -> Dict[str, str]:
        """Latest logged verdict per check"""
        return {
            entry["component"]: entry["decision"]
            for entry in self.get_session_logs()
            if entry.get("component") != ORCHESTRATOR and entry.get("decision") in VERDICTS
        }

    def summary(self) -> Dict:
        """Summary statistics for this session"""
        logs = self.get_session_logs()
        components: Dict[str, int] = {}
        for entry in logs:
            name = entry.get("component", "unknown")
            components[name] = components.get(name, 0) + 1

        verdicts = dict.fromkeys(VERDICTS, 0)
        for verdict in self.get_verdicts().values():
            verdicts[verdict] += 1

        return {
            "session_id": self.session_id,
            "total_decisions": len(logs),
            "components": components,
            "verdicts": verdicts,
            "errors": sum(1 for entry in logs if entry.get("error")),
            "log_file": str(self.log_file),
        }
