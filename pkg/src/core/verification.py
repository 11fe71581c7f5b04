"""
Structured verification results
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

DEFAULT_WITNESS_LIMIT = 10


class YBReport(BaseModel):
    """Outcome of checking one relation: holds exactly when the defect is zero"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    relation_name: str = Field(description="Name of the relation that was checked")
    holds: bool = Field(description="Whether the defect vanishes")
    defect: Optional[Any] = Field(default=None, exclude=True, description="Difference of the two sides")
    witness: List[Dict[str, Any]] = Field(default_factory=list, description="Leading nonzero defect entries")
    nonzero_count: int = Field(default=0, description="Number of nonzero defect entries")
    max_nonzero_entries_listed: int = Field(
        default=DEFAULT_WITNESS_LIMIT, description="Cap on the witness length"
    )
    details: Dict[str, Any] = Field(default_factory=dict, description="Extra computed facts")

    @classmethod
    def from_defect(
        cls,
        relation_name: str,
        defect: Any,
        limit: int = DEFAULT_WITNESS_LIMIT,
        **details: Any,
    ) -> "YBReport":
        """Build from any sparse defect (Tensor, PolyTensor or DiffDefect)"""
        return cls(
            relation_name=relation_name,
            holds=defect.is_zero(),
            defect=defect,
            witness=defect.witness(limit),
            nonzero_count=defect.nonzero_count,
            max_nonzero_entries_listed=limit,
            details=details,
        )

    def get_summary(self) -> str:
        if self.holds:
            return f"{self.relation_name}: holds"
        return f"{self.relation_name}: fails with {self.nonzero_count} nonzero defect entries"

    def to_dict(self) -> dict:
        return self.model_dump()


class VerificationReport(BaseModel):
    """Compound result built from several relation checks"""

    name: str = Field(description="What was verified")
    is_valid: bool = Field(default=True, description="Whether every part holds")
    violations: List[str] = Field(default_factory=list, description="Failed parts and messages")
    parts: Dict[str, YBReport] = Field(default_factory=dict, description="Individual relation checks")
    details: Dict[str, Any] = Field(default_factory=dict, description="Extra computed facts")

    def add_violation(self, violation: str) -> None:
        self.violations.append(violation)
        self.is_valid = False

    def add_part(self, key: str, report: YBReport, required: bool = True) -> YBReport:
        """Record a relation check; a required part that fails is a violation"""
        self.parts[key] = report
        if required and not report.holds:
            self.add_violation(report.get_summary())
        return report

    def get_summary(self) -> str:
        if self.is_valid:
            return f"{self.name}: all {len(self.parts)} part(s) hold"
        return f"{self.name}: {len(self.violations)} violation(s) found"

    def first_failure(self) -> Optional[YBReport]:
        return next((p for p in self.parts.values() if not p.holds), None)

    def to_dict(self) -> dict:
        return self.model_dump()
