"""
Checks on the Clebsch map and the phase-space brackets of a module
"""
from typing import List

from src.checks.base import BaseCheck, register
from src.checks.context import RunContext
from src.core.tensor import PolyTensor
from src.core.verification import VerificationReport, YBReport
from src.clebsch.action import check_phase_action, leibniz_defect
from src.clebsch.phase import (
    clebsch_hamiltonian_report,
    dual_sum_bracket,
    quadratic_phase_bracket,
    swapped_bracket,
    symplectic_bracket,
)
from src.poisson.ring import compatibility_defect, jacobi_defect


def _difference(first, second) -> PolyTensor:
    n = first.ring.dim
    return PolyTensor(
        (n, n), (((a, b), first.pi[a][b] - second.pi[a][b]) for a in range(n) for b in range(n))
    )


@register
class ClebschHamiltonianCheck(BaseCheck):
    name = "clebsch-hamiltonian"
    title = "u ↦ x∇p is Hamiltonian, linear to symplectic and quadratic to quadratic phase"
    module = "clebsch"
    reference = "Phase Space: Clebsch map"
    formula = "Φ(u_s) = Σ χ_s^ab x_a p_b; Φ{H, F} = {ΦH, ΦF}"
    requires = ("lie_algebra", "representation")
    prerequisites = ("representation",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        r = context.dual_r
        reasoning.append("Quadratic pair included" if r is not None else "No r: linear pair only")
        return clebsch_hamiltonian_report(context.algebra, context.rep, r, context.limit)


@register
class PhaseJacobiCheck(BaseCheck):
    name = "phase-jacobi"
    title = "The quadratic phase bracket is Poisson and compatible with the symplectic bracket"
    module = "clebsch"
    formula = "Jacobi for the quadratic bracket on V ⊕ V*; mixed Jacobi with {x_a, p_b} = δ_ab"
    requires = ("lie_algebra", "representation", "r")
    prerequisites = ("o-operator", "representation")

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        quadratic = quadratic_phase_bracket(context.algebra, context.rep, context.dual_r)
        report = VerificationReport(name=self.name)
        report.add_part("jacobi", YBReport.from_defect("jacobi", jacobi_defect(quadratic), context.limit))
        symplectic = symplectic_bracket(context.rep.dim, quadratic.ring)
        report.add_part(
            "compatible-symplectic",
            YBReport.from_defect("compatibility", compatibility_defect(quadratic, symplectic), context.limit),
        )
        reasoning.append(f"Phase space of dimension {quadratic.ring.dim}")
        return report


@register
class PhaseActionCheck(BaseCheck):
    name = "phase-action"
    title = "The module action on phase space is Poisson for the quadratic phase bracket"
    module = "clebsch"
    formula = "action criterion on x, p with X^∧x = χ(X)x, X^∧p = -χ(X)ᵀp and the bracket r induces on G*"
    requires = ("lie_algebra", "representation", "r")
    prerequisites = ("o-operator", "representation")

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append("Action criterion with the O-induced bracket on G*")
        return check_phase_action(context.algebra, context.rep, context.dual_r, context.limit)


@register
class PhaseSymmetryCheck(BaseCheck):
    name = "phase-symmetry"
    title = "Exchanging x and p with χ → χ^d maps the phase bracket to itself"
    module = "clebsch"
    formula = "bracket(χ; x, p) = bracket(χ^d; p, x) = single formula on V ⊕ V* with χ ⊕ χ^d"
    requires = ("lie_algebra", "representation", "r")
    prerequisites = ("o-operator", "representation")

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        algebra, rep, r = context.algebra, context.rep, context.dual_r
        original = quadratic_phase_bracket(algebra, rep, r)
        report = VerificationReport(name=self.name)
        report.add_part(
            "swapped", YBReport.from_defect("swapped", _difference(swapped_bracket(algebra, rep, r, original.ring), original), context.limit)
        )
        report.add_part(
            "dual-sum", YBReport.from_defect("dual-sum", _difference(dual_sum_bracket(algebra, rep, r, original.ring), original), context.limit)
        )
        reasoning.append("Both rebuilt brackets compared entrywise")
        return report


@register
class LeibnizCheck(BaseCheck):
    name = "leibniz"
    title = "The Clebsch pairing x∇p obeys the Leibniz rule for the module action"
    module = "clebsch"
    formula = "X·(x∇p) = (X·x)∇p + x∇(X·p)"
    requires = ("lie_algebra", "representation")
    prerequisites = ("representation",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append(f"Module of dimension {context.rep.dim}")
        return YBReport.from_defect("leibniz", leibniz_defect(context.algebra, context.rep), context.limit)
