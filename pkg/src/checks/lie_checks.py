"""
Checks on Lie algebras, modules, O-operators and classical r-matrices
"""
from typing import List

from src.checks.base import BaseCheck, generated_input, register
from src.checks.context import RunContext
from src.core.linalg import is_invertible
from src.core.verification import VerificationReport, YBReport
from src.lie.algebra import abelian, antisymmetry_defect, borel_sl2, jacobi_check, jacobi_defect_tensor, sl2, two_dim_nonabelian
from src.lie.homomorphisms import identity_homomorphism, push_forward, random_homomorphism, random_skew
from src.lie.o_operator import (
    check_cybe,
    check_o_operator,
    cybe_defect,
    cybe_matches_matrix_level,
    drinfeld_equivalence,
    induced_bracket,
    induced_cocycle_check,
    o_operator_grid,
    r_to_operator,
)
from src.lie.representation import adjoint_rep, check_representation, coadjoint_rep

MIN_DRINFELD_SAMPLES = 50
MIN_HOMOMORPHISMS = 20
DRINFELD_FIXTURES = (borel_sl2, two_dim_nonabelian, lambda: abelian(2), sl2, lambda: abelian(3))


@register
class JacobiCheck(BaseCheck):
    name = "jacobi"
    title = "Structure constants are antisymmetric and satisfy Jacobi"
    module = "lie_core"
    reference = "Lie Algebras"
    formula = "[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0"
    requires = ("lie_algebra",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append(f"Algebra {context.algebra.name} of dimension {context.algebra.dim}")
        return jacobi_check(context.algebra, context.limit)


@register
class RepresentationCheck(BaseCheck):
    name = "representation"
    title = "Module matrices respect the bracket; the coadjoint module is a module"
    module = "lie_core"
    reference = "Modules"
    formula = "χ([x,y]) = [χ(x), χ(y)]; ⟨x·u, y⟩ = -⟨u, [x,y]⟩"
    requires = ("lie_algebra", "representation")
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        report = VerificationReport(name=self.name)
        report.add_part("module", check_representation(context.algebra, context.rep.chi, context.limit))
        report.add_part("coadjoint", check_representation(context.algebra, coadjoint_rep(context.algebra).chi, context.limit))
        reasoning.append(f"Module of dimension {context.rep.dim} over {context.algebra.name}")
        return report


@register
class OOperatorCheck(BaseCheck):
    name = "o-operator"
    title = "O satisfies the O-equation on its module"
    module = "lie_core"
    reference = "O-operators and r: O-equation defect"
    formula = "[O(u), O(v)] = O(O(u)·v - O(v)·u)"
    requires = ("lie_algebra", "operator")
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append(f"O acts from the {context.operator_module} module")
        return check_o_operator(context.operator, context.limit)


@register
class OOperatorGridCheck(BaseCheck):
    name = "o-operator-grid"
    title = "Both sl2 fundamental-module families pass the O-equation on a parameter grid"
    module = "lie_core"
    formula = "O(v0) = c1 h + c2 f, O(v1) = c1 f; O(v0) = c3 e, O(v1) = -c3 h + c4 e, parameters in {0, ±1, 2}"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        report = VerificationReport(name=self.name)
        for member in o_operator_grid(limit=context.limit):
            report.add_part(f"{member.family}({member.params[0]}, {member.params[1]})", member.report)
        reasoning.append(f"Evaluated {len(report.parts)} grid members")
        return report


@register
class InducedBracketCheck(BaseCheck):
    name = "induced-bracket"
    title = "The bracket a verified O induces on its module is Lie"
    module = "lie_core"
    formula = "[u,v] = O(u)·v - O(v)·u satisfies antisymmetry and Jacobi"
    requires = ("lie_algebra", "operator")
    prerequisites = ("o-operator",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        operator = context.operator
        induced = induced_bracket(context.algebra, operator.source, operator)
        report = VerificationReport(name=self.name)
        report.add_part("antisymmetry", YBReport.from_defect("antisymmetry", antisymmetry_defect(induced.bracket), context.limit))
        report.add_part("jacobi", YBReport.from_defect("jacobi", jacobi_defect_tensor(induced.bracket), context.limit))
        reasoning.append(f"Induced bracket on a {induced.carrier_dim}-dimensional module")
        return report


@register
class DualCocycleCheck(BaseCheck):
    name = "dual-cocycle"
    title = "Ω(u, v) = ⟨u, O(v)⟩ is a 2-cocycle of the induced bracket on G*"
    module = "lie_core"
    formula = "Ω([u,v], w) + Ω([v,w], u) + Ω([w,u], v) = 0"
    requires = ("lie_algebra", "r")
    prerequisites = ("o-operator",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append("Using the bracket r induces on G*")
        return induced_cocycle_check(context.algebra, context.r_operator, context.limit)


@register
class CybeCheck(BaseCheck):
    name = "cybe"
    title = "Skew r solves the classical Yang-Baxter equation"
    module = "lie_core"
    reference = "O-operators and r: CYBE"
    formula = "c(r) = [r12, r13] + [r12, r23] + [r13, r23] = 0"
    requires = ("lie_algebra", "r")
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append("Computing c(r) in G⊗G⊗G; a non-skew r is refused")
        return check_cybe(context.algebra, context.dual_r, context.limit)


@register
class CybeMatrixLevelCheck(BaseCheck):
    name = "cybe-matrix-level"
    title = "c(r) pushed through a module equals c of the represented r"
    module = "lie_core"
    formula = "(ρ⊗ρ⊗ρ) c(r) = c((ρ⊗ρ) r)"
    requires = ("lie_algebra", "r")
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        report = VerificationReport(name=self.name)
        modules = [adjoint_rep(context.algebra)]
        if context.rep is not None:
            modules.append(context.rep)
        for rep in modules:
            holds = cybe_matches_matrix_level(context.algebra, context.dual_r, rep)
            report.add_part(rep.name, YBReport(relation_name="matrix-level", holds=holds))
        reasoning.append(f"Compared both sides in {len(modules)} module(s)")
        return report


@register
class DrinfeldCheck(BaseCheck):
    name = "drinfeld"
    title = "For nondegenerate skew r: ⟨r⁻¹x, y⟩ is a 2-cocycle exactly when c(r) = 0"
    module = "lie_core"
    formula = "ω(x,y) = ⟨r⁻¹ x, y⟩; ω cocycle ⇔ c(r) = 0; O-equation defect paired with w equals ⟨u⊗v⊗w, c(r)⟩"
    requires = ("lie_algebra", "r")
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        report = drinfeld_equivalence(context.algebra, context.dual_r, context.limit)
        reasoning.append(f"r solves the classical equation: {report.details['solves_cybe']}")
        return report


@register
class DrinfeldRandomCheck(BaseCheck):
    name = "drinfeld-random"
    title = "Cocycle/CYBE equivalence and the pairing identity on random skew r"
    module = "lie_core"
    formula = "on 2- and 3-dimensional fixtures: ω cocycle ⇔ c(r) = 0 when r is invertible; -O-equation defect = c(r) always"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        rng = context.rng(self.name)
        report = VerificationReport(name=self.name)
        trials = max(MIN_DRINFELD_SAMPLES, context.settings.random_trials)
        invertible = solutions = 0
        for k in range(trials):
            algebra = rng.choice(DRINFELD_FIXTURES)()
            r = random_skew(algebra.dim, rng)
            with generated_input(f"{algebra.name}[{k}]"):
                o_defect = check_o_operator(r_to_operator(algebra, r), context.limit).defect
                c = cybe_defect(algebra, r)
            report.add_part(
                f"{algebra.name}[{k}] pairing", YBReport.from_defect("pairing", o_defect + c, context.limit)
            )
            if is_invertible(r):
                invertible += 1
                # raises when the two verdicts disagree
                with generated_input(f"{algebra.name}[{k}]"):
                    solutions += drinfeld_equivalence(algebra, r, context.limit).details["solves_cybe"]
        reasoning.append(f"{trials} samples, {invertible} invertible, {solutions} of those solve CYBE")
        report.details.update(samples=trials, invertible=invertible, invertible_solutions=solutions)
        return report


@register
class NaturalityCheck(BaseCheck):
    name = "naturality"
    title = "Pushing O-operators forward along homomorphisms keeps the O-equation"
    module = "lie_core"
    formula = "O_H = φ O_G φᵀ is an O-operator on H*, and φᵀ is a homomorphism of the induced brackets"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        rng = context.rng(self.name)
        report = VerificationReport(name=self.name)
        trials = max(MIN_HOMOMORPHISMS, context.settings.random_trials)
        kinds = {}
        for k in range(trials):
            sample = random_homomorphism(rng)
            kinds[sample.label] = kinds.get(sample.label, 0) + 1
            with generated_input(f"{sample.label}[{k}]"):
                pushed = push_forward(sample.phi, sample.operator, sample.target, context.limit)
            for key, part in pushed.parts.items():
                report.add_part(f"{sample.label}[{k}] {key}", part)
        if context.dual_r is not None and check_o_operator(context.r_operator).holds:
            algebra = context.algebra
            pushed = push_forward(identity_homomorphism(algebra), context.r_operator, algebra, context.limit)
            report.add_part("manifest o-equation", pushed.parts["o-equation"])
            reasoning.append("Manifest operator pushed through the identity")
        reasoning.append(f"Homomorphism kinds sampled: {sorted(kinds.items())}")
        report.details["kinds"] = kinds
        return report
