"""
Checks on the differential Lie algebras D₁ and G(μ), their duals and their
Hamiltonian matrices
"""
from fractions import Fraction
from typing import List

from src.checks.base import BaseCheck, register
from src.checks.context import RunContext
from src.core.verification import VerificationReport, YBReport
from src.diffalg.gmu import (
    DUAL_NAMES,
    coadjoint_report,
    d1_cocycle_checks,
    dual_isomorphism_report,
    gmu_bracket,
    gmu_cocycle_checks,
    jacobi_report,
    o_operator_report,
    variational_commutator_report,
)
from src.diffalg.hamiltonian import (
    D1_NAMES,
    casimir_by_density,
    d1_casimir_check,
    d1_clebsch_images,
    d1_linear_matrix,
    gmu_hamiltonian_triple,
    hamiltonian_map_criterion,
    symplectic_matrix,
)
from src.diffalg.jets import im_partial_test, random_jet_polynomial
from src.diffalg.variational import self_adjoint_frechet_defect

REFERENCE_MUS = (Fraction(0), Fraction(1), Fraction(1, 2))
SCALED_MAP_FACTOR = 2
JET_SAMPLES = 5


@register
class GmuJacobiCheck(BaseCheck):
    name = "gmu-jacobi"
    title = "G(μ) is a differential Lie algebra for the manifest μ and for μ = 0, 1, 1/2"
    module = "diff_alg"
    reference = "Jets: G(μ)"
    formula = "[(X,f),(Y,g)] = (XY′ - X′Y, (Xg - Yf + μ(X′Y″ - X″Y′))′); Jacobi ∼ 0 with formal test elements"
    requires = ("diff_params",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        mus = [context.mu] + [mu for mu in REFERENCE_MUS if mu != context.mu]
        report = VerificationReport(name=self.name)
        for mu in mus:
            report.add_part(f"mu={mu}", jacobi_report(gmu_bracket(mu, context.space), context.limit))
        reasoning.append(f"μ values: {', '.join(str(mu) for mu in mus)}")
        return report


@register
class GmuCocyclesCheck(BaseCheck):
    name = "gmu-cocycles"
    title = "ω and Ω are skew 2-cocycles of G(μ) modulo Im ∂"
    module = "diff_alg"
    formula = "ω((X,f),(Y,g)) = X‴Y; Ω((X,f),(Y,g)) = Xg - Yf; cyclic sums over brackets ∼ 0"
    requires = ("diff_params",)
    prerequisites = ("gmu-jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        reasoning.append(f"μ = {context.mu}")
        return gmu_cocycle_checks(context.mu, context.space, context.limit)


@register
class D1CocyclesCheck(BaseCheck):
    name = "d1-cocycles"
    title = "D₁ is a differential Lie algebra with the Gelfand-Fuchs cocycle"
    module = "diff_alg"
    formula = "[X, Y] = XY′ - X′Y; ω(X, Y) = X‴Y skew and a cocycle modulo Im ∂"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        reasoning.append("Formal test elements X, Y, Z")
        return d1_cocycle_checks(context.space, context.limit)


@register
class GmuOOperatorCheck(BaseCheck):
    name = "gmu-o-operator"
    title = "O = [[0, 1], [-1, ε∂³]] is skew with exact inverse [[ε∂³, -1], [1, 0]]"
    module = "diff_alg"
    reference = "Jets: The O-operator on G(μ)*"
    formula = "O† = -O; O ∘ O⁻¹ = O⁻¹ ∘ O = 1"
    requires = ("diff_params",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        reasoning.append(f"ε = {context.eps}")
        return o_operator_report(context.eps, context.space, context.limit)


@register
class GmuCoadjointCheck(BaseCheck):
    name = "gmu-coadjoint"
    title = "The generic coadjoint action of G(μ) matches its closed form"
    module = "diff_alg"
    formula = "(X,f)·(u,p) = (Xu′ + 2X′u - fp′ + μ(X′p′)″ + μ(X″p′)′, Xp′)"
    requires = ("diff_params",)
    prerequisites = ("gmu-jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append("Euler derivative of -⟨ξ, [X, Y]⟩ in a fresh Y")
        return coadjoint_report(context.mu, context.space, context.limit)


@register
class GmuDualIsoCheck(BaseCheck):
    name = "gmu-dual-iso"
    title = "The bracket O induces on G(μ)* is G(ε - μ) after relabeling"
    module = "diff_alg"
    formula = "[u, v] = O(u)·v - O(v)·u on G(μ)*; coefficient of (p′q″ - p″q′)′ is ε - μ"
    requires = ("diff_params",)
    prerequisites = ("gmu-o-operator", "gmu-coadjoint")

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        report = dual_isomorphism_report(context.mu, context.eps, context.space, context.limit)
        reasoning.append(f"Target μ′ = {report.details['target_mu']}")
        return report


@register
class HamiltonianTripleCheck(BaseCheck):
    name = "hamiltonian-triple"
    title = "Constant, linear and quadratic Hamiltonian matrices on G(μ)* are skew, Hamiltonian and pairwise compatible"
    module = "diff_alg"
    formula = (
        "B₀ = O⁻¹; B₁(X) = -X·u; B₂(X) = O(X·u)·u with star entry "
        "2(p′u∂ + ∂p′u) + (4μ - ε)p′∂³p′ + μ(3p″² - 2p′p‴)∂ + μ∂(3p″² - 2p′p‴)"
    )
    requires = ("diff_params",)
    prerequisites = ("gmu-o-operator", "gmu-coadjoint")

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        _, _, _, report = gmu_hamiltonian_triple(context.mu, context.eps, context.space, context.limit)
        reasoning.append("Transcribed B₁ and B₂ agree with the derived ones")
        return report


@register
class D1CasimirCheck(BaseCheck):
    name = "d1-casimir"
    title = "The manifest density is a Casimir of the D₁ linear matrix; u is not"
    module = "diff_alg"
    formula = "B = -(u∂ + ∂u); B(δH/δu) = 0 ⇔ (δH/δu)² u = const"
    requires = ("diff_params",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        space = context.space
        density = context.casimir
        holds = d1_casimir_check(density, space)
        agrees = holds == casimir_by_density(density, space)
        report = VerificationReport(name=self.name)
        report.add_part("casimir", YBReport(relation_name="d1-casimir", holds=holds))
        report.add_part("density-criterion", YBReport(relation_name="criteria-agree", holds=agrees))
        report.add_part(
            "u-is-not-casimir", YBReport(relation_name="non-casimir", holds=not d1_casimir_check(space.jet("u"), space))
        )
        reasoning.append(f"H = {density}")
        report.details["density"] = str(density)
        return report


@register
class HamiltonianMapCheck(BaseCheck):
    name = "hamiltonian-map"
    title = "u ↦ x′p is Hamiltonian from D₁ to the symplectic matrix; u ↦ λu only for λ ∈ {0, 1}"
    module = "diff_alg"
    formula = "Φ(B₁) - D(Φ) B₂ D(Φ)† = 0"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        space = context.space
        d1 = d1_linear_matrix(space)
        u = space.jet("u")
        report = VerificationReport(name=self.name)
        report.add_part(
            "clebsch",
            hamiltonian_map_criterion(space, d1_clebsch_images(space), D1_NAMES, ("x", "p"), d1, symplectic_matrix(space), context.limit),
        )
        report.add_part("identity", hamiltonian_map_criterion(space, {"u": u}, D1_NAMES, D1_NAMES, d1, d1, context.limit))
        scaled = report.add_part(
            f"scaled-{SCALED_MAP_FACTOR}",
            hamiltonian_map_criterion(space, {"u": SCALED_MAP_FACTOR * u}, D1_NAMES, D1_NAMES, d1, d1, context.limit),
            required=False,
        )
        reasoning.append(f"Scaling by {SCALED_MAP_FACTOR} is Hamiltonian: {scaled.holds}")
        report.details["scaled_is_hamiltonian"] = scaled.holds
        return report


@register
class VariationalLemmaCheck(BaseCheck):
    name = "variational-lemma"
    title = "δ(X^∧H) = [δH, X] + X^∧(δH) on G(μ)* for a formal X"
    module = "diff_alg"
    formula = "δ/δu(X^∧H) = [δH/δu, X] + X^∧(δH/δu)"
    requires = ("diff_params",)
    prerequisites = ("gmu-coadjoint",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> YBReport:
        reasoning.append(f"H = {context.lemma_density}")
        algebra = gmu_bracket(context.mu, context.space)
        return variational_commutator_report(algebra, context.lemma_density, DUAL_NAMES[0], context.limit)


@register
class FrechetSelfAdjointCheck(BaseCheck):
    name = "frechet-self-adjoint"
    title = "The Fréchet derivative of a variational derivative is self-adjoint"
    module = "diff_alg"
    formula = "D(δH/δu)† = D(δH/δu)"
    requires = ("diff_params",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        space = context.space
        rng = context.rng(self.name)
        names = DUAL_NAMES[0]
        densities = [("lemma", context.lemma_density, names), ("casimir", context.casimir, D1_NAMES)]
        densities += [(f"random[{k}]", random_jet_polynomial(space, names, rng, max_order=2), names) for k in range(JET_SAMPLES)]
        report = VerificationReport(name=self.name)
        for label, density, variables in densities:
            defect = self_adjoint_frechet_defect(space, density, variables)
            report.add_part(label, YBReport.from_defect("self-adjoint", defect, context.limit))
        reasoning.append(f"{len(densities)} densities")
        return report


@register
class ImPartialCheck(BaseCheck):
    name = "im-partial"
    title = "Total derivatives pass the Im ∂ test and u does not"
    module = "diff_alg"
    formula = "F ∈ Im ∂ ⇔ δF/δv = 0 for every v and F has no constant term"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        space = context.space
        rng = context.rng(self.name)
        names = DUAL_NAMES[0]
        report = VerificationReport(name=self.name)
        for k in range(JET_SAMPLES):
            f = random_jet_polynomial(space, names, rng)
            g = random_jet_polynomial(space, names, rng)
            derivative = space.total_derivative(f)
            report.add_part(f"derivative[{k}]", YBReport(relation_name="in-image", holds=im_partial_test(space, derivative)))
            shifted = im_partial_test(space, g) == im_partial_test(space, g + space.total_derivative(f))
            report.add_part(f"shift[{k}]", YBReport(relation_name="shift-invariant", holds=shifted))
        report.add_part("u", YBReport(relation_name="not-in-image", holds=not im_partial_test(space, space.jet("u"))))
        reasoning.append(f"{JET_SAMPLES} random jet polynomials")
        return report
