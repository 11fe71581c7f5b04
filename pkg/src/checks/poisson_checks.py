"""
Checks on polynomial Poisson brackets over G*
"""
from fractions import Fraction
from typing import List

from src.checks.base import BaseCheck, generated_input, register
from src.checks.context import RunContext
from src.core.errors import VerificationFailure
from src.core.linalg import is_invertible
from src.core.tensor import PolyTensor
from src.core.verification import VerificationReport, YBReport
from src.lie.homomorphisms import identity_homomorphism, random_homomorphism
from src.poisson.action import check_infinitesimal_action
from src.poisson.maps import naturality_report
from src.poisson.ring import casimir_defect, compatibility_defect, full_jacobi, jacobi_defect, random_polynomial
from src.poisson.structures import (
    affine_poisson,
    coadjoint_invariant_defect,
    coboundary,
    constant_poisson,
    linear_poisson,
    quadratic_casimir,
    quadratic_poisson,
    variational_commutator_defect,
)

CONSTANT_EPS = 1
POLYNOMIAL_SAMPLES = 3


def _jacobi_report(name: str, poisson, context: RunContext, rng) -> VerificationReport:
    report = VerificationReport(name=name)
    report.add_part("coordinates", YBReport.from_defect("jacobi", jacobi_defect(poisson), context.limit))
    report.add_part("antisymmetry", YBReport.from_defect("antisymmetry", poisson.antisymmetry_defect(), context.limit))
    values = [
        full_jacobi(poisson, *(random_polynomial(poisson.ring, rng) for _ in range(3)))
        for _ in range(POLYNOMIAL_SAMPLES)
    ]
    report.add_part(
        "polynomials",
        YBReport.from_defect("jacobi-polynomials", PolyTensor((len(values),), (((k,), v) for k, v in enumerate(values))), context.limit),
    )
    return report


def _random_xi(n: int, rng) -> List[int]:
    return [rng.randint(-2, 2) for _ in range(n)]


@register
class LinearPoissonCheck(BaseCheck):
    name = "linear-poisson"
    title = "The linear bracket on G* is Poisson"
    module = "poisson_poly"
    reference = "Poisson Brackets on G*: Linear"
    formula = "{u_i, u_j} = Σ_k c_ij^k u_k satisfies Jacobi"
    requires = ("lie_algebra",)
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        reasoning.append("Jacobi on coordinates and on random polynomials")
        return _jacobi_report(self.name, linear_poisson(context.algebra), context, context.rng(self.name))


@register
class QuadraticPoissonCheck(BaseCheck):
    name = "quadratic-poisson"
    title = "The quadratic bracket of a verified skew r is Poisson"
    module = "poisson_poly"
    reference = "Poisson Brackets on G*: Quadratic"
    formula = "{u_i, u_j} = ⟨e_i·u, O(e_j·u)⟩ = Σ r^st c_is^k c_jt^l u_k u_l satisfies Jacobi"
    requires = ("lie_algebra", "r")
    prerequisites = ("o-operator",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        poisson = quadratic_poisson(context.algebra, context.dual_r)
        reasoning.append("Quadratic entries agree with the pairing formula")
        return _jacobi_report(self.name, poisson, context, context.rng(self.name))


@register
class ConstantPoissonCheck(BaseCheck):
    name = "constant-poisson"
    title = "The constant bracket ε O⁻¹ is Poisson when O is invertible"
    module = "poisson_poly"
    formula = "{u_i, u_j} = ε (O⁻¹)_ji"
    requires = ("lie_algebra", "r")
    prerequisites = ("o-operator",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        if not is_invertible(context.dual_r):
            raise VerificationFailure("O is degenerate; there is no constant bracket")
        reasoning.append(f"ε = {CONSTANT_EPS}")
        poisson = constant_poisson(context.algebra, context.dual_r, CONSTANT_EPS)
        return _jacobi_report(self.name, poisson, context, context.rng(self.name))


@register
class PoissonCompatibilityCheck(BaseCheck):
    name = "poisson-compatibility"
    title = "Linear, quadratic and (when O is invertible) constant brackets are pairwise compatible"
    module = "poisson_poly"
    formula = "P1 + λ P2 is Poisson for all λ, tested by the mixed Jacobi defect"
    requires = ("lie_algebra", "r")
    prerequisites = ("linear-poisson", "quadratic-poisson")

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        algebra, r = context.algebra, context.dual_r
        brackets = {"linear": linear_poisson(algebra), "quadratic": quadratic_poisson(algebra, r)}
        if is_invertible(r):
            brackets["constant"] = constant_poisson(algebra, r, CONSTANT_EPS)
        else:
            reasoning.append("O is degenerate: no constant bracket")
        report = VerificationReport(name=self.name)
        names = list(brackets)
        for i, first in enumerate(names):
            for second in names[i + 1:]:
                defect = compatibility_defect(brackets[first], brackets[second])
                report.add_part(f"{first}-{second}", YBReport.from_defect("compatibility", defect, context.limit))
        return report


@register
class CasimirsCheck(BaseCheck):
    name = "casimirs"
    title = "The Killing Casimir is coadjoint invariant and annihilates the linear and quadratic brackets"
    module = "poisson_poly"
    reference = "Poisson Brackets on G*: Killing Casimir"
    formula = "C = Σ (K⁻¹)^ij u_i u_j; {C, u_i} = 0; (∇C)·u = 0"
    requires = ("lie_algebra",)
    prerequisites = ("linear-poisson",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        algebra = context.algebra
        casimir = quadratic_casimir(algebra)
        reasoning.append(f"C = {casimir}")
        report = VerificationReport(name=self.name)
        report.add_part("coadjoint-invariant", YBReport.from_defect("invariant", coadjoint_invariant_defect(algebra, casimir), context.limit))
        report.add_part("linear", YBReport.from_defect("casimir", casimir_defect(linear_poisson(algebra), casimir), context.limit))
        if context.dual_r is not None:
            quadratic = quadratic_poisson(algebra, context.dual_r)
            report.add_part("quadratic", YBReport.from_defect("casimir", casimir_defect(quadratic, casimir), context.limit))
        report.details["casimir"] = str(casimir)
        return report


@register
class InfinitesimalActionCheck(BaseCheck):
    name = "infinitesimal-action"
    title = "The coadjoint action is Poisson in linear, affine and quadratic modes"
    module = "poisson_poly"
    formula = "X^∧{w_a, w_b} - {X^∧w_a, w_b} - {w_a, X^∧w_b} = Σ [e_s, e_t]_*(X) e_s^∧(w_a) e_t^∧(w_b)"
    requires = ("lie_algebra",)
    prerequisites = ("linear-poisson",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        algebra = context.algebra
        rng = context.rng(self.name)
        report = VerificationReport(name=self.name)
        report.add_part("linear", check_infinitesimal_action(algebra, "linear", limit=context.limit))
        b = coboundary(algebra, _random_xi(algebra.dim, rng))
        report.add_part("affine", check_infinitesimal_action(algebra, "affine", b=b, limit=context.limit))
        if context.dual_r is not None:
            report.add_part("quadratic", check_infinitesimal_action(algebra, "quadratic", r=context.dual_r, limit=context.limit))
        reasoning.append(f"Modes checked: {', '.join(report.parts)}")
        return report


@register
class NaturalMapCheck(BaseCheck):
    name = "natural-map"
    title = "u ↦ φᵀ(q) is Hamiltonian for the linear and quadratic brackets"
    module = "poisson_poly"
    formula = "Φ{H, F}_G = {ΦH, ΦF}_H with r_H = φ r_G φᵀ"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        rng = context.rng(self.name)
        report = VerificationReport(name=self.name)
        for k in range(context.settings.random_trials):
            sample = random_homomorphism(rng)
            with generated_input(f"{sample.label}[{k}]"):
                natural = naturality_report(sample.phi, sample.operator, sample.target, context.limit)
            for key, part in natural.parts.items():
                report.add_part(f"{sample.label}[{k}] {key}", part)
        if context.dual_r is not None:
            natural = naturality_report(identity_homomorphism(context.algebra), context.r_operator, context.algebra, context.limit)
            for key, part in natural.parts.items():
                report.add_part(f"manifest {key}", part)
        reasoning.append(f"{len(report.parts)} Hamiltonian-map checks")
        return report


@register
class AffinePoissonCheck(BaseCheck):
    name = "affine-poisson"
    title = "Linear bracket plus a coboundary cocycle is Poisson and compatible with the linear bracket"
    module = "poisson_poly"
    formula = "{u_i, u_j} = Σ_k c_ij^k u_k + b_ij with b_ij = ⟨ξ, [e_i, e_j]⟩"
    requires = ("lie_algebra",)
    prerequisites = ("linear-poisson",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        algebra = context.algebra
        rng = context.rng(self.name)
        xi = _random_xi(algebra.dim, rng)
        reasoning.append(f"ξ = {xi}")
        poisson = affine_poisson(algebra, coboundary(algebra, xi))
        report = _jacobi_report(self.name, poisson, context, rng)
        report.add_part(
            "compatible-linear",
            YBReport.from_defect("compatibility", compatibility_defect(poisson, linear_poisson(algebra)), context.limit),
        )
        return report


@register
class VariationalCommutatorCheck(BaseCheck):
    name = "variational-commutator"
    title = "∇ commutes with the coadjoint derivation up to the bracket"
    module = "poisson_poly"
    formula = "∇(X^∧H) = [∇H, X] + X^∧(∇H)"
    requires = ("lie_algebra",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        algebra = context.algebra
        rng = context.rng(self.name)
        ring = linear_poisson(algebra).ring
        report = VerificationReport(name=self.name)
        for k in range(POLYNOMIAL_SAMPLES):
            h = random_polynomial(ring, rng)
            x = [Fraction(rng.randint(-2, 2)) for _ in range(algebra.dim)]
            report.add_part(
                f"sample[{k}]",
                YBReport.from_defect("variational-commutator", variational_commutator_defect(algebra, h, x, ring), context.limit),
            )
        reasoning.append(f"{POLYNOMIAL_SAMPLES} random H and X")
        return report
