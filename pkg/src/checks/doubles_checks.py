"""
Checks on crossed doubles, semidirect sums and quasiassociative symplectic doubles
"""
from random import Random
from typing import List

from src.checks.base import BaseCheck, generated_input, register
from src.checks.context import RunContext
from src.core.tensor import Tensor
from src.core.verification import VerificationReport, YBReport
from src.doubles.crossed import crossed_bracket, o_induced_double, symplectic_cocycle_on_crossed
from src.doubles.semidirect import (
    coadjoint_on_double_dual,
    o_from_symplectic,
    quasiassociative_check,
    representation_from_quasiassociative,
    semidirect_sum,
    symplectic_cocycle_criterion,
    symplectic_double,
)
from src.lie.algebra import LieAlgebra, abelian, borel_sl2, sl2, two_dim_nonabelian
from src.lie.homomorphisms import random_skew
from src.lie.o_operator import dual_bracket
from src.lie.representation import adjoint_rep, coadjoint_rep

MIN_CROSSED_SAMPLES = 50
DUAL_DENSITY = 0.3
CROSSED_FIXTURES = (borel_sl2, two_dim_nonabelian, lambda: abelian(2), sl2)


def random_dual_bracket(n: int, rng: Random) -> Tensor:
    """Antisymmetric bracket on G* with sparse entries in {-2..2}"""
    entries = []
    for a in range(n):
        for b in range(a + 1, n):
            for g in range(n):
                if rng.random() < DUAL_DENSITY:
                    v = rng.randint(-2, 2)
                    entries += [((a, b, g), v), ((b, a, g), -v)]
    return Tensor((n, n, n), entries)


def _sample_dual(algebra: LieAlgebra, rng: Random) -> Tensor:
    kind = rng.choice(["random", "random", "zero", "r-induced"])
    if kind == "zero":
        return Tensor.zeros((algebra.dim,) * 3)
    if kind == "r-induced":
        return dual_bracket(algebra, random_skew(algebra.dim, rng))
    return random_dual_bracket(algebra.dim, rng)


def _algebras(context: RunContext) -> List[LieAlgebra]:
    fixtures = [build() for build in CROSSED_FIXTURES]
    if context.algebra is not None:
        fixtures.insert(0, context.algebra)
    return fixtures


@register
class CrossedRandomCheck(BaseCheck):
    name = "crossed-random"
    title = "Direct Jacobi of the crossed bracket agrees with the quadrilinear criterion"
    module = "doubles"
    formula = "[x + ξ, y + η] = [x,y] + ξ·y - η·x + [ξ,η]_* + x·η - y·ξ is Lie ⇔ both brackets Lie and the quadrilinear relation holds"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        rng = context.rng(self.name)
        algebras = _algebras(context)
        report = VerificationReport(name=self.name)
        trials = max(MIN_CROSSED_SAMPLES, context.settings.random_trials)
        lie = 0
        for k in range(trials):
            algebra = algebras[k % len(algebras)]
            # raises when the two verdicts disagree
            with generated_input(f"{algebra.name}[{k}]"):
                double = crossed_bracket(algebra, _sample_dual(algebra, rng), context.limit)
            part = report.add_part(f"{algebra.name}[{k}]", double.report.parts["jacobi"], required=False)
            lie += part.holds
        reasoning.append(f"{lie} of {trials} crossed brackets were Lie; verdicts agreed throughout")
        report.details.update(samples=trials, lie=lie)
        return report


@register
class OmegaOnCrossedCheck(BaseCheck):
    name = "omega-on-crossed"
    title = "The canonical form is a cocycle on a crossed Lie algebra only when both brackets vanish"
    module = "doubles"
    formula = "ω(x + ξ, y + η) = ξ(y) - η(x) is a 2-cocycle ⇔ [,] = 0 on G and on G*"

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        rng = context.rng(self.name)
        report = VerificationReport(name=self.name)
        for k, algebra in enumerate(_algebras(context)):
            duals = [Tensor.zeros((algebra.dim,) * 3), dual_bracket(algebra, random_skew(algebra.dim, rng))]
            for j, dual in enumerate(duals):
                double = crossed_bracket(algebra, dual, context.limit)
                if not double.is_lie():
                    reasoning.append(f"{algebra.name} sample {j}: crossed bracket not Lie, skipped")
                    continue
                # raises when the verdict differs from "both brackets vanish"
                cocycle = symplectic_cocycle_on_crossed(double, context.limit)
                report.add_part(f"{algebra.name}[{k}.{j}]", cocycle, required=False)
        reasoning.append(f"Cocycle verdicts matched on {len(report.parts)} crossed algebras")
        return report


@register
class OInducedDoubleCheck(BaseCheck):
    name = "o-induced-double"
    title = "Crossed bracket with the r-induced bracket on G* is Lie and satisfies u·X = [O(u), X] + O(X·u)"
    module = "doubles"
    reference = "Doubles: Mixed bracket"
    formula = "u·X = [O(u), X] + O(X·u); ⟨,⟩ invariant on G + G*"
    requires = ("lie_algebra", "r")
    prerequisites = ("o-operator",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        double, identity = o_induced_double(context.algebra, context.dual_r, context.limit)
        report = VerificationReport(name=self.name)
        report.add_part("jacobi", double.report.parts["jacobi"])
        report.add_part("coadjoint-identity", identity)
        report.add_part("pairing-invariance", double.report.parts["pairing-invariance"], required=False)
        reasoning.append(f"Double of dimension {double.dim}")
        return report


@register
class SemidirectCocycleCheck(BaseCheck):
    name = "semidirect-cocycle"
    title = "Canonical form on G ⋉ G* is a cocycle exactly when ρ^d(X)Y - ρ^d(Y)X = [X, Y]"
    module = "doubles"
    formula = "ω cocycle on G ⋉_ρ G* ⇔ ρ^d(X)Y - ρ^d(Y)X = [X, Y]"
    requires = ("lie_algebra",)
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        algebra = context.algebra
        modules = [adjoint_rep(algebra), coadjoint_rep(algebra)]
        if context.rep is not None and context.rep.dim == algebra.dim:
            modules.append(context.rep)
        report = VerificationReport(name=self.name)
        for rep in modules:
            # raises when the two verdicts disagree
            criterion = symplectic_cocycle_criterion(algebra, rep, context.limit)
            report.add_part(rep.name, criterion.parts["omega-cocycle"], required=False)
            reasoning.append(f"{rep.name}: cocycle {criterion.is_valid}")
        return report


@register
class QuasiassociativeCheck(BaseCheck):
    name = "quasiassociative"
    title = "The product's associator is symmetric in its first two arguments"
    module = "doubles"
    formula = "(xy)z - x(yz) = (yx)z - y(xz)"
    requires = ("product",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        reasoning.append(f"Product {context.product.name} of dimension {context.product.dim}")
        return quasiassociative_check(context.product, context.limit)


@register
class SymplecticDoubleCheck(BaseCheck):
    name = "symplectic-double"
    title = "T*A is quasiassociative and its O-operator gives the self-duality isomorphism"
    module = "doubles"
    formula = "(a, a*)(b, b*) = (ab, a·b*); Lie(T*A) = Lie(A) ⋉ Lie(A)*; O(α, a) = (a, -α) is an isomorphism G1* → G1"
    requires = ("product",)
    prerequisites = ("quasiassociative",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        product = context.product
        double_product, double = symplectic_double(product, context.limit)
        report = VerificationReport(name=self.name)
        report.add_part("double-quasiassociative", quasiassociative_check(double_product, context.limit).parts["quasiassociative"])
        report.add_part("double-jacobi", double.report.parts["jacobi"])
        symplectic = o_from_symplectic(product.commutator(), representation_from_quasiassociative(product), context.limit)
        for key, part in symplectic.report.parts.items():
            report.add_part(key, part)
        reasoning.append(f"Double of dimension {double.dim}")
        return report


@register
class CoadjointDoubleDualCheck(BaseCheck):
    name = "coadjoint-double-dual"
    title = "Coadjoint action on the dual of a semidirect double matches its defining pairing"
    module = "doubles"
    formula = "⟨X·ξ, Y⟩ = -⟨ξ, [X, Y]⟩ on (G ⋉ G*)*"
    requires = ("lie_algebra",)
    prerequisites = ("jacobi",)

    def evaluate(self, context: RunContext, reasoning: List[str]) -> VerificationReport:
        doubles = {"semidirect-coadjoint": semidirect_sum(context.algebra, coadjoint_rep(context.algebra), context.limit)}
        if context.product is not None:
            doubles["symplectic-double"] = symplectic_double(context.product, context.limit)[1]
        report = VerificationReport(name=self.name)
        for key, double in doubles.items():
            _, pairing = coadjoint_on_double_dual(double, context.limit)
            report.add_part(key, pairing)
        reasoning.append(f"Checked {', '.join(doubles)}")
        return report
