"""
The G-action on phase space and the Leibniz rule of the Clebsch pairing
"""
from typing import List

import sympy

from src.core.tensor import PolyTensor, Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, YBReport
from src.lie.algebra import LieAlgebra
from src.lie.o_operator import induced_bracket, r_to_operator
from src.lie.representation import Representation
from src.clebsch.phase import PhaseRing, clebsch_map, quadratic_phase_bracket, require_module_over
from src.poisson.action import action_criterion_defect
from src.utils.rationals import to_sympy


def phase_action(rep: Representation, ring: PhaseRing, i: int) -> List[sympy.Expr]:
    """Images of X = e_i: X^∧x^α = Σ χ_{iμ}^α x^μ, X^∧p_α = -Σ χ_{iα}^μ p_μ"""
    d = rep.dim
    images = [sympy.Integer(0)] * (2 * d)
    for (g, a), v in rep.matrix(i).items():
        images[g] += to_sympy(v) * ring.x(a)
        images[d + a] -= to_sympy(v) * ring.p(g)
    return images


def phase_action_defect(algebra: LieAlgebra, rep: Representation, r: Tensor) -> PolyTensor:
    """
    Action criterion on phase coordinates with the quadratic phase bracket and
    the bracket induced on G*

    Raises:
        PreconditionError: If r is not skew
        VerificationFailure: If r fails the O-equation
    """
    poisson = quadratic_phase_bracket(algebra, rep, r)
    operator = r_to_operator(algebra, r)
    dual = induced_bracket(algebra, operator.source, operator)
    actions = [phase_action(rep, poisson.ring, i) for i in range(algebra.dim)]
    return action_criterion_defect(poisson, actions, dual.bracket)


def check_phase_action(
    algebra: LieAlgebra, rep: Representation, r: Tensor, limit: int = DEFAULT_WITNESS_LIMIT
) -> YBReport:
    return YBReport.from_defect("phase-action", phase_action_defect(algebra, rep, r), limit)


def leibniz_defect(algebra: LieAlgebra, rep: Representation) -> PolyTensor:
    """X·(x∇p) - (X.x)∇p - x∇(X·p) at (i, s) for X = e_i"""
    require_module_over(algebra, rep)
    phi = clebsch_map(algebra, rep)
    ring = phi.target
    d, n = rep.dim, algebra.dim

    def pairing(xs, ps) -> List[sympy.Expr]:
        out = [sympy.Integer(0)] * n
        for (s, a, b), v in rep.chi.items():
            out[s] += to_sympy(v) * xs[a] * ps[b]
        return out

    xs = [ring.x(a) for a in range(d)]
    ps = [ring.p(a) for a in range(d)]
    entries = []
    for i in range(n):
        moved = phase_action(rep, ring, i)
        left = [sympy.Integer(0)] * n
        for (a, s, j), v in algebra.c.items():
            if a == i:
                left[s] -= to_sympy(v) * phi.images[j]
        first = pairing(moved[:d], ps)
        second = pairing(xs, moved[d:])
        entries.extend(((i, s), left[s] - first[s] - second[s]) for s in range(n))
    return PolyTensor((n, n), entries)
