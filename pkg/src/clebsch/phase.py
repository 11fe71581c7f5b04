"""
Phase space V ⊕ V*, Clebsch maps into C_{G*} and the brackets on phase space

Phase coordinates are ordered x^0..x^{d-1}, p_0..p_{d-1}; the module action
is read from a Representation with chi[s, α, β] = χ_{sα}^β.
"""
from typing import List, Optional, Sequence

import sympy

from src.core.errors import InternalConsistencyError, PreconditionError, ShapeMismatchError
from src.core.linalg import is_skew
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport
from src.lie.algebra import LieAlgebra
from src.lie.o_operator import r_to_operator, require_o_operator
from src.lie.representation import Representation, direct_sum, dual_of
from src.poisson.maps import RingMap, check_hamiltonian_map
from src.poisson.ring import PoissonStructure, PolyRing
from src.poisson.structures import linear_poisson, quadratic_poisson
from src.utils.rationals import to_sympy


class PhaseRing(PolyRing):
    """C_M = Fun(V ⊕ V*) in the variables x0.., p0.."""

    def __init__(self, dim_v: int, x_prefix: str = "x", p_prefix: str = "p"):
        if dim_v <= 0:
            raise ShapeMismatchError(f"Phase space needs dim V > 0, got {dim_v}")
        self.dim_v = dim_v
        super().__init__([f"{x_prefix}{a}" for a in range(dim_v)] + [f"{p_prefix}{a}" for a in range(dim_v)])

    def x(self, a: int) -> sympy.Symbol:
        return self.symbols[a]

    def p(self, a: int) -> sympy.Symbol:
        return self.symbols[self.dim_v + a]


class ClebschMap(RingMap):
    """Φ(u_s) = Σ χ_{sα}^β x^α p_β"""

    def __init__(self, rep: Representation, source: PolyRing, target: PhaseRing, images: Sequence):
        super().__init__(source, target, images, name=f"clebsch({rep.name})")
        self.rep = rep


def require_module_over(algebra: LieAlgebra, rep: Representation) -> None:
    if rep.host.dim != algebra.dim:
        raise ShapeMismatchError("Representation is not a module over the given algebra")
    if rep.host is not algebra and rep.host.c != algebra.c:
        raise PreconditionError(f"{rep.name} is a module over a different algebra")


def clebsch_map(
    algebra: LieAlgebra,
    rep: Representation,
    source: Optional[PolyRing] = None,
    target: Optional[PhaseRing] = None,
) -> ClebschMap:
    require_module_over(algebra, rep)
    source = source or PolyRing.dual_coordinates(algebra.dim)
    target = target or PhaseRing(rep.dim)
    if target.dim_v != rep.dim:
        raise ShapeMismatchError(f"Phase ring has dim V = {target.dim_v}, module has {rep.dim}")
    images: List[sympy.Expr] = [sympy.Integer(0)] * algebra.dim
    for (s, a, b), v in rep.chi.items():
        images[s] += to_sympy(v) * target.x(a) * target.p(b)
    return ClebschMap(rep, source, target, images)


def symplectic_bracket(dim_v: int, ring: Optional[PhaseRing] = None) -> PoissonStructure:
    """{x^α, p_β} = δ^α_β"""
    ring = ring or PhaseRing(dim_v)
    n = 2 * dim_v
    pi = [[0] * n for _ in range(n)]
    for a in range(dim_v):
        pi[a][dim_v + a] = 1
        pi[dim_v + a][a] = -1
    return PoissonStructure(ring, pi, name="symplectic")


def _require_verified_skew(algebra: LieAlgebra, r: Tensor) -> None:
    if not is_skew(r):
        raise PreconditionError("Phase-space bracket needs a skew r")
    require_o_operator(r_to_operator(algebra, r))


def _quadratic_form(r: Tensor, left: Tensor, right: Tensor, vars_left, vars_right, alpha: int, beta: int) -> sympy.Expr:
    """Σ r^{st} left_{sμ}^α right_{tν}^β w_μ w'_ν"""
    total = sympy.Integer(0)
    lefts = [(s, mu, v) for (s, mu, a), v in left.items() if a == alpha]
    rights = [(t, nu, w) for (t, nu, b), w in right.items() if b == beta]
    for s, mu, v in lefts:
        for t, nu, w in rights:
            coeff = r[s, t]
            if coeff:
                total += to_sympy(coeff * v * w) * vars_left[mu] * vars_right[nu]
    return sympy.expand(total)


def phase_entries(rep: Representation, r: Tensor, xs: Sequence, ps: Sequence) -> List[List[sympy.Expr]]:
    """The four coordinate blocks of the quadratic bracket on V ⊕ V*"""
    d = rep.dim
    chi = rep.chi
    # chi_t[s, μ, α] = χ_{sα}^μ
    chi_t = chi.permute_axes((0, 2, 1))
    pi = [[sympy.Integer(0)] * (2 * d) for _ in range(2 * d)]
    for a in range(d):
        for b in range(d):
            pi[a][b] = _quadratic_form(r, chi, chi, xs, xs, a, b)
            pi[d + a][d + b] = _quadratic_form(r, chi_t, chi_t, ps, ps, a, b)
            p_x = -_quadratic_form(r, chi_t, chi, ps, xs, a, b)
            pi[d + a][b] = p_x
            pi[b][d + a] = -p_x
    return pi


def quadratic_phase_bracket(
    algebra: LieAlgebra, rep: Representation, r: Tensor, ring: Optional[PhaseRing] = None
) -> PoissonStructure:
    """
    Quadratic bracket on V ⊕ V* induced by a verified skew r

    Raises:
        PreconditionError: If r is not skew
        VerificationFailure: If r fails the O-equation
    """
    require_module_over(algebra, rep)
    _require_verified_skew(algebra, r)
    ring = ring or PhaseRing(rep.dim)
    pi = phase_entries(rep, r, ring.symbols[: rep.dim], ring.symbols[rep.dim:])
    return PoissonStructure(ring, pi, name="quadratic-phase")


def dual_representation(rep: Representation) -> Representation:
    """χ^d(X) = -χ(X)ᵀ; the homomorphism property is re-checked on construction"""
    return dual_of(rep)


def swapped_bracket(algebra: LieAlgebra, rep: Representation, r: Tensor, ring: Optional[PhaseRing] = None) -> PoissonStructure:
    """
    The phase bracket of χ^d with the roles of x and p exchanged, rewritten in
    the original coordinates

    Raises:
        InternalConsistencyError: If it differs from the bracket of χ
    """
    original = quadratic_phase_bracket(algebra, rep, r, ring)
    ring = original.ring
    d = rep.dim
    swapped = phase_entries(dual_representation(rep), r, ring.symbols[d:], ring.symbols[:d])
    # swapped is indexed (p-block, x-block); move back to (x, p)
    order = [d + a for a in range(d)] + list(range(d))
    pi = [[sympy.Integer(0)] * (2 * d) for _ in range(2 * d)]
    for a in range(2 * d):
        for b in range(2 * d):
            pi[order[a]][order[b]] = swapped[a][b]
    if [[sympy.expand(v) for v in row] for row in pi] != original.pi:
        raise InternalConsistencyError("Exchanging x and p with the dual module changed the phase bracket")
    return PoissonStructure(ring, pi, name="swapped-phase")


def dual_sum_bracket(algebra: LieAlgebra, rep: Representation, r: Tensor, ring: Optional[PhaseRing] = None) -> PoissonStructure:
    """
    The x-block formula applied to χ ⊕ χ^d on all phase coordinates

    Raises:
        InternalConsistencyError: If it differs from the four-block bracket
    """
    original = quadratic_phase_bracket(algebra, rep, r, ring)
    ring = original.ring
    total = direct_sum(rep, dual_representation(rep))
    n = ring.dim
    coords = ring.symbols
    pi = [[_quadratic_form(r, total.chi, total.chi, coords, coords, a, b) for b in range(n)] for a in range(n)]
    if [[sympy.expand(v) for v in row] for row in pi] != original.pi:
        raise InternalConsistencyError("Single-formula bracket on V ⊕ V* differs from the block formulas")
    return PoissonStructure(ring, pi, name="dual-sum-phase")


def clebsch_hamiltonian_report(
    algebra: LieAlgebra,
    rep: Representation,
    r: Optional[Tensor] = None,
    limit: int = DEFAULT_WITNESS_LIMIT,
) -> VerificationReport:
    """Φ is Hamiltonian from the linear bracket to the symplectic one, and
    from the quadratic bracket of r to the quadratic phase bracket"""
    phi = clebsch_map(algebra, rep)
    report = VerificationReport(name="clebsch-hamiltonian")
    report.add_part(
        "linear-to-symplectic",
        check_hamiltonian_map(phi, linear_poisson(algebra, phi.source), symplectic_bracket(rep.dim, phi.target), limit),
    )
    if r is not None:
        report.add_part(
            "quadratic-to-phase",
            check_hamiltonian_map(
                phi,
                quadratic_poisson(algebra, r, phi.source),
                quadratic_phase_bracket(algebra, rep, r, phi.target),
                limit,
            ),
        )
    return report
