"""
Crossed brackets on G ⊕ G*

Basis order: e_0..e_{N-1} of G, then e^0..e^{N-1} of G* at N..2N-1. With
d[a, b, c] = d^{ab}_c the bracket on G*,

    [e_i, e_j] = Σ c_{ij}^k e_k
    [e^a, e^b] = Σ d^{ab}_c e^c
    [e_i, e^b] = Σ_s d^{bs}_i e_s - Σ_s c_{is}^b e^s
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, Optional, Tuple

from src.core.errors import InternalConsistencyError, PreconditionError, ShapeMismatchError
from src.core.linalg import is_skew
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport
from src.lie.algebra import LieAlgebra, antisymmetry_defect, jacobi_defect_tensor
from src.lie.o_operator import form_cocycle_defect, module_bracket, r_to_operator, require_o_operator

PROVENANCES = ("crossed", "semidirect", "symplectic-double")


class DoubleAlgebra:
    """A bracket on a 2N-dimensional carrier split as G ⊕ G*"""

    def __init__(self, half: int, bracket: Tensor, provenance: str, report: Optional[VerificationReport] = None):
        if provenance not in PROVENANCES:
            raise ValueError(f"Unknown provenance: {provenance}")
        if bracket.shape != (2 * half,) * 3:
            raise ShapeMismatchError(f"Double bracket must have shape {(2 * half,) * 3}, got {bracket.shape}")
        if not antisymmetry_defect(bracket).is_zero():
            raise PreconditionError("Double bracket is not antisymmetric")
        self.half = half
        self.bracket = bracket
        self.provenance = provenance
        self.report = report

    @property
    def dim(self) -> int:
        return 2 * self.half

    def jacobi_defect(self) -> Tensor:
        return jacobi_defect_tensor(self.bracket)

    def is_lie(self) -> bool:
        return self.jacobi_defect().is_zero()

    def as_lie_algebra(self, name: str = "") -> LieAlgebra:
        """Raises PreconditionError when the bracket fails Jacobi"""
        names = [f"e{i}" for i in range(self.half)] + [f"e^{i}" for i in range(self.half)]
        return LieAlgebra(self.bracket, names, name=name or self.provenance)

    def __repr__(self) -> str:
        return f"DoubleAlgebra({self.provenance}, dim={self.dim})"


def crossed_tensor(algebra: LieAlgebra, dual: Tensor) -> Tensor:
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (i, j, k), v in algebra.c.items():
        entries[(i, j, k)] += v
        # e_i·e^b = -Σ_s c_{is}^b e^s, with s = j and b = k
        entries[(i, n + k, n + j)] -= v
        entries[(n + k, i, n + j)] += v
    for (a, b, c_), v in dual.items():
        entries[(n + a, n + b, n + c_)] += v
        # -e^a·e_c = Σ_s d^{as}_c e_s, with s = b
        entries[(c_, n + a, b)] += v
        entries[(n + a, c_, b)] -= v
    return Tensor((2 * n,) * 3, entries)


def quadrilinear_defect(algebra: LieAlgebra, dual: Tensor) -> Tensor:
    """
    Q[a, b, i, j] for u = e^a, v = e^b, Y = e_i, Z = e_j:

        ⟨[u,v],[Y,Z]⟩ + ⟨Z·v, u·Y⟩ - ⟨Y·v, u·Z⟩ - ⟨Z·u, v·Y⟩ + ⟨Y·u, v·Z⟩

    It is the pairing of v with the G-part of the Jacobiator on (u, Y, Z).
    """
    n = algebra.dim
    c, d = algebra.c, dual
    # c_by[x][s] lists (b, value) for c_{xs}^b; d_by[a][s] lists (i, value) for d^{as}_i
    c_by: Dict = defaultdict(list)
    for (x, s, b), v in c.items():
        c_by[(x, s)].append((b, v))
    d_by: Dict = defaultdict(list)
    for (a, s, i), v in d.items():
        d_by[(a, s)].append((i, v))
    entries: Dict = defaultdict(Fraction)
    for (a, b, k), v in d.items():
        for (i, j, kk), w in c.items():
            if kk == k:
                entries[(a, b, i, j)] += v * w
    for s in range(n):
        for x in range(n):
            for upper, cv in c_by.get((x, s), ()):
                for a in range(n):
                    for lower, dv in d_by.get((a, s), ()):
                        term = cv * dv
                        # c_{xs}^upper d^{as}_lower
                        entries[(a, upper, lower, x)] += term
                        entries[(a, upper, x, lower)] -= term
                        entries[(upper, a, lower, x)] -= term
                        entries[(upper, a, x, lower)] += term
    return Tensor((n, n, n, n), entries)


def pairing_invariance_defect(double: DoubleAlgebra) -> Tensor:
    """⟨[A,B],C⟩ + ⟨B,[A,C]⟩ for the pairing ⟨e_i, e^a⟩ = δ on basis triples"""
    n, dim = double.half, double.dim

    def partner(x: int) -> int:
        return x + n if x < n else x - n

    entries: Dict = defaultdict(Fraction)
    for (a, b, g), v in double.bracket.items():
        # ⟨[A,B],C⟩ is nonzero only for C = partner(g)
        entries[(a, b, partner(g))] += v
        # ⟨B,[A,C]⟩ with B = partner(g)
        entries[(a, partner(g), b)] += v
    return Tensor((dim, dim, dim), entries)


def crossed_bracket(algebra: LieAlgebra, dual: Tensor, limit: int = DEFAULT_WITNESS_LIMIT) -> DoubleAlgebra:
    """
    Build the crossed bracket and compare the direct Jacobi verdict with the
    quadrilinear criterion

    Raises:
        PreconditionError: If the bracket on G* is not antisymmetric
        InternalConsistencyError: If the two verdicts disagree
    """
    n = algebra.dim
    if dual.shape != (n, n, n):
        raise ShapeMismatchError(f"Bracket on G* must have shape {(n, n, n)}, got {dual.shape}")
    if not antisymmetry_defect(dual).is_zero():
        raise PreconditionError("Bracket on G* is not antisymmetric")
    tensor = crossed_tensor(algebra, dual)
    report = VerificationReport(name="crossed-bracket")
    direct = report.add_part("jacobi", YBReport.from_defect("jacobi", jacobi_defect_tensor(tensor), limit))
    quad = report.add_part(
        "quadrilinear", YBReport.from_defect("quadrilinear", quadrilinear_defect(algebra, dual), limit), required=False
    )
    g_jac = report.add_part(
        "jacobi-g", YBReport.from_defect("jacobi-g", jacobi_defect_tensor(algebra.c), limit), required=False
    )
    dual_jac = report.add_part(
        "jacobi-dual", YBReport.from_defect("jacobi-dual", jacobi_defect_tensor(dual), limit), required=False
    )
    if direct.holds != (quad.holds and g_jac.holds and dual_jac.holds):
        raise InternalConsistencyError("Direct Jacobi verdict and quadrilinear criterion disagree")
    double = DoubleAlgebra(n, tensor, "crossed", report)
    report.add_part(
        "pairing-invariance",
        YBReport.from_defect("pairing-invariance", pairing_invariance_defect(double), limit),
        required=False,
    )
    return double


def canonical_form(half: int) -> Tensor:
    """ω(e^a, e_i) = δ, ω(e_i, e^a) = -δ"""
    return Tensor(
        (2 * half, 2 * half),
        [((half + a, a), 1) for a in range(half)] + [((a, half + a), -1) for a in range(half)],
    )


def symplectic_cocycle_on_crossed(double: DoubleAlgebra, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    """
    Cocycle defect of the canonical form on a crossed Lie algebra

    Raises:
        PreconditionError: If the crossed bracket is not Lie
        InternalConsistencyError: If the verdict differs from "both brackets vanish"
    """
    if double.provenance != "crossed":
        raise PreconditionError(f"Expected a crossed bracket, got {double.provenance}")
    lie = double.as_lie_algebra()
    report = YBReport.from_defect("omega-cocycle", form_cocycle_defect(lie, canonical_form(double.half)), limit)
    n = double.half
    both_abelian = all(
        not (a < n and b < n and g < n) and not (a >= n and b >= n and g >= n)
        for (a, b, g), _ in double.bracket.items()
    )
    if report.holds != both_abelian:
        raise InternalConsistencyError("Cocycle verdict differs from the vanishing of both brackets")
    report.details["both_abelian"] = both_abelian
    return report


def o_induced_double(
    algebra: LieAlgebra, r: Tensor, limit: int = DEFAULT_WITNESS_LIMIT
) -> Tuple[DoubleAlgebra, YBReport]:
    """
    Crossed bracket with the bracket r induces on G*, plus the identity
    u·X = [O(u), X] + O(X·u) on basis pairs (u, X) = (e^b, e_i)

    Raises:
        PreconditionError: If r is not skew
        VerificationFailure: If r fails the O-equation
        InternalConsistencyError: If the identity fails
    """
    if not is_skew(r):
        raise PreconditionError("The O-induced double needs a skew r")
    operator = r_to_operator(algebra, r)
    require_o_operator(operator)
    dual = module_bracket(operator)
    double = crossed_bracket(algebra, dual, limit)
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (b, s, i), v in dual.items():
        # u·X = -Σ_s d^{bs}_i e_s
        entries[(b, i, s)] -= v
    for (x, b), rv in r.items():
        for (xx, i, s), cv in algebra.c.items():
            if xx == x:
                entries[(b, i, s)] -= rv * cv
    for (i, m, b), cv in algebra.c.items():
        for s in range(n):
            rv = r[s, m]
            if rv:
                entries[(b, i, s)] += cv * rv
    identity = YBReport.from_defect("coadjoint-identity", Tensor((n, n, n), entries), limit)
    if not identity.holds:
        raise InternalConsistencyError("u·X = [O(u), X] + O(X·u) fails for a verified skew r")
    return double, identity
