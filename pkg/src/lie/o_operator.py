"""
O-operators, classical r-matrices and the structures they induce

An O-operator from a module U to G is stored as a matrix with
O(ℓ_a) = Σ_s matrix[s, a] e_s. On U = G* with the coadjoint action, the
matrix is exactly r^{sa}: O(e^a) = Σ_s r^{sa} e_s.
"""
from collections import defaultdict
from fractions import Fraction
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.core.errors import (
    InternalConsistencyError,
    PreconditionError,
    ShapeMismatchError,
    VerificationFailure,
)
from src.core.linalg import inverse, is_invertible, is_skew, kron, transpose
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport
from src.lie.algebra import LieAlgebra, jacobi_defect_tensor, sl2
from src.lie.representation import Representation, adjoint_rep, coadjoint_rep, fundamental_sl2
from src.yang_baxter.relations import classical_defect


class OOperator:
    """Linear map from a module of `target` into `target`"""

    def __init__(self, source: Representation, target: LieAlgebra, matrix: Tensor):
        if source.host.dim != target.dim:
            raise ShapeMismatchError("Source module must be a module over the target algebra")
        if matrix.shape != (target.dim, source.dim):
            raise ShapeMismatchError(
                f"O-operator matrix must have shape {(target.dim, source.dim)}, got {matrix.shape}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    def apply(self, v: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.target.dim
        for (s, a), value in self.matrix.items():
            out[s] += value * v[a]
        return out

    def column(self, a: int) -> List[Fraction]:
        return [self.matrix[s, a] for s in range(self.target.dim)]

    def is_skew(self) -> bool:
        """r^{ij} = -r^{ji}; only meaningful on G*"""
        if self.matrix.shape[0] != self.matrix.shape[1]:
            return False
        return is_skew(self.matrix)

    def __repr__(self) -> str:
        return f"OOperator({self.source.name} -> {self.target.name})"


class AlgebraOnModule(BaseModel):
    """The skew bracket [u, v] = O(u)·v - O(v)·u on the module"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    carrier_dim: int = Field(description="Dimension of the module U")
    bracket: Tensor = Field(description="bracket[a, b, g] = coefficient of ℓ_g in [ℓ_a, ℓ_b]")

    def as_lie_algebra(self, name: str = "induced", verify: bool = True) -> LieAlgebra:
        return LieAlgebra(self.bracket, name=name, verify=verify)


def r_to_operator(algebra: LieAlgebra, r: Tensor) -> OOperator:
    if r.shape != (algebra.dim, algebra.dim):
        raise ShapeMismatchError(f"r must be {algebra.dim}x{algebra.dim}, got {r.shape}")
    return OOperator(coadjoint_rep(algebra), algebra, r)


def operator_to_r(operator: OOperator) -> Tensor:
    if operator.matrix.shape[0] != operator.matrix.shape[1]:
        raise ShapeMismatchError("Only operators G* -> G correspond to elements of G⊗G")
    return operator.matrix


def module_bracket(operator: OOperator) -> Tensor:
    """D[a, b, g] = (O(ℓ_a)·ℓ_b - O(ℓ_b)·ℓ_a)_g"""
    chi = operator.source.chi
    d = operator.source.dim
    by_algebra: Dict[int, List] = defaultdict(list)
    for (s, b, g), v in chi.items():
        by_algebra[s].append((b, g, v))
    entries: Dict = defaultdict(Fraction)
    for (s, a), o in operator.matrix.items():
        for b, g, v in by_algebra.get(s, ()):
            entries[(a, b, g)] += o * v
            entries[(b, a, g)] -= o * v
    return Tensor((d, d, d), entries)


def o_equation_defect(algebra: LieAlgebra, module: Representation, operator: OOperator) -> Tensor:
    """
    E[a, b, k] = (O(O(ℓ_a)·ℓ_b - O(ℓ_b)·ℓ_a) - [O(ℓ_a), O(ℓ_b)])_k

    Raises:
        ShapeMismatchError: If the operator does not go from `module` to `algebra`
    """
    if operator.source.dim != module.dim or operator.target.dim != algebra.dim:
        raise ShapeMismatchError("Operator does not map the given module into the given algebra")
    bracket = module_bracket(operator)
    n, d = algebra.dim, module.dim
    entries: Dict = defaultdict(Fraction)
    for (a, b, g), v in bracket.items():
        for k in range(n):
            o = operator.matrix[k, g]
            if o:
                entries[(a, b, k)] += o * v
    columns = [operator.column(a) for a in range(d)]
    for a, b in product(range(d), repeat=2):
        for k, v in enumerate(algebra.bracket(columns[a], columns[b])):
            if v:
                entries[(a, b, k)] -= v
    return Tensor((d, d, n), entries)


def check_o_operator(operator: OOperator, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    return YBReport.from_defect(
        "o-equation", o_equation_defect(operator.target, operator.source, operator), limit
    )


def require_o_operator(operator: OOperator) -> None:
    if not o_equation_defect(operator.target, operator.source, operator).is_zero():
        raise VerificationFailure(f"{operator!r} does not satisfy the O-equation")


def induced_bracket(algebra: LieAlgebra, module: Representation, operator: OOperator) -> AlgebraOnModule:
    """
    The Lie bracket a verified O-operator induces on its module

    Raises:
        VerificationFailure: If the O-equation defect is nonzero
        InternalConsistencyError: If the induced bracket fails Jacobi
    """
    if not o_equation_defect(algebra, module, operator).is_zero():
        raise VerificationFailure("O-equation defect is nonzero; no induced Lie bracket")
    bracket = module_bracket(operator)
    if not jacobi_defect_tensor(bracket).is_zero():
        raise InternalConsistencyError("Bracket induced by a verified O-operator fails Jacobi")
    return AlgebraOnModule(carrier_dim=module.dim, bracket=bracket)


def dual_bracket(algebra: LieAlgebra, r: Tensor) -> Tensor:
    """[e^a, e^b] = O(e^a)·e^b - O(e^b)·e^a on G*, with no verification"""
    return module_bracket(r_to_operator(algebra, r))


def cybe_defect(algebra: LieAlgebra, r: Tensor) -> Tensor:
    """
    Components of c(r) = [r12, r13] + [r12, r23] + [r13, r23] in G⊗G⊗G

    Raises:
        PreconditionError: If r is not skew
    """
    n = algebra.dim
    if r.shape != (n, n):
        raise ShapeMismatchError(f"r must be {n}x{n}, got {r.shape}")
    if not is_skew(r):
        raise PreconditionError("r must be skew: r^{ij} = -r^{ji}")
    rows: Dict[int, List] = defaultdict(list)
    cols: Dict[int, List] = defaultdict(list)
    for (i, j), v in r.items():
        rows[i].append((j, v))
        cols[j].append((i, v))
    entries: Dict = defaultdict(Fraction)
    for (x, y, k), cv in algebra.c.items():
        # [r12, r13]: Σ r^{xb} r^{yc} c_{xy}^a at (a, b, c) = (k, b, c)
        for b, rb in rows[x]:
            for c_, rc in rows[y]:
                entries[(k, b, c_)] += cv * rb * rc
        # [r12, r23]: Σ r^{ax} r^{yc} c_{xy}^b
        for a, ra in cols[x]:
            for c_, rc in rows[y]:
                entries[(a, k, c_)] += cv * ra * rc
        # [r13, r23]: Σ r^{ax} r^{by} c_{xy}^c
        for a, ra in cols[x]:
            for b, rb in cols[y]:
                entries[(a, b, k)] += cv * ra * rb
    return Tensor((n, n, n), entries)


def check_cybe(algebra: LieAlgebra, r: Tensor, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    return YBReport.from_defect("cybe", cybe_defect(algebra, r), limit)


def represent_two_tensor(rep: Representation, r: Tensor) -> Tensor:
    """Σ r^{xy} ρ(e_x) ⊗ ρ(e_y) as an operator on V⊗V"""
    d = rep.dim
    out = Tensor.zeros((d * d, d * d))
    for (x, y), v in r.items():
        out = out + kron(rep.matrix(x), rep.matrix(y)).scale(v)
    return out


def represent_three_tensor(rep: Representation, t: Tensor) -> Tensor:
    """Σ t^{abc} ρ(e_a) ⊗ ρ(e_b) ⊗ ρ(e_c) as an operator on V⊗V⊗V"""
    d = rep.dim
    out = Tensor.zeros((d ** 3, d ** 3))
    for (a, b, c), v in t.items():
        out = out + kron(kron(rep.matrix(a), rep.matrix(b)), rep.matrix(c)).scale(v)
    return out


def cybe_matches_matrix_level(algebra: LieAlgebra, r: Tensor, rep: Optional[Representation] = None) -> bool:
    """c(r) pushed through a representation equals the End-level c of ρ⊗ρ(r)"""
    rep = rep or adjoint_rep(algebra)
    return represent_three_tensor(rep, cybe_defect(algebra, r)) == classical_defect(
        represent_two_tensor(rep, r)
    )


def induced_cocycle_defect(algebra: LieAlgebra, operator: OOperator) -> Tensor:
    """Ω([u,v],w) + c.p. on G* with Ω(e^a, e^b) = ⟨e^a, O(e^b)⟩ = r^{ab}"""
    n = algebra.dim
    d = module_bracket(operator)
    omega = operator.matrix
    entries: Dict = defaultdict(Fraction)
    for (a, b, x), v in d.items():
        for c_ in range(n):
            w = omega[x, c_]
            if w:
                entries[(a, b, c_)] += v * w
                entries[(c_, a, b)] += v * w
                entries[(b, c_, a)] += v * w
    return Tensor((n, n, n), entries)


def induced_cocycle_check(algebra: LieAlgebra, operator: OOperator, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    """
    Raises:
        PreconditionError: If O is not skew
        VerificationFailure: If O fails the O-equation
    """
    if not operator.is_skew():
        raise PreconditionError("Induced cocycle needs a skew operator on G*")
    require_o_operator(operator)
    return YBReport.from_defect("dual-cocycle", induced_cocycle_defect(algebra, operator), limit)


def drinfeld_form(r: Tensor) -> Tensor:
    """ω(e_a, e_b) = ⟨O⁻¹(e_a), e_b⟩ = (O⁻¹)[b, a]"""
    return transpose(inverse(r))


def form_cocycle_defect(algebra: LieAlgebra, omega: Tensor) -> Tensor:
    """ω([x,y],z) + c.p. on basis triples of G"""
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (a, b, k), v in algebra.c.items():
        for c_ in range(n):
            w = omega[k, c_]
            if w:
                entries[(a, b, c_)] += v * w
                entries[(c_, a, b)] += v * w
                entries[(b, c_, a)] += v * w
    return Tensor((n, n, n), entries)


def drinfeld_equivalence(algebra: LieAlgebra, r: Tensor, limit: int = DEFAULT_WITNESS_LIMIT) -> VerificationReport:
    """
    For skew nondegenerate r: the form ω = ⟨O⁻¹ x, y⟩ is a 2-cocycle exactly
    when c(r) = 0, and ⟨w, [O u, O v] - O(O(u)·v - O(v)·u)⟩ = ⟨u⊗v⊗w, c(r)⟩

    Raises:
        PreconditionError: If r is not skew or is degenerate
    """
    if not is_skew(r):
        raise PreconditionError("r must be skew")
    if not is_invertible(r):
        raise PreconditionError("r is degenerate; use the O-equation instead")
    operator = r_to_operator(algebra, r)
    omega = drinfeld_form(r)
    report = VerificationReport(name="drinfeld")
    cocycle = report.add_part(
        "cocycle", YBReport.from_defect("omega-cocycle", form_cocycle_defect(algebra, omega), limit), required=False
    )
    cybe = report.add_part("cybe", check_cybe(algebra, r, limit), required=False)
    o_eq = report.add_part("o-equation", check_o_operator(operator, limit), required=False)
    if -o_eq.defect != cybe.defect:
        raise InternalConsistencyError("Pairing identity between O-equation defect and c(r) fails")
    if cocycle.holds != cybe.holds:
        raise InternalConsistencyError("Cocycle verdict and CYBE verdict disagree")
    report.details["solves_cybe"] = cybe.holds
    return report


# sl2 fundamental-module families of O-operators
GRID_VALUES = (0, 1, -1, 2)


def o_operator_family_a(c1, c2, algebra: Optional[LieAlgebra] = None) -> OOperator:
    """O(v0) = c1 h + c2 f, O(v1) = c1 f"""
    algebra = algebra or sl2()
    m = Tensor((3, 2), [((0, 0), c1), ((2, 0), c2), ((2, 1), c1)])
    return OOperator(fundamental_sl2(algebra), algebra, m)


def o_operator_family_b(c3, c4, algebra: Optional[LieAlgebra] = None) -> OOperator:
    """O(v0) = c3 e, O(v1) = -c3 h + c4 e"""
    algebra = algebra or sl2()
    m = Tensor((3, 2), [((1, 0), c3), ((0, 1), -Fraction(c3)), ((1, 1), c4)])
    return OOperator(fundamental_sl2(algebra), algebra, m)


class GridMember(BaseModel):
    family: str = Field(description="Which sl2 family the member belongs to")
    params: Tuple[str, str] = Field(description="Parameter values as rationals")
    report: YBReport = Field(description="O-equation check")


def o_operator_grid(values: Sequence = GRID_VALUES, limit: int = DEFAULT_WITNESS_LIMIT) -> List[GridMember]:
    algebra = sl2()
    members = []
    for family, build in (("a", o_operator_family_a), ("b", o_operator_family_b)):
        for x, y in product(values, repeat=2):
            members.append(
                GridMember(
                    family=family,
                    params=(str(Fraction(x)), str(Fraction(y))),
                    report=check_o_operator(build(x, y, algebra), limit),
                )
            )
    return members
