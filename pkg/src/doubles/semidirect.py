"""
Semidirect sums G ⋉ G*, quasiassociative products and symplectic doubles

A semidirect sum by a representation ρ on G* uses the crossed basis order:
G at 0..N-1 and G* at N..2N-1, with [e_i, e^b] = ρ(e_i)e^b and [G*, G*] = 0.
"""
from collections import defaultdict
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from src.core.errors import InternalConsistencyError, PreconditionError, ShapeMismatchError
from src.core.tensor import Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport
from src.doubles.crossed import DoubleAlgebra, canonical_form
from src.lie.algebra import LieAlgebra, from_associative, jacobi_defect_tensor
from src.lie.homomorphisms import check_homomorphism
from src.lie.o_operator import (
    AlgebraOnModule,
    check_o_operator,
    form_cocycle_defect,
    module_bracket,
    r_to_operator,
)
from src.lie.representation import Representation, coadjoint_rep


class BilinearProduct:
    """(ab)^k = Σ m_{ij}^k a^i b^j; neither associative nor skew in general"""

    def __init__(self, m: Tensor, name: str = ""):
        if m.rank != 3 or len(set(m.shape)) != 1:
            raise ShapeMismatchError(f"Product tensor must have shape (n,n,n), got {m.shape}")
        self.m = m
        self.dim = m.shape[0]
        self.name = name or f"product{self.dim}"

    def multiply(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
        out = [Fraction(0)] * self.dim
        for (i, j, k), v in self.m.items():
            if a[i] and b[j]:
                out[k] += v * a[i] * b[j]
        return out

    def left(self, i: int) -> Tensor:
        """Matrix of left multiplication by e_i"""
        return Tensor((self.dim, self.dim), (((k, j), v) for (a, j, k), v in self.m.items() if a == i))

    def commutator(self, verify: bool = True) -> LieAlgebra:
        return from_associative(self.m, verify=verify)

    def __repr__(self) -> str:
        return f"BilinearProduct({self.name}, dim={self.dim})"


def matrix_product(n: int) -> BilinearProduct:
    """n×n matrices in the matrix-unit basis E_ab at a*n + b"""
    entries = []
    for a in range(n):
        for b in range(n):
            for d in range(n):
                entries.append(((a * n + b, b * n + d, a * n + d), 1))
    return BilinearProduct(Tensor((n * n,) * 3, entries), name=f"mat{n}")


def scalar_product() -> BilinearProduct:
    """The one-dimensional algebra xy = xy"""
    return BilinearProduct(Tensor((1, 1, 1), [((0, 0, 0), 1)]), name="scalars")


def quasiassociative_defect(product: BilinearProduct) -> Tensor:
    """(xy)z - x(yz) - (yx)z + y(xz) at basis (x, y, z) = (e_i, e_j, e_k)"""
    m = product.m
    n = product.dim
    by_first: Dict[int, List] = defaultdict(list)
    for (s, k, t), v in m.items():
        by_first[s].append((k, t, v))
    # assoc[i, j, k, t] = ((e_i e_j) e_k - e_i (e_j e_k))_t
    assoc: Dict = defaultdict(Fraction)
    for (i, j, s), v in m.items():
        for k, t, w in by_first[s]:
            assoc[(i, j, k, t)] += v * w
    for (j, k, s), v in m.items():
        for i in range(n):
            for kk, t, w in by_first[i]:
                if kk == s:
                    assoc[(i, j, k, t)] -= v * w
    entries: Dict = defaultdict(Fraction)
    for (i, j, k, t), v in assoc.items():
        entries[(i, j, k, t)] += v
        entries[(j, i, k, t)] -= v
    return Tensor((n, n, n, n), entries)


def quasiassociative_check(product: BilinearProduct, limit: int = DEFAULT_WITNESS_LIMIT) -> VerificationReport:
    """
    The quasiassociativity defect together with the Jacobi verdict of the
    commutator algebra xy - yx (stored under details["commutator_jacobi"])

    Raises:
        InternalConsistencyError: If a quasiassociative product has a
            commutator that fails Jacobi
    """
    report = VerificationReport(name="quasiassociative")
    quasi = report.add_part(
        "quasiassociative", YBReport.from_defect("quasiassociative", quasiassociative_defect(product), limit)
    )
    commutator_c = product.m - product.m.permute_axes((1, 0, 2))
    jacobi = report.add_part(
        "commutator-jacobi",
        YBReport.from_defect("commutator-jacobi", jacobi_defect_tensor(commutator_c), limit),
        required=False,
    )
    if quasi.holds and not jacobi.holds:
        raise InternalConsistencyError("Commutator of a quasiassociative product fails Jacobi")
    report.details["commutator_jacobi"] = jacobi.holds
    return report


def _require_quasiassociative(product: BilinearProduct) -> None:
    if not quasiassociative_defect(product).is_zero():
        raise PreconditionError(f"{product.name} is not quasiassociative")


def representation_from_quasiassociative(product: BilinearProduct) -> Representation:
    """
    ρ with ρ^d = left multiplication: χ_{ik}^j = -m_{ij}^k, a module over the
    commutator algebra

    Raises:
        PreconditionError: If the product is not quasiassociative
    """
    _require_quasiassociative(product)
    algebra = product.commutator()
    n = product.dim
    chi = Tensor((n, n, n), (((i, k, j), -v) for (i, j, k), v in product.m.items()))
    return Representation(algebra, chi, name=f"dual-left({product.name})")


def quasiassociative_from_rep(rep: Representation) -> BilinearProduct:
    """xy = ρ^d(x)(y), so m_{ij}^k = -χ_{ik}^j; needs dim ρ = dim G"""
    n = rep.host.dim
    if rep.dim != n:
        raise ShapeMismatchError(f"Module has dimension {rep.dim}, algebra has {n}")
    m = Tensor((n, n, n), (((i, j, k), -v) for (i, k, j), v in rep.chi.items()))
    return BilinearProduct(m, name=f"from({rep.name})")


def semidirect_tensor(algebra: LieAlgebra, rep: Representation) -> Tensor:
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (i, j, k), v in algebra.c.items():
        entries[(i, j, k)] += v
    for (i, b, g), v in rep.chi.items():
        entries[(i, n + b, n + g)] += v
        entries[(n + b, i, n + g)] -= v
    return Tensor((2 * n,) * 3, entries)


def semidirect_sum(algebra: LieAlgebra, rep: Representation, limit: int = DEFAULT_WITNESS_LIMIT) -> DoubleAlgebra:
    """
    G ⋉_ρ G* for any representation ρ of G on a space of dimension N

    Raises:
        ShapeMismatchError: If dim ρ != dim G
        InternalConsistencyError: If the result fails Jacobi
    """
    n = algebra.dim
    if rep.host.dim != n or rep.dim != n:
        raise ShapeMismatchError("Semidirect sum on G ⊕ G* needs an N-dimensional module over G")
    tensor = semidirect_tensor(algebra, rep)
    report = VerificationReport(name="semidirect-sum")
    jacobi = report.add_part("jacobi", YBReport.from_defect("jacobi", jacobi_defect_tensor(tensor), limit))
    if not jacobi.holds:
        raise InternalConsistencyError("Semidirect sum by a module fails Jacobi")
    return DoubleAlgebra(n, tensor, "semidirect", report)


def dual_criterion_defect(algebra: LieAlgebra, rep: Representation) -> Tensor:
    """ρ^d(e_i)(e_j) - ρ^d(e_j)(e_i) - [e_i, e_j] with ρ^d(e_i)(e_j)_k = -χ_{ik}^j"""
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (i, k, j), v in rep.chi.items():
        entries[(i, j, k)] -= v
        entries[(j, i, k)] += v
    for (i, j, k), v in algebra.c.items():
        entries[(i, j, k)] -= v
    return Tensor((n, n, n), entries)


def symplectic_cocycle_criterion(
    algebra: LieAlgebra, rep: Representation, limit: int = DEFAULT_WITNESS_LIMIT
) -> VerificationReport:
    """
    The canonical form is a 2-cocycle on G ⋉_ρ G* exactly when
    ρ^d(X)Y - ρ^d(Y)X = [X, Y]; both defects are reported

    Raises:
        InternalConsistencyError: If the two verdicts disagree
    """
    double = semidirect_sum(algebra, rep, limit)
    lie = double.as_lie_algebra()
    report = VerificationReport(name="symplectic-cocycle")
    cocycle = report.add_part(
        "omega-cocycle", YBReport.from_defect("omega-cocycle", form_cocycle_defect(lie, canonical_form(algebra.dim)), limit)
    )
    criterion = report.add_part(
        "dual-criterion", YBReport.from_defect("dual-criterion", dual_criterion_defect(algebra, rep), limit)
    )
    if cocycle.holds != criterion.holds:
        raise InternalConsistencyError("Cocycle verdict and dual-representation criterion disagree")
    return report


def symplectic_double(
    product: BilinearProduct, limit: int = DEFAULT_WITNESS_LIMIT
) -> Tuple[BilinearProduct, DoubleAlgebra]:
    """
    T*A on A ⊕ A*: (a, a*)(b, b*) = (ab, ab*) with ab* = -(left multiplication)ᵀ b*,
    and a*b = a*b* = 0. Its commutator is Lie(A) ⋉ Lie(A)*.

    Raises:
        PreconditionError: If the product is not quasiassociative
        InternalConsistencyError: If the double is not quasiassociative or its
            commutator differs from the semidirect sum
    """
    _require_quasiassociative(product)
    n = product.dim
    entries = list(product.m.items())
    entries += [((i, n + b, n + k), -v) for (i, k, b), v in product.m.items()]
    double_product = BilinearProduct(Tensor((2 * n,) * 3, entries), name=f"T*{product.name}")
    if not quasiassociative_defect(double_product).is_zero():
        raise InternalConsistencyError("Symplectic double of a quasiassociative product is not quasiassociative")
    algebra = product.commutator()
    semidirect = semidirect_sum(algebra, representation_from_quasiassociative(product), limit)
    commutator_c = double_product.m - double_product.m.permute_axes((1, 0, 2))
    if commutator_c != semidirect.bracket:
        raise InternalConsistencyError("Commutator of the symplectic double differs from the semidirect sum")
    return double_product, DoubleAlgebra(n, semidirect.bracket, "symplectic-double", semidirect.report)


class SymplecticOperator(BaseModel):
    """O: G1* -> G1 from the canonical form, with the bracket it induces on G1*"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    operator_matrix: Tensor = Field(description="O[s, a] with O(ℓ_a) = Σ_s O[s, a] e_s")
    induced: AlgebraOnModule = Field(description="Bracket induced on G1*")
    report: VerificationReport = Field(description="O-equation and isomorphism checks")


def symplectic_operator_matrix(half: int) -> Tensor:
    """O(α, a) = (a, -α) in the coordinates (G*, G) of G1* and (G, G*) of G1"""
    return Tensor(
        (2 * half, 2 * half),
        [((half + i, i), -1) for i in range(half)] + [((b, half + b), 1) for b in range(half)],
    )


def swap_matrix(half: int) -> Tensor:
    """(α, a) -> (a, α) from G1* to G1"""
    return Tensor(
        (2 * half, 2 * half),
        [((half + i, i), 1) for i in range(half)] + [((b, half + b), 1) for b in range(half)],
    )


def closed_form_bracket(algebra: LieAlgebra, rep: Representation) -> Tensor:
    """[(α,a),(β,b)] = (ρ(a)β - ρ(b)α, [a,b]) with α, β at 0..N-1 and a, b at N..2N-1"""
    n = algebra.dim
    entries: Dict = defaultdict(Fraction)
    for (i, j, k), v in algebra.c.items():
        entries[(n + i, n + j, n + k)] += v
    for (i, b, g), v in rep.chi.items():
        entries[(n + i, b, g)] += v
        entries[(b, n + i, g)] -= v
    return Tensor((2 * n,) * 3, entries)


def o_from_symplectic(
    algebra: LieAlgebra, rep: Representation, limit: int = DEFAULT_WITNESS_LIMIT
) -> SymplecticOperator:
    """
    The O-operator G1* -> G1 given by the canonical form on G1 = G ⋉_ρ G*

    Raises:
        PreconditionError: If the canonical form is not a 2-cocycle on G1
        InternalConsistencyError: If the O-equation, the closed-form induced
            bracket or either isomorphism fails
    """
    criterion = symplectic_cocycle_criterion(algebra, rep, limit)
    if not criterion.is_valid:
        raise PreconditionError("Canonical form is not a 2-cocycle on the semidirect sum")
    n = algebra.dim
    g1 = semidirect_sum(algebra, rep, limit).as_lie_algebra(name="G1")
    matrix = symplectic_operator_matrix(n)
    operator = r_to_operator(g1, matrix)
    report = VerificationReport(name="o-from-symplectic")
    report.add_part("o-equation", check_o_operator(operator, limit))
    induced = module_bracket(operator)
    closed = closed_form_bracket(algebra, rep)
    report.add_part("closed-form", YBReport.from_defect("closed-form", induced - closed, limit))
    induced_algebra = LieAlgebra(induced, name="G1*", verify=False)
    report.add_part("o-isomorphism", check_homomorphism(matrix, induced_algebra, g1, limit))
    report.add_part("swap-isomorphism", check_homomorphism(swap_matrix(n), induced_algebra, g1, limit))
    if not report.is_valid:
        raise InternalConsistencyError(f"Symplectic O-operator checks failed: {report.violations}")
    return SymplecticOperator(
        operator_matrix=matrix,
        induced=AlgebraOnModule(carrier_dim=2 * n, bracket=induced),
        report=report,
    )


def coadjoint_on_double_dual(double: DoubleAlgebra, limit: int = DEFAULT_WITNESS_LIMIT) -> Tuple[Representation, YBReport]:
    """
    Coadjoint action of G1 on G1*, cross-checked against ⟨X·ξ, Y⟩ = -⟨ξ, [X, Y]⟩

    Raises:
        PreconditionError: If the double is not Lie
        InternalConsistencyError: If the two descriptions disagree
    """
    lie = double.as_lie_algebra()
    rep = coadjoint_rep(lie)
    dim = double.dim
    # pairing[x, ξ, y] = ⟨e_x·e^ξ, e_y⟩ + ⟨e^ξ, [e_x, e_y]⟩
    entries: Dict = defaultdict(Fraction)
    for x in range(dim):
        for (y, xi), v in rep.matrix(x).items():
            entries[(x, xi, y)] += v
    for (x, y, xi), v in lie.c.items():
        entries[(x, xi, y)] += v
    report = YBReport.from_defect("coadjoint-pairing", Tensor((dim,) * 3, entries), limit)
    if not report.holds:
        raise InternalConsistencyError("Coadjoint action disagrees with its defining pairing")
    return rep, report
