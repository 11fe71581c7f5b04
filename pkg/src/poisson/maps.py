"""
Ring maps between polynomial rings and the Hamiltonian-map criterion

A ring map is fixed by the images of the source coordinates. It is
Hamiltonian exactly when it carries the source brackets of coordinates to
the target brackets of their images.
"""
from typing import List, Optional, Sequence

import sympy

from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.linalg import matmul_chain, transpose
from src.core.tensor import PolyTensor, Tensor
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport
from src.lie.algebra import LieAlgebra
from src.lie.homomorphisms import homomorphism_defect
from src.lie.o_operator import OOperator, require_o_operator
from src.poisson.ring import PoissonStructure, PolyRing
from src.poisson.structures import linear_poisson, quadratic_poisson
from src.utils.rationals import to_sympy


class RingMap:
    """Φ: source -> target with Φ(x_i) = images[i]"""

    def __init__(self, source: PolyRing, target: PolyRing, images: Sequence, name: str = ""):
        if len(images) != source.dim:
            raise ShapeMismatchError(f"Need {source.dim} images, got {len(images)}")
        images = [sympy.expand(sympy.sympify(v)) for v in images]
        allowed = set(target.symbols)
        for i, image in enumerate(images):
            stray = image.free_symbols - allowed
            if stray:
                raise ShapeMismatchError(
                    f"Image of {source.names[i]} uses variables outside the target ring: {sorted(map(str, stray))}"
                )
        self.source = source
        self.target = target
        self.images = images
        self.name = name or "ring-map"

    def apply(self, expr: sympy.Expr) -> sympy.Expr:
        return self.source.substitute(expr, self.images)

    def __repr__(self) -> str:
        return f"RingMap({self.name}: {self.source!r} -> {self.target!r})"


def hamiltonian_map_defect(phi: RingMap, source: PoissonStructure, target: PoissonStructure) -> PolyTensor:
    """
    Φ({x_i, x_j}_source) - {Φ(x_i), Φ(x_j)}_target for every coordinate pair

    Raises:
        ShapeMismatchError: If the brackets do not live on the rings of Φ
    """
    if source.ring != phi.source or target.ring != phi.target:
        raise ShapeMismatchError("Poisson structures do not live on the rings of the map")
    n = phi.source.dim
    entries = []
    for i in range(n):
        for j in range(n):
            pushed = phi.apply(source.pi[i][j])
            entries.append(((i, j), pushed - target.bracket(phi.images[i], phi.images[j])))
    return PolyTensor((n, n), entries)


def check_hamiltonian_map(
    phi: RingMap, source: PoissonStructure, target: PoissonStructure, limit: int = DEFAULT_WITNESS_LIMIT
) -> YBReport:
    return YBReport.from_defect("hamiltonian-map", hamiltonian_map_defect(phi, source, target), limit)


def natural_map(
    phi: Tensor,
    source: LieAlgebra,
    target: LieAlgebra,
    source_ring: Optional[PolyRing] = None,
    target_ring: Optional[PolyRing] = None,
) -> RingMap:
    """
    The dual of a homomorphism φ: G -> H as a ring map C_{G*} -> C_{H*},
    u_s ↦ Σ_j φ[j, s] q_j

    Raises:
        PreconditionError: If φ is not a Lie homomorphism
    """
    if not homomorphism_defect(phi, source, target).is_zero():
        raise PreconditionError("φ is not a Lie algebra homomorphism")
    source_ring = source_ring or PolyRing.dual_coordinates(source.dim, "u")
    target_ring = target_ring or PolyRing.dual_coordinates(target.dim, "q")
    images: List[sympy.Expr] = [sympy.Integer(0)] * source.dim
    for (j, s), v in phi.items():
        images[s] += to_sympy(v) * target_ring.coordinate(j)
    return RingMap(source_ring, target_ring, images, name="natural")


def naturality_report(
    phi: Tensor,
    operator: OOperator,
    target: LieAlgebra,
    limit: int = DEFAULT_WITNESS_LIMIT,
) -> VerificationReport:
    """
    The natural map is Hamiltonian between the linear brackets, and between
    the quadratic brackets of r and φ r φᵀ

    The quadratic part needs a skew r; for any other r it is left out and
    details["quadratic"] says so.
    """
    source = operator.target
    require_o_operator(operator)
    ring_map = natural_map(phi, source, target)
    report = VerificationReport(name="natural-map")
    report.add_part(
        "linear",
        check_hamiltonian_map(
            ring_map, linear_poisson(source, ring_map.source), linear_poisson(target, ring_map.target), limit
        ),
    )
    if not operator.is_skew():
        report.details["quadratic"] = "not applicable: r is not skew"
        return report
    r_h = matmul_chain(phi, operator.matrix, transpose(phi))
    report.add_part(
        "quadratic",
        check_hamiltonian_map(
            ring_map,
            quadratic_poisson(source, operator.matrix, ring_map.source),
            quadratic_poisson(target, r_h, ring_map.target),
            limit,
        ),
    )
    return report
