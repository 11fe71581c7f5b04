"""
Differential Hamiltonian matrices: the D₁ linear matrix and its Casimir, the
constant, linear and quadratic matrices on G(μ)*, Jacobi and compatibility
through linear Hamiltonians, and the Hamiltonian-map criterion
"""
from typing import List, Mapping, Optional, Sequence, Tuple

import sympy

from src.core.errors import InternalConsistencyError, ShapeMismatchError
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport
from src.diffalg.diffop import DiffOp
from src.diffalg.gmu import DUAL_NAMES, coadjoint_action, gmu_bracket, gmu_coadjoint, gmu_o_inverse, gmu_o_operator
from src.diffalg.jets import JetSpace
from src.diffalg.variational import DiffDefect, formal_vector, frechet_derivative, pairing
from src.utils.rationals import parse_rational, to_sympy

D1_NAMES = ("u",)
HAMILTONIAN_TESTS = ("hA", "hB", "hC")


def d1_linear_matrix(space: Optional[JetSpace] = None) -> DiffOp:
    """B = -(u∂ + ∂u) = -2u∂ - u′"""
    space = space or JetSpace()
    u = space.jet("u")
    return DiffOp.scalar(space, {0: -space.total_derivative(u), 1: -2 * u})


def d1_casimir_check(density: sympy.Expr, space: Optional[JetSpace] = None) -> bool:
    """True when B(δH/δu) vanishes"""
    space = space or JetSpace()
    grad = space.variational_derivative(density, "u")
    image = d1_linear_matrix(space).apply([grad])[0]
    return sympy.simplify(image) == 0


def casimir_by_density(density: sympy.Expr, space: Optional[JetSpace] = None) -> bool:
    """True when (δH/δu)² u is constant"""
    space = space or JetSpace()
    grad = space.variational_derivative(density, "u")
    return sympy.simplify(space.total_derivative(grad ** 2 * space.jet("u"))) == 0


def _operator_from(space: JetSpace, apply, names: Sequence[str]) -> DiffOp:
    """Read a 2×2 operator off its action on a formal (X, f)"""
    element = [space.jet(n) for n in names]
    return DiffOp.from_linear_images(space, apply(element), list(names))


def _dual_fields(space: JetSpace) -> Tuple[sympy.Symbol, sympy.Symbol]:
    return space.jet(DUAL_NAMES[0][0]), space.jet(DUAL_NAMES[0][1])


def gmu_linear_matrix(mu, space: Optional[JetSpace] = None) -> DiffOp:
    """B₁(X) = -X·u"""
    space = space or JetSpace()
    fields = list(_dual_fields(space))
    return _operator_from(space, lambda x: [-v for v in gmu_coadjoint(mu, space, x, fields)], ("bX", "bf"))


def gmu_linear_matrix_transcribed(mu, space: Optional[JetSpace] = None) -> DiffOp:
    """-[[u∂ + ∂u + μ(∂²p′∂ + ∂p′∂²), -p′], [p′, 0]]"""
    space = space or JetSpace()
    mu = to_sympy(parse_rational(mu))
    D = space.total_derivative
    u, p = _dual_fields(space)

    def apply(element):
        x, f = element
        star = u * D(x) + D(u * x) + mu * D(D(p) * D(x), 2) + mu * D(D(p) * D(x, 2))
        return [-(star - D(p) * f), -D(p) * x]

    return _operator_from(space, apply, ("bX", "bf"))


def gmu_quadratic_matrix(mu, eps, space: Optional[JetSpace] = None) -> DiffOp:
    """B₂(X) = O(X·u)·u"""
    space = space or JetSpace()
    algebra = gmu_bracket(mu, space)
    o = gmu_o_operator(eps, space)
    fields = list(_dual_fields(space))

    def apply(element):
        moved = o.apply(gmu_coadjoint(mu, space, element, fields))
        return coadjoint_action(algebra, moved, fields)

    return _operator_from(space, apply, ("bX", "bf"))


def gmu_quadratic_matrix_transcribed(mu, eps, space: Optional[JetSpace] = None) -> DiffOp:
    """
    [[*, -p′²], [p′², 0]] with
    * = 2(p′u∂ + ∂p′u) + (4μ-ε)p′∂³p′ + μ(3p″² - 2p′p‴)∂ + μ∂(3p″² - 2p′p‴)
    """
    space = space or JetSpace()
    mu, eps = to_sympy(parse_rational(mu)), to_sympy(parse_rational(eps))
    D = space.total_derivative
    u, p = _dual_fields(space)
    w = 3 * D(p, 2) ** 2 - 2 * D(p) * D(p, 3)

    def apply(element):
        x, f = element
        star = (
            2 * (D(p) * u * D(x) + D(D(p) * u * x))
            + (4 * mu - eps) * D(p) * D(D(p) * x, 3)
            + mu * w * D(x)
            + mu * D(w * x)
        )
        return [star - D(p) ** 2 * f, D(p) ** 2 * x]

    return _operator_from(space, apply, ("bX", "bf"))


def linear_hamiltonian_jacobi(
    space: JetSpace, first: DiffOp, second: DiffOp, names: Sequence[str]
) -> sympy.Expr:
    """
    Σ_cyc ⟨C, P(δ⟨B, Q(A)⟩)⟩ for Hamiltonians ⟨A, u⟩, ⟨B, u⟩, ⟨C, u⟩ with
    formal coefficient vectors A, B, C
    """
    size = len(names)
    if first.shape != (size, size) or second.shape != (size, size):
        raise ShapeMismatchError(f"Hamiltonian matrices must be {size}×{size}")
    a, b, c = [formal_vector(space, prefix, size) for prefix in HAMILTONIAN_TESTS]
    total = sympy.Integer(0)
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        inner = pairing(y, second.apply(x))
        total += pairing(z, first.apply(space.gradient(inner, names)))
    return sympy.expand(total)


def _test_names(size: int) -> List[str]:
    return [f"{HAMILTONIAN_TESTS[2]}{k}" for k in range(size)]


def hamiltonian_jacobi_defect(space: JetSpace, matrix: DiffOp, names: Sequence[str]) -> DiffDefect:
    """The Jacobi sum of linear Hamiltonians, to be tested modulo Im ∂"""
    expr = linear_hamiltonian_jacobi(space, matrix, matrix, names)
    return DiffDefect(space, [("jacobi", expr)], mode="modulo-image", test_names=_test_names(len(names)))


def compatibility_defect(space: JetSpace, first: DiffOp, second: DiffOp, names: Sequence[str]) -> DiffDefect:
    """The mixed Jacobi terms of first + second"""
    expr = linear_hamiltonian_jacobi(space, first, second, names) + linear_hamiltonian_jacobi(
        space, second, first, names
    )
    return DiffDefect(space, [("compatibility", expr)], mode="modulo-image", test_names=_test_names(len(names)))


def gmu_hamiltonian_triple(
    mu, eps, space: Optional[JetSpace] = None, limit: int = DEFAULT_WITNESS_LIMIT
) -> Tuple[DiffOp, DiffOp, DiffOp, VerificationReport]:
    """
    The constant, linear and quadratic Hamiltonian matrices on G(μ)* with
    skewness, Jacobi and pairwise compatibility

    Raises:
        InternalConsistencyError: If a transcribed matrix differs from the one
            derived from the coadjoint action and O
    """
    space = space or JetSpace()
    names = list(DUAL_NAMES[0])
    b0 = gmu_o_inverse(eps, space)
    b1 = gmu_linear_matrix(mu, space)
    b2 = gmu_quadratic_matrix(mu, eps, space)
    if b1 != gmu_linear_matrix_transcribed(mu, space):
        raise InternalConsistencyError("Linear matrix differs from -X·u")
    if b2 != gmu_quadratic_matrix_transcribed(mu, eps, space):
        raise InternalConsistencyError("Quadratic matrix differs from O(X·u)·u")
    report = VerificationReport(name="hamiltonian-triple")
    for label, matrix in (("b0", b0), ("b1", b1), ("b2", b2)):
        report.add_part(f"{label}-skew", YBReport.from_defect(f"{label}-skew", matrix + matrix.adjoint(), limit))
        report.add_part(
            f"{label}-jacobi",
            YBReport.from_defect(f"{label}-jacobi", hamiltonian_jacobi_defect(space, matrix, names), limit),
        )
    pairs = ((("b0", b0), ("b1", b1)), (("b0", b0), ("b2", b2)), (("b1", b1), ("b2", b2)))
    for (la, a), (lb, b) in pairs:
        key = f"compatible-{la}-{lb}"
        report.add_part(key, YBReport.from_defect(key, compatibility_defect(space, a, b, names), limit))
    report.details["mu"] = str(parse_rational(mu))
    report.details["eps"] = str(parse_rational(eps))
    return b0, b1, b2, report


def hamiltonian_map_defect(
    space: JetSpace,
    images: Mapping[str, sympy.Expr],
    source_names: Sequence[str],
    target_names: Sequence[str],
    source: DiffOp,
    target: DiffOp,
) -> DiffOp:
    """
    Φ(B₁) - D(Φ) B₂ D(Φ)†, with Φ(B₁) the source matrix under u ↦ Φ(u);
    zero exactly when Φ is Hamiltonian
    """
    if source.shape != (len(source_names),) * 2 or target.shape != (len(target_names),) * 2:
        raise ShapeMismatchError("Hamiltonian matrices do not match the variable lists")
    missing = [n for n in source_names if n not in images]
    if missing:
        raise ShapeMismatchError(f"No image for {', '.join(missing)}")
    pushed = source.substitute(images)
    jacobian = frechet_derivative(space, [images[n] for n in source_names], list(target_names))
    return pushed - jacobian @ target @ jacobian.adjoint()


def hamiltonian_map_criterion(
    space: JetSpace,
    images: Mapping[str, sympy.Expr],
    source_names: Sequence[str],
    target_names: Sequence[str],
    source: DiffOp,
    target: DiffOp,
    limit: int = DEFAULT_WITNESS_LIMIT,
) -> YBReport:
    defect = hamiltonian_map_defect(space, images, source_names, target_names, source, target)
    return YBReport.from_defect("hamiltonian-map", defect, limit)


def symplectic_matrix(space: Optional[JetSpace] = None) -> DiffOp:
    """[[0, -1], [1, 0]] on (x, p)"""
    return DiffOp.from_blocks(space or JetSpace(), [[0, -1], [1, 0]])


def d1_clebsch_images(space: JetSpace) -> Mapping[str, sympy.Expr]:
    """u ↦ x′p, the scalar-density Clebsch map for D₁"""
    return {"u": space.total_derivative(space.jet("x")) * space.jet("p")}
