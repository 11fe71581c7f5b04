"""
Differential Lie algebras D₁ and G(μ), their cocycles, the O-operator on
G(μ)* and the bracket it induces

Elements are lists of jet polynomials. D₁ has one component X with
[X, Y] = XY′ - X′Y. G(μ) has components (X, f) with

    [(X,f),(Y,g)] = (XY′ - X′Y, (Xg - Yf + μ(X′Y″ - X″Y′))′)

and G(μ)* has components (u, p), paired with (X, f) by uX + pf.
"""
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

import sympy

from src.core.errors import InternalConsistencyError
from src.core.verification import DEFAULT_WITNESS_LIMIT, VerificationReport, YBReport
from src.diffalg.diffop import DiffOp
from src.diffalg.jets import JetSpace
from src.diffalg.variational import DiffDefect, formal_vector, pairing
from src.utils.rationals import parse_rational, to_sympy

Element = List[sympy.Expr]
Bracket = Callable[[JetSpace, Sequence[sympy.Expr], Sequence[sympy.Expr]], Element]

TEST_NAMES = {
    1: (("X",), ("Y",), ("Z",)),
    2: (("X", "f"), ("Y", "g"), ("Z", "h")),
}
DUAL_NAMES = (("u", "p"), ("v", "q"))


class DiffLieAlgebra:
    """A bracket on R^N-valued jet polynomials"""

    def __init__(
        self,
        space: JetSpace,
        dim: int,
        bracket: Bracket,
        name: str,
        params: Optional[Dict[str, Fraction]] = None,
    ):
        self.space = space
        self.dim = dim
        self._bracket = bracket
        self.name = name
        self.params = dict(params or {})

    def bracket(self, left: Sequence[sympy.Expr], right: Sequence[sympy.Expr]) -> Element:
        return [sympy.expand(v) for v in self._bracket(self.space, left, right)]

    def test_elements(self) -> List[Element]:
        """Three formal elements in fresh differential indeterminates"""
        names = TEST_NAMES.get(self.dim) or tuple(
            tuple(f"{prefix}{k}" for k in range(self.dim)) for prefix in ("X", "Y", "Z")
        )
        return [[self.space.jet(v) for v in element] for element in names]

    def test_names(self) -> List[str]:
        return [self.space.parse(s)[0] for element in self.test_elements() for s in element]

    def jacobi(self, a: Sequence, b: Sequence, c: Sequence) -> Element:
        terms = [
            self.bracket(self.bracket(a, b), c),
            self.bracket(self.bracket(b, c), a),
            self.bracket(self.bracket(c, a), b),
        ]
        return [sympy.expand(sum(t[k] for t in terms)) for k in range(self.dim)]

    def __repr__(self) -> str:
        return f"DiffLieAlgebra({self.name}, dim={self.dim})"


def _d1(space: JetSpace, a: Sequence, b: Sequence) -> Element:
    D = space.total_derivative
    return [a[0] * D(b[0]) - D(a[0]) * b[0]]


def d1_bracket(space: Optional[JetSpace] = None) -> DiffLieAlgebra:
    return DiffLieAlgebra(space or JetSpace(), 1, _d1, "D1")


def gmu_bracket(mu, space: Optional[JetSpace] = None) -> DiffLieAlgebra:
    mu_value = to_sympy(parse_rational(mu))

    def bracket(space: JetSpace, a: Sequence, b: Sequence) -> Element:
        D = space.total_derivative
        (x, f), (y, g) = a, b
        twisted = x * g - y * f + mu_value * (D(x) * D(y, 2) - D(x, 2) * D(y))
        return [x * D(y) - D(x) * y, D(twisted)]

    return DiffLieAlgebra(space or JetSpace(), 2, bracket, f"G({parse_rational(mu)})", {"mu": parse_rational(mu)})


def jacobi_report(algebra: DiffLieAlgebra, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    """The Jacobi sum vanishes identically, not only modulo Im ∂"""
    a, b, c = algebra.test_elements()
    defect = algebra.jacobi(a, b, c)
    return YBReport.from_defect(
        "jacobi", DiffDefect(algebra.space, [(f"component {k}", v) for k, v in enumerate(defect)]), limit
    )


def antisymmetry_report(algebra: DiffLieAlgebra, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    a, b, _ = algebra.test_elements()
    left, right = algebra.bracket(a, b), algebra.bracket(b, a)
    return YBReport.from_defect(
        "antisymmetry",
        DiffDefect(algebra.space, [(f"component {k}", left[k] + right[k]) for k in range(algebra.dim)]),
        limit,
    )


def gelfand_fuchs(space: JetSpace, a: Sequence, b: Sequence) -> sympy.Expr:
    """ω(X, Y) = X‴Y on the vector-field components"""
    return sympy.expand(space.total_derivative(a[0], 3) * b[0])


def symplectic_pairing(space: JetSpace, a: Sequence, b: Sequence) -> sympy.Expr:
    """Ω((X,f),(Y,g)) = Xg - Yf"""
    return sympy.expand(a[0] * b[1] - b[0] * a[1])


def form_skew_defect(algebra: DiffLieAlgebra, form) -> sympy.Expr:
    a, b, _ = algebra.test_elements()
    return sympy.expand(form(algebra.space, a, b) + form(algebra.space, b, a))


def form_cocycle_defect(algebra: DiffLieAlgebra, form) -> sympy.Expr:
    """ω(A,[B,C]) + ω(B,[C,A]) + ω(C,[A,B])"""
    a, b, c = algebra.test_elements()
    space = algebra.space
    return sympy.expand(
        form(space, a, algebra.bracket(b, c))
        + form(space, b, algebra.bracket(c, a))
        + form(space, c, algebra.bracket(a, b))
    )


def _form_report(algebra: DiffLieAlgebra, name: str, expr: sympy.Expr, limit: int) -> YBReport:
    defect = DiffDefect(algebra.space, [(name, expr)], mode="modulo-image", test_names=algebra.test_names())
    return YBReport.from_defect(name, defect, limit)


def symplectic_cocycle_residue(algebra: DiffLieAlgebra) -> sympy.Expr:
    """μX(Y′Z‴ - Y‴Z′) + c.p. for the test elements of G(μ)"""
    mu = to_sympy(algebra.params["mu"])
    D = algebra.space.total_derivative
    (x, _), (y, _), (z, _) = algebra.test_elements()
    total = sympy.Integer(0)
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        total += a * (D(b) * D(c, 3) - D(b, 3) * D(c))
    return sympy.expand(mu * total)


def d1_cocycle_checks(space: Optional[JetSpace] = None, limit: int = DEFAULT_WITNESS_LIMIT) -> VerificationReport:
    algebra = d1_bracket(space)
    report = VerificationReport(name="d1-cocycle")
    report.add_part("jacobi", jacobi_report(algebra, limit))
    report.add_part("omega-skew", _form_report(algebra, "omega-skew", form_skew_defect(algebra, gelfand_fuchs), limit))
    report.add_part(
        "omega-cocycle", _form_report(algebra, "omega-cocycle", form_cocycle_defect(algebra, gelfand_fuchs), limit)
    )
    return report


def gmu_cocycle_checks(mu, space: Optional[JetSpace] = None, limit: int = DEFAULT_WITNESS_LIMIT) -> VerificationReport:
    """
    Jacobi for G(μ), the form X‴Y and the pairing Ω as 2-cocycles

    Raises:
        InternalConsistencyError: If the exact Ω cocycle sum differs from
            μX(Y′Z‴ - Y‴Z′) + c.p.
    """
    algebra = gmu_bracket(mu, space)
    report = VerificationReport(name="gmu-cocycle")
    report.add_part("antisymmetry", antisymmetry_report(algebra, limit))
    report.add_part("jacobi", jacobi_report(algebra, limit))
    report.add_part("omega-skew", _form_report(algebra, "omega-skew", form_skew_defect(algebra, gelfand_fuchs), limit))
    report.add_part(
        "omega-cocycle", _form_report(algebra, "omega-cocycle", form_cocycle_defect(algebra, gelfand_fuchs), limit)
    )
    big_skew = form_skew_defect(algebra, symplectic_pairing)
    report.add_part(
        "Omega-skew",
        YBReport.from_defect("Omega-skew", DiffDefect(algebra.space, [("Omega-skew", big_skew)]), limit),
    )
    big_cocycle = form_cocycle_defect(algebra, symplectic_pairing)
    if sympy.expand(big_cocycle - symplectic_cocycle_residue(algebra)) != 0:
        raise InternalConsistencyError("Ω cocycle sum differs from μX(Y′Z‴ - Y‴Z′) + c.p.")
    report.add_part("Omega-cocycle", _form_report(algebra, "Omega-cocycle", big_cocycle, limit))
    return report


def coadjoint_action(algebra: DiffLieAlgebra, element: Sequence, coelement: Sequence) -> Element:
    """X·ξ = δ/δY (-⟨ξ, [X, Y]⟩) for a fresh test element Y"""
    fresh = formal_vector(algebra.space, "coY", algebra.dim)
    density = -pairing(coelement, algebra.bracket(element, fresh))
    return [algebra.space.variational_derivative(density, f"coY{k}") for k in range(algebra.dim)]


def gmu_coadjoint(mu, space: JetSpace, element: Sequence, coelement: Sequence) -> Element:
    """(X,f)·(u,p) = (Xu′ + 2X′u - fp′ + μ(X′p′)″ + μ(X″p′)′, Xp′)"""
    mu = to_sympy(parse_rational(mu))
    D = space.total_derivative
    (x, f), (u, p) = element, coelement
    first = x * D(u) + 2 * D(x) * u - f * D(p) + mu * D(D(x) * D(p), 2) + mu * D(D(x, 2) * D(p))
    return [sympy.expand(first), sympy.expand(x * D(p))]


def coadjoint_report(mu, space: Optional[JetSpace] = None, limit: int = DEFAULT_WITNESS_LIMIT) -> YBReport:
    """The Euler-derivative coadjoint action against the closed form"""
    algebra = gmu_bracket(mu, space)
    element = algebra.test_elements()[0]
    coelement = [algebra.space.jet(v) for v in DUAL_NAMES[0]]
    generic = coadjoint_action(algebra, element, coelement)
    closed = gmu_coadjoint(mu, algebra.space, element, coelement)
    defect = DiffDefect(algebra.space, [(f"component {k}", generic[k] - closed[k]) for k in range(2)])
    return YBReport.from_defect("gmu-coadjoint", defect, limit)


def gmu_o_operator(eps, space: Optional[JetSpace] = None) -> DiffOp:
    """O = [[0, 1], [-1, ε∂³]] : G(μ)* → G(μ)"""
    eps = to_sympy(parse_rational(eps))
    return DiffOp.from_blocks(space or JetSpace(), [[0, 1], [-1, {3: eps}]])


def gmu_o_inverse(eps, space: Optional[JetSpace] = None) -> DiffOp:
    """O⁻¹ = [[ε∂³, -1], [1, 0]]"""
    eps = to_sympy(parse_rational(eps))
    return DiffOp.from_blocks(space or JetSpace(), [[{3: eps}, -1], [1, 0]])


def o_operator_report(eps, space: Optional[JetSpace] = None, limit: int = DEFAULT_WITNESS_LIMIT) -> VerificationReport:
    space = space or JetSpace()
    o, inverse = gmu_o_operator(eps, space), gmu_o_inverse(eps, space)
    identity = DiffOp.identity(space, 2)
    report = VerificationReport(name="gmu-o-operator")
    report.add_part("skew", YBReport.from_defect("skew", o + o.adjoint(), limit))
    report.add_part("inverse-skew", YBReport.from_defect("inverse-skew", inverse + inverse.adjoint(), limit))
    report.add_part("right-inverse", YBReport.from_defect("right-inverse", o @ inverse - identity, limit))
    report.add_part("left-inverse", YBReport.from_defect("left-inverse", inverse @ o - identity, limit))
    return report


def gmu_dual_bracket(mu, eps, space: Optional[JetSpace] = None) -> DiffLieAlgebra:
    """[ξ, η] = O(ξ)·η - O(η)·ξ on G(μ)*"""
    algebra = gmu_bracket(mu, space)
    o = gmu_o_operator(eps, algebra.space)

    def bracket(space: JetSpace, xi: Sequence, eta: Sequence) -> Element:
        left = coadjoint_action(algebra, o.apply(xi), eta)
        right = coadjoint_action(algebra, o.apply(eta), xi)
        return [left[k] - right[k] for k in range(2)]

    return DiffLieAlgebra(algebra.space, 2, bracket, f"G({parse_rational(mu)})*[eps={parse_rational(eps)}]")


def relabel_to_gmu(element: Sequence) -> Element:
    """(u, p) ↦ (X, f) = (p, u)"""
    return [element[1], element[0]]


def dual_bracket_coefficient(mu, eps, space: Optional[JetSpace] = None) -> Fraction:
    """
    The λ with [ξ,η]_1 = (pv - qu)′ + λ(p′q‴ - p‴q′)

    Raises:
        InternalConsistencyError: If the remainder is not a multiple of p′q‴ - p‴q′
    """
    dual = gmu_dual_bracket(mu, eps, space)
    D = dual.space.total_derivative
    (u, p), (v, q) = [[dual.space.jet(n) for n in pair] for pair in DUAL_NAMES]
    first = dual.bracket([u, p], [v, q])[0]
    rest = sympy.expand(first - D(p * v - q * u))
    shape = sympy.expand(D(p) * D(q, 3) - D(p, 3) * D(q))
    coefficient = rest.coeff(D(p) * D(q, 3))
    if sympy.expand(rest - coefficient * shape) != 0:
        raise InternalConsistencyError("Dual bracket has terms outside (pv - qu)′ and (p′q″ - p″q′)′")
    return parse_rational(sympy.Rational(coefficient))


def dual_isomorphism_report(
    mu, eps, space: Optional[JetSpace] = None, limit: int = DEFAULT_WITNESS_LIMIT
) -> YBReport:
    """
    G(μ)* with the O-induced bracket against G(ε - μ) after (u, p) ↦ (p, u);
    the comparison is exact
    """
    mu_value, eps_value = parse_rational(mu), parse_rational(eps)
    dual = gmu_dual_bracket(mu_value, eps_value, space)
    target = gmu_bracket(eps_value - mu_value, dual.space)
    xi, eta = [[dual.space.jet(n) for n in pair] for pair in DUAL_NAMES]
    got = relabel_to_gmu(dual.bracket(xi, eta))
    expected = target.bracket(relabel_to_gmu(xi), relabel_to_gmu(eta))
    defect = DiffDefect(dual.space, [(f"component {k}", got[k] - expected[k]) for k in range(2)])
    coefficient = dual_bracket_coefficient(mu_value, eps_value, dual.space)
    return YBReport.from_defect(
        "gmu-dual-iso",
        defect,
        limit,
        target_mu=str(eps_value - mu_value),
        third_derivative_coefficient=str(coefficient),
    )


def coadjoint_derivation(
    algebra: DiffLieAlgebra, element: Sequence, names: Sequence[str], expr: sympy.Expr
) -> sympy.Expr:
    """X^∧(F) = Σ ∂F/∂ξ_k^(n) ∂^n((X·ξ)_k), with X independent of ξ"""
    space = algebra.space
    coelement = [space.jet(v) for v in names]
    images = coadjoint_action(algebra, element, coelement)
    total = sympy.Integer(0)
    for symbol, name, n in space.jet_symbols(expr):
        if name in names:
            total += sympy.diff(expr, symbol) * space.total_derivative(images[list(names).index(name)], n)
    return sympy.expand(total)


def variational_commutator_report(
    algebra: DiffLieAlgebra,
    density: sympy.Expr,
    names: Sequence[str],
    limit: int = DEFAULT_WITNESS_LIMIT,
) -> YBReport:
    """δ(X^∧H) - [δH, X] - X^∧(δH), exact, for a formal X"""
    space = algebra.space
    element = algebra.test_elements()[0]
    moved = coadjoint_derivation(algebra, element, names, density)
    lhs = space.gradient(moved, names)
    grad = space.gradient(density, names)
    commutator = algebra.bracket(grad, element)
    carried = [coadjoint_derivation(algebra, element, names, g) for g in grad]
    defect = DiffDefect(space, [(name, lhs[k] - commutator[k] - carried[k]) for k, name in enumerate(names)])
    return YBReport.from_defect("variational-commutator", defect, limit)
