import sys
from pathlib import Path
from random import Random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.errors import JetOrderExceeded, PreconditionError
from src.diffalg.diffop import DiffOp
from src.diffalg.gmu import (
    DUAL_NAMES,
    coadjoint_report,
    d1_cocycle_checks,
    dual_isomorphism_report,
    gmu_bracket,
    gmu_cocycle_checks,
    jacobi_report,
    o_operator_report,
    variational_commutator_report,
)
from src.diffalg.hamiltonian import (
    D1_NAMES,
    casimir_by_density,
    d1_casimir_check,
    d1_clebsch_images,
    d1_linear_matrix,
    gmu_hamiltonian_triple,
    hamiltonian_map_criterion,
    symplectic_matrix,
)
from src.diffalg.jets import JetSpace, im_partial_test, random_jet_polynomial
from src.diffalg.variational import DiffDefect, self_adjoint_frechet_defect

seeds = st.integers(min_value=0, max_value=10 ** 6)
NAMES = DUAL_NAMES[0]


@pytest.fixture
def space():
    return JetSpace()


class TestJets:
    """Test jet symbols, ∂ and the Euler operator"""

    def test_total_derivative(self, space):
        u0, u1, u2 = space.jets("u", 2)
        assert space.total_derivative(u0 ** 2) == 2 * u0 * u1
        assert space.total_derivative(u0 * u1, 1) == u1 ** 2 + u0 * u2
        assert space.total_derivative(sympy.Symbol("c")) == 0

    def test_rational_exponents(self, space):
        u0, u1 = space.jets("u", 1)
        assert space.total_derivative(sympy.sqrt(u0)) == u1 / (2 * sympy.sqrt(u0))

    def test_ceiling(self):
        small = JetSpace(max_order=2)
        with pytest.raises(JetOrderExceeded, match="exceeds ceiling 2"):
            small.total_derivative(small.jet("u", 2))
        with pytest.raises(ValueError):
            JetSpace(max_order=0)

    def test_parse(self, space):
        assert space.parse(sympy.Symbol("u_3")) == ("u", 3)
        assert space.parse(sympy.Symbol("c")) is None

    def test_euler_operator(self, space):
        u0, u1, u2 = space.jets("u", 2)
        assert space.variational_derivative(u0 * u2, "u") == 2 * u2
        assert space.variational_derivative(u1 ** 2, "u") == -2 * u2

    def test_substitute_is_differential(self, space):
        x0, x1 = space.jets("x", 1)
        assert space.substitute(space.jet("u", 1), {"u": x0 ** 2}) == 2 * x0 * x1

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_derivatives_are_in_image(self, seed):
        space = JetSpace()
        f = random_jet_polynomial(space, NAMES, Random(seed))
        derivative = space.total_derivative(f)
        assert im_partial_test(space, derivative)
        assert all(space.variational_derivative(derivative, n) == 0 for n in NAMES)

    def test_image_membership(self, space):
        u0, u1, u2 = space.jets("u", 2)
        assert im_partial_test(space, u1)
        assert im_partial_test(space, u0 * u1)
        assert not im_partial_test(space, u0)
        assert not im_partial_test(space, u0 * u2)
        # constants are excluded
        assert not im_partial_test(space, sympy.Integer(1))

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_frechet_of_gradient_is_self_adjoint(self, seed):
        space = JetSpace()
        density = random_jet_polynomial(space, NAMES, Random(seed), max_order=2)
        assert self_adjoint_frechet_defect(space, density, NAMES).is_zero()


class TestDiffOp:
    """Test matrix differential operators"""

    def test_adjoint_of_multiplied_derivative(self, space):
        u0, u1 = space.jets("u", 1)
        a = DiffOp.scalar(space, {1: u0})
        assert a.adjoint() == DiffOp.scalar(space, {0: -u1, 1: -u0})

    def test_compose(self, space):
        u0, u1 = space.jets("u", 1)
        d = DiffOp.scalar(space, {1: 1})
        assert d @ DiffOp.scalar(space, {0: u0}) == DiffOp.scalar(space, {0: u1, 1: u0})

    def test_d1_matrix_is_skew(self, space):
        b = d1_linear_matrix(space)
        assert (b + b.adjoint()).is_zero()

    def test_from_linear_images_requires_linearity(self, space):
        x = space.jet("X")
        with pytest.raises(PreconditionError, match="not linear"):
            DiffOp.from_linear_images(space, [x * space.jet("X", 1)], ["X"])
        with pytest.raises(PreconditionError, match="free of the test elements"):
            DiffOp.from_linear_images(space, [x + 1], ["X"])

    def test_unknown_defect_mode(self, space):
        with pytest.raises(ValueError, match="Unknown defect mode"):
            DiffDefect(space, [], mode="approximate")


class TestDifferentialAlgebras:
    """Test D₁, G(μ) and the O-operator on G(μ)*"""

    @pytest.mark.parametrize("mu", ["0", "1", "1/2", "-3"])
    def test_gmu_jacobi(self, space, mu):
        assert jacobi_report(gmu_bracket(mu, space)).holds

    def test_d1_cocycles(self, space):
        assert d1_cocycle_checks(space).is_valid

    @pytest.mark.parametrize("mu", ["0", "1"])
    def test_gmu_cocycles(self, space, mu):
        assert gmu_cocycle_checks(mu, space).is_valid

    @pytest.mark.parametrize("mu", ["0", "1", "2/3"])
    def test_coadjoint_closed_form(self, space, mu):
        assert coadjoint_report(mu, space).holds

    def test_o_operator(self, space):
        assert o_operator_report("2", space).is_valid

    @pytest.mark.parametrize("mu,eps", [("0", "1"), ("1", "2"), ("1/2", "3")])
    def test_dual_is_g_of_eps_minus_mu(self, space, mu, eps):
        report = dual_isomorphism_report(mu, eps, space)
        assert report.holds
        assert report.details["target_mu"] == str(sympy.Rational(eps) - sympy.Rational(mu))

    def test_variational_lemma(self, space):
        u0 = space.jet("u")
        p0, p1, p2 = space.jets("p", 2)
        density = u0 ** 2 + u0 * p1 + p0 * p2
        assert variational_commutator_report(gmu_bracket("1", space), density, NAMES).holds


class TestHamiltonianMatrices:
    """Test Casimirs, the Hamiltonian triple and Hamiltonian maps"""

    def test_square_root_is_casimir(self, space):
        density = sympy.sqrt(space.jet("u"))
        assert d1_casimir_check(density, space)
        assert casimir_by_density(density, space)

    def test_u_is_not_casimir(self, space):
        u = space.jet("u")
        assert not d1_casimir_check(u, space)
        assert not casimir_by_density(u, space)

    def test_triple(self, space):
        b0, b1, b2, report = gmu_hamiltonian_triple("1", "2", space)
        assert report.is_valid
        assert b0.shape == b1.shape == b2.shape == (2, 2)

    def test_clebsch_map_is_hamiltonian(self, space):
        report = hamiltonian_map_criterion(
            space, d1_clebsch_images(space), D1_NAMES, ("x", "p"), d1_linear_matrix(space), symplectic_matrix(space)
        )
        assert report.holds

    @pytest.mark.parametrize("factor,expected", [(0, True), (1, True), (2, False), (-1, False)])
    def test_scaling_maps(self, space, factor, expected):
        d1 = d1_linear_matrix(space)
        images = {"u": factor * space.jet("u")}
        assert hamiltonian_map_criterion(space, images, D1_NAMES, D1_NAMES, d1, d1).holds is expected
