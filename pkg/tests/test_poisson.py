import sys
from fractions import Fraction
from pathlib import Path
from random import Random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.errors import PreconditionError, ShapeMismatchError, VerificationFailure
from src.core.linalg import identity, matrix
from src.core.tensor import Tensor
from src.lie.algebra import abelian, borel_sl2, gl_n, sl2
from src.lie.homomorphisms import random_homomorphism
from src.lie.o_operator import r_to_operator
from src.poisson.action import check_infinitesimal_action
from src.poisson.maps import RingMap, check_hamiltonian_map, natural_map, naturality_report
from src.poisson.ring import (
    PoissonStructure,
    PolyRing,
    casimir_defect,
    compatibility_defect,
    full_jacobi,
    jacobi_defect,
    random_polynomial,
)
from src.poisson.structures import (
    affine_poisson,
    coadjoint_invariant_defect,
    coboundary,
    constant_poisson,
    linear_poisson,
    quadratic_casimir,
    quadratic_poisson,
    variational_commutator_defect,
)

seeds = st.integers(min_value=0, max_value=10 ** 6)

H_WEDGE_E = Tensor((3, 3), [((0, 1), 1), ((1, 0), -1)])
E_WEDGE_F = Tensor((3, 3), [((1, 2), 1), ((2, 1), -1)])


class TestPolyRing:
    """Test polynomial rings and coordinate brackets"""

    def test_duplicate_names_refused(self):
        with pytest.raises(ShapeMismatchError):
            PolyRing(["x", "x"])

    def test_bracket_is_leibniz_extension(self):
        ring = PolyRing(["x", "y"])
        x, y = ring.symbols
        p = PoissonStructure(ring, [[0, 1], [-1, 0]])
        assert p.bracket(x ** 2, y) == 2 * x
        assert p.bracket(x * y, x * y) == 0

    def test_wrong_matrix_size(self):
        with pytest.raises(ShapeMismatchError):
            PoissonStructure(PolyRing(["x", "y"]), [[0]])

    def test_non_skew_matrix_refused(self):
        ring = PolyRing(["x", "y"])
        x, _ = ring.symbols
        with pytest.raises(PreconditionError, match="not skew"):
            PoissonStructure(ring, [[0, x], [x, 0]], name="symmetric")
        with pytest.raises(PreconditionError, match="not skew"):
            PoissonStructure(ring, [[1, 0], [0, 0]])

    def test_sum_needs_same_ring(self):
        with pytest.raises(ShapeMismatchError):
            PoissonStructure.zero(PolyRing(["x"])) + PoissonStructure.zero(PolyRing(["y"]))


class TestLinearAndQuadratic:
    """Test the brackets built from structure constants and r"""

    @pytest.mark.parametrize("build", [sl2, borel_sl2, lambda: gl_n(2)])
    def test_linear_bracket_is_poisson(self, build):
        p = linear_poisson(build())
        assert jacobi_defect(p).is_zero()
        assert p.antisymmetry_defect().is_zero()

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_linear_jacobi_on_polynomials(self, seed):
        rng = Random(seed)
        p = linear_poisson(sl2())
        h, f, g = (random_polynomial(p.ring, rng) for _ in range(3))
        assert full_jacobi(p, h, f, g) == 0

    def test_linear_entries(self):
        p = linear_poisson(sl2())
        u0, u1, u2 = p.ring.symbols
        assert p.pi[0][1] == 2 * u1
        assert p.pi[1][2] == u0

    def test_quadratic_bracket_of_triangular_r(self):
        g = sl2()
        p = quadratic_poisson(g, H_WEDGE_E)
        assert jacobi_defect(p).is_zero()
        assert p.antisymmetry_defect().is_zero()
        assert compatibility_defect(linear_poisson(g), p).is_zero()

    def test_quadratic_refusals(self):
        g = sl2()
        with pytest.raises(PreconditionError, match="skew"):
            quadratic_poisson(g, identity(3))
        with pytest.raises(VerificationFailure):
            quadratic_poisson(g, E_WEDGE_F)

    def test_compatible_sum_is_poisson(self):
        g = sl2()
        total = linear_poisson(g) + quadratic_poisson(g, H_WEDGE_E).scale(3)
        assert jacobi_defect(total).is_zero()


class TestConstantAndAffine:
    """Test the constant and affine brackets"""

    def test_constant_bracket(self):
        g = borel_sl2()
        r = matrix([[0, 1], [-1, 0]])
        p = constant_poisson(g, r, eps=2)
        assert jacobi_defect(p).is_zero()
        assert p.pi[0][1] == 2
        assert compatibility_defect(p, linear_poisson(g)).is_zero()

    def test_constant_needs_invertible_r(self):
        with pytest.raises(PreconditionError, match="invertible"):
            constant_poisson(sl2(), H_WEDGE_E)

    @settings(max_examples=10, deadline=None)
    @given(st.lists(st.integers(min_value=-3, max_value=3), min_size=4, max_size=4))
    def test_coboundary_gives_affine_bracket(self, xi):
        g = gl_n(2)
        p = affine_poisson(g, coboundary(g, xi))
        assert jacobi_defect(p).is_zero()
        assert compatibility_defect(p, linear_poisson(g)).is_zero()

    def test_affine_refusals(self):
        g = gl_n(2)
        with pytest.raises(PreconditionError, match="skew"):
            affine_poisson(g, identity(4))
        # E00∧E11 is not a cocycle on gl2
        with pytest.raises(PreconditionError, match="cocycle"):
            affine_poisson(g, Tensor((4, 4), [((0, 3), 1), ((3, 0), -1)]))


class TestCasimirs:
    """Test the Killing Casimir"""

    def test_sl2_casimir(self):
        g = sl2()
        casimir = quadratic_casimir(g)
        u0, u1, u2 = PolyRing.dual_coordinates(3).symbols
        assert sympy.expand(casimir - (u0 ** 2 / 8 + u1 * u2 / 2)) == 0
        assert coadjoint_invariant_defect(g, casimir).is_zero()
        assert casimir_defect(linear_poisson(g), casimir).is_zero()
        assert casimir_defect(quadratic_poisson(g, H_WEDGE_E), casimir).is_zero()

    def test_degenerate_killing_form(self):
        with pytest.raises(VerificationFailure, match="degenerate"):
            quadratic_casimir(borel_sl2())

    def test_coordinate_is_not_casimir(self):
        g = sl2()
        assert not casimir_defect(linear_poisson(g), PolyRing.dual_coordinates(3).symbols[0]).is_zero()


class TestActionAndMaps:
    """Test the coadjoint action and Hamiltonian ring maps"""

    def test_action_modes(self):
        g = sl2()
        assert check_infinitesimal_action(g, "linear").holds
        assert check_infinitesimal_action(g, "affine", b=coboundary(g, [1, -1, 2])).holds
        assert check_infinitesimal_action(g, "quadratic", r=H_WEDGE_E).holds

    def test_action_refusals(self):
        g = sl2()
        with pytest.raises(PreconditionError, match="Unknown action mode"):
            check_infinitesimal_action(g, "cubic")
        with pytest.raises(PreconditionError, match="needs r"):
            check_infinitesimal_action(g, "quadratic")

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_variational_commutator(self, seed):
        rng = Random(seed)
        g = sl2()
        ring = PolyRing.dual_coordinates(3)
        h = random_polynomial(ring, rng)
        x = [Fraction(rng.randint(-2, 2)) for _ in range(3)]
        assert variational_commutator_defect(g, h, x, ring).is_zero()

    def test_identity_map_is_hamiltonian(self):
        p = linear_poisson(sl2())
        phi = RingMap(p.ring, p.ring, p.ring.symbols)
        assert check_hamiltonian_map(phi, p, p).holds

    def test_scaling_map_is_not_hamiltonian(self):
        p = linear_poisson(sl2())
        phi = RingMap(p.ring, p.ring, [2 * s for s in p.ring.symbols])
        report = check_hamiltonian_map(phi, p, p, limit=2)
        assert not report.holds
        assert len(report.witness) == 2

    def test_ring_map_variables_checked(self):
        ring = PolyRing(["x"])
        with pytest.raises(ShapeMismatchError, match="outside the target ring"):
            RingMap(ring, ring, [sympy.Symbol("z")])

    def test_natural_map_needs_homomorphism(self):
        g = sl2()
        with pytest.raises(PreconditionError, match="homomorphism"):
            natural_map(matrix([[1, 0, 0], [0, 2, 0], [0, 0, 1]]), g, g)

    @settings(max_examples=30, deadline=None)
    @given(seeds)
    def test_natural_map_is_hamiltonian(self, seed):
        sample = random_homomorphism(Random(seed))
        report = naturality_report(sample.phi, sample.operator, sample.target)
        assert report.is_valid
        assert "quadratic" in report.parts

    def test_abelian_linear_samples_are_natural(self):
        rng = Random(3)
        seen = 0
        while seen < 5:
            sample = random_homomorphism(rng)
            if sample.label != "abelian-linear":
                continue
            seen += 1
            assert naturality_report(sample.phi, sample.operator, sample.target).is_valid

    def test_non_skew_r_checks_linear_part_only(self):
        """Any r is an O-operator on an abelian algebra; only skew r has a quadratic bracket"""
        g = abelian(2)
        report = naturality_report(identity(2), r_to_operator(g, identity(2)), g)
        assert report.is_valid
        assert set(report.parts) == {"linear"}
        assert report.details["quadratic"].startswith("not applicable")
