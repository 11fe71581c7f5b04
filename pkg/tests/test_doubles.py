import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.tensor import Tensor
from src.doubles.crossed import (
    DoubleAlgebra,
    crossed_bracket,
    o_induced_double,
    symplectic_cocycle_on_crossed,
)
from src.doubles.semidirect import (
    BilinearProduct,
    coadjoint_on_double_dual,
    matrix_product,
    o_from_symplectic,
    quasiassociative_check,
    quasiassociative_from_rep,
    representation_from_quasiassociative,
    scalar_product,
    semidirect_sum,
    symplectic_cocycle_criterion,
    symplectic_double,
)
from src.lie.algebra import abelian, borel_sl2, gl_n, sl2, structure_from_brackets
from src.lie.representation import coadjoint_rep, fundamental_sl2

H_WEDGE_E = Tensor((3, 3), [((0, 1), 1), ((1, 0), -1)])


def lopsided_product() -> BilinearProduct:
    """e0 e1 = e0, every other product zero"""
    return BilinearProduct(Tensor((2, 2, 2), [((0, 1, 0), 1)]), name="lopsided")


class TestQuasiassociative:
    """Test quasiassociative products and their modules"""

    @pytest.mark.parametrize("build", [lambda: matrix_product(2), scalar_product])
    def test_associative_products_pass(self, build):
        report = quasiassociative_check(build())
        assert report.is_valid
        assert report.details["commutator_jacobi"] is True

    def test_lopsided_product_fails(self):
        report = quasiassociative_check(lopsided_product())
        assert not report.is_valid
        assert report.details["commutator_jacobi"] is True
        with pytest.raises(PreconditionError, match="not quasiassociative"):
            representation_from_quasiassociative(lopsided_product())

    def test_commutator_of_matrices_is_gl2(self):
        assert matrix_product(2).commutator().c == gl_n(2).c

    def test_module_and_product_correspond(self):
        product = matrix_product(2)
        rep = representation_from_quasiassociative(product)
        assert quasiassociative_from_rep(rep).m == product.m

    def test_product_from_small_module_refused(self):
        with pytest.raises(ShapeMismatchError):
            quasiassociative_from_rep(fundamental_sl2())


class TestSemidirect:
    """Test G ⋉ G* and the canonical symplectic form on it"""

    @pytest.mark.parametrize("build", [sl2, borel_sl2, lambda: gl_n(2)])
    def test_coadjoint_semidirect_is_lie(self, build):
        g = build()
        double = semidirect_sum(g, coadjoint_rep(g))
        assert double.is_lie()
        assert double.provenance == "semidirect"
        rep, report = coadjoint_on_double_dual(double)
        assert report.holds
        assert rep.dim == 2 * g.dim

    def test_module_dimension_must_match(self):
        with pytest.raises(ShapeMismatchError):
            semidirect_sum(sl2(), fundamental_sl2())

    def test_cocycle_criterion(self):
        product = matrix_product(2)
        g = product.commutator()
        assert symplectic_cocycle_criterion(g, representation_from_quasiassociative(product)).is_valid
        # ad(x)y - ad(y)x = 2[x, y]
        assert not symplectic_cocycle_criterion(g, coadjoint_rep(g)).is_valid

    def test_symplectic_double(self):
        double_product, double = symplectic_double(matrix_product(2))
        assert double_product.dim == 8
        assert double.provenance == "symplectic-double"
        assert double.is_lie()

    def test_symplectic_double_refuses_lopsided(self):
        with pytest.raises(PreconditionError):
            symplectic_double(lopsided_product())

    def test_o_from_symplectic(self):
        product = matrix_product(2)
        g = product.commutator()
        result = o_from_symplectic(g, representation_from_quasiassociative(product))
        assert result.report.is_valid
        assert result.induced.carrier_dim == 8
        with pytest.raises(PreconditionError, match="2-cocycle"):
            o_from_symplectic(g, coadjoint_rep(g))


class TestCrossed:
    """Test crossed brackets on G ⊕ G*"""

    def test_zero_dual_bracket_is_semidirect(self):
        g = sl2()
        double = crossed_bracket(g, Tensor.zeros((3, 3, 3)))
        assert double.is_lie()
        assert double.bracket == semidirect_sum(g, coadjoint_rep(g)).bracket

    def test_dual_bracket_must_be_antisymmetric(self):
        with pytest.raises(PreconditionError, match="antisymmetric"):
            crossed_bracket(borel_sl2(), Tensor((2, 2, 2), [((0, 1, 0), 1)]))

    @settings(max_examples=50, deadline=None)
    @given(st.integers(min_value=-2, max_value=2), st.integers(min_value=-2, max_value=2))
    def test_quadrilinear_criterion_agrees(self, x, y):
        """Construction cross-checks the direct verdict against the criterion"""
        dual = structure_from_brackets(2, {(0, 1): {0: x, 1: y}})
        double = crossed_bracket(borel_sl2(), dual)
        parts = double.report.parts
        assert parts["jacobi"].holds == parts["quadrilinear"].holds

    def test_o_induced_double(self):
        double, identity = o_induced_double(sl2(), H_WEDGE_E)
        assert identity.holds
        assert double.is_lie()

    def test_o_induced_double_needs_skew_r(self):
        with pytest.raises(PreconditionError, match="skew"):
            o_induced_double(sl2(), Tensor((3, 3), [((0, 1), 1)]))

    def test_canonical_form_on_crossed(self):
        flat = crossed_bracket(abelian(2), Tensor.zeros((2, 2, 2)))
        report = symplectic_cocycle_on_crossed(flat)
        assert report.holds
        assert report.details["both_abelian"] is True
        curved = symplectic_cocycle_on_crossed(crossed_bracket(sl2(), Tensor.zeros((3, 3, 3))))
        assert not curved.holds

    def test_canonical_form_needs_crossed_provenance(self):
        g = sl2()
        with pytest.raises(PreconditionError, match="crossed"):
            symplectic_cocycle_on_crossed(semidirect_sum(g, coadjoint_rep(g)))

    def test_unknown_provenance(self):
        with pytest.raises(ValueError, match="Unknown provenance"):
            DoubleAlgebra(1, Tensor.zeros((2, 2, 2)), "twisted")
