import sys
from pathlib import Path

import pytest
import sympy

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.clebsch.action import check_phase_action, leibniz_defect, phase_action
from src.clebsch.phase import (
    PhaseRing,
    clebsch_hamiltonian_report,
    clebsch_map,
    dual_sum_bracket,
    quadratic_phase_bracket,
    swapped_bracket,
    symplectic_bracket,
)
from src.core.errors import PreconditionError, ShapeMismatchError, VerificationFailure
from src.core.linalg import identity
from src.core.tensor import Tensor
from src.lie.algebra import borel_sl2, sl2, two_dim_nonabelian
from src.lie.representation import adjoint_rep, coadjoint_rep, fundamental_sl2
from src.poisson.ring import compatibility_defect, jacobi_defect

H_WEDGE_E = Tensor((3, 3), [((0, 1), 1), ((1, 0), -1)])
H_WEDGE_F = Tensor((3, 3), [((0, 2), 1), ((2, 0), -1)])
E_WEDGE_F = Tensor((3, 3), [((1, 2), 1), ((2, 1), -1)])


@pytest.fixture
def algebra():
    return sl2()


@pytest.fixture
def modules(algebra):
    return [fundamental_sl2(algebra), adjoint_rep(algebra), coadjoint_rep(algebra)]


class TestClebschMap:
    """Test the map u ↦ x∇p"""

    def test_fundamental_images(self, algebra):
        phi = clebsch_map(algebra, fundamental_sl2(algebra))
        x0, x1, p0, p1 = phi.target.symbols
        assert phi.images == [x0 * p0 - x1 * p1, x1 * p0, x0 * p1]

    def test_linear_to_symplectic(self, algebra, modules):
        for rep in modules:
            report = clebsch_hamiltonian_report(algebra, rep)
            assert report.is_valid
            assert list(report.parts) == ["linear-to-symplectic"]

    @pytest.mark.parametrize("r", [H_WEDGE_E, H_WEDGE_F])
    def test_quadratic_to_phase(self, algebra, modules, r):
        for rep in modules:
            assert clebsch_hamiltonian_report(algebra, rep, r).is_valid

    def test_module_must_match_algebra(self):
        with pytest.raises(ShapeMismatchError):
            clebsch_map(sl2(), adjoint_rep(borel_sl2()))
        with pytest.raises(PreconditionError, match="different algebra"):
            clebsch_map(borel_sl2(), adjoint_rep(two_dim_nonabelian()))

    def test_empty_phase_space(self):
        with pytest.raises(ShapeMismatchError):
            PhaseRing(0)


class TestPhaseBrackets:
    """Test the quadratic bracket on V ⊕ V*"""

    def test_symplectic_bracket(self):
        p = symplectic_bracket(2)
        x0, x1, p0, p1 = p.ring.symbols
        assert p.bracket(x0, p0) == 1
        assert p.bracket(x0, p1) == 0
        assert jacobi_defect(p).is_zero()

    @pytest.mark.parametrize("r", [H_WEDGE_E, H_WEDGE_F])
    def test_phase_bracket_is_poisson_and_compatible(self, algebra, modules, r):
        for rep in modules:
            quadratic = quadratic_phase_bracket(algebra, rep, r)
            assert jacobi_defect(quadratic).is_zero()
            assert quadratic.antisymmetry_defect().is_zero()
            symplectic = symplectic_bracket(rep.dim, quadratic.ring)
            assert compatibility_defect(quadratic, symplectic).is_zero()

    def test_phase_bracket_refusals(self, algebra):
        rep = fundamental_sl2(algebra)
        with pytest.raises(PreconditionError, match="skew"):
            quadratic_phase_bracket(algebra, rep, identity(3))
        with pytest.raises(VerificationFailure):
            quadratic_phase_bracket(algebra, rep, E_WEDGE_F)

    def test_rebuilt_brackets_agree(self, algebra, modules):
        for rep in modules:
            original = quadratic_phase_bracket(algebra, rep, H_WEDGE_E)
            assert swapped_bracket(algebra, rep, H_WEDGE_E).pi == original.pi
            assert dual_sum_bracket(algebra, rep, H_WEDGE_E).pi == original.pi


class TestPhaseAction:
    """Test the module action on phase space"""

    def test_action_images(self, algebra):
        rep = fundamental_sl2(algebra)
        ring = PhaseRing(2)
        x0, x1, p0, p1 = ring.symbols
        # e·v1 = v0
        assert phase_action(rep, ring, 1) == [x1, sympy.Integer(0), sympy.Integer(0), -p0]

    @pytest.mark.parametrize("r", [H_WEDGE_E, H_WEDGE_F])
    def test_action_is_poisson(self, algebra, modules, r):
        for rep in modules:
            assert check_phase_action(algebra, rep, r).holds

    def test_leibniz(self, algebra, modules):
        for rep in modules:
            assert leibniz_defect(algebra, rep).is_zero()
