import sys
from pathlib import Path
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.embedding import mirror_operator, permutation
from src.core.errors import PreconditionError, ShapeMismatchError
from src.core.hseries import HSeries
from src.core.linalg import identity, kron, matmul, matrix
from src.core.tensor import Tensor
from src.yang_baxter.relations import (
    artin_defect,
    artin_from_qybe,
    check_artin,
    check_artin_quasiclassical,
    check_qybe,
    classical_defect,
    qybe_defect,
    quasiclassical_defect,
    random_operator,
    random_skew_operator,
    unitarity_implies_skewness,
    unitarity_report,
)

seeds = st.integers(min_value=0, max_value=10 ** 6)


class TestArtinAndQybe:
    """Test the braid relation and the quantum Yang-Baxter equation"""

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_permutation_solves_artin(self, d):
        assert check_artin(permutation(d)).holds

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_identity_solves_qybe(self, d):
        assert check_qybe(identity(d * d)).holds

    def test_generic_operator_fails(self):
        """A non-solution reports a witness"""
        # R = a ⊗ b has defect a² ⊗ [b, a] ⊗ b²
        r = kron(matrix([[1, 0], [0, 2]]), matrix([[0, 1], [1, 0]]))
        report = check_qybe(r, limit=3)
        assert not report.holds
        assert 0 < len(report.witness) <= 3
        assert report.nonzero_count == qybe_defect(r).nonzero_count

    def test_non_square_dimension_refused(self):
        with pytest.raises(ShapeMismatchError):
            artin_defect(identity(3))

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_artin_of_pr_is_mirror_times_qybe(self, seed):
        """Artin(P R) = M QYBE(R), checked inside artin_from_qybe"""
        r = random_operator(2, Random(seed))
        report = artin_from_qybe(r)
        assert report.is_valid == check_qybe(r).holds
        assert artin_defect(matmul(permutation(2), r)) == matmul(mirror_operator(2), qybe_defect(r))


class TestQuasiclassical:
    """Test the h-expansion of the quantum equations"""

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_h_squared_coefficient_is_classical_defect(self, seed):
        """The h² coefficient is c(r) for any h² term"""
        rng = Random(seed)
        r = random_operator(2, rng)
        expected = classical_defect(r)
        for _ in range(3):
            rho = random_operator(2, rng)
            assert quasiclassical_defect(HSeries.perturbation(r, rho)) == expected

    def test_zeroth_coefficient_must_be_identity(self):
        series = HSeries([permutation(2), identity(4)])
        with pytest.raises(PreconditionError, match="identity"):
            quasiclassical_defect(series)

    def test_zero_rbar_solves_h_squared_artin(self):
        p = permutation(2)
        report = check_artin_quasiclassical(Tensor.zeros(p.shape), p)
        assert report.holds
        assert report.details["classical_holds"] is True

    @settings(max_examples=8, deadline=None)
    @given(seeds)
    def test_h_squared_artin_tracks_classical_equation(self, seed):
        """The h² Artin verdict agrees with c(P rbar) = 0"""
        p = permutation(2)
        rbar = random_skew_operator(2, Random(seed))
        report = check_artin_quasiclassical(rbar, p)
        assert report.holds == classical_defect(matmul(p, rbar)).is_zero()

    def test_requires_permutation(self):
        with pytest.raises(PreconditionError, match="permutation"):
            check_artin_quasiclassical(Tensor.zeros((4, 4)), identity(4))


class TestUnitarity:
    """Test S² = 1 through order h"""

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_skew_r_gives_unitary_s(self, seed):
        p = permutation(2)
        r = random_skew_operator(2, Random(seed))
        assert unitarity_implies_skewness(HSeries([p, matmul(p, r)]))

    def test_non_skew_r_is_not_unitary(self):
        p = permutation(2)
        report = unitarity_report(HSeries([p, identity(4)]))
        assert not report.is_valid

    def test_zeroth_coefficient_must_be_p(self):
        with pytest.raises(PreconditionError, match="permutation"):
            unitarity_report(HSeries([identity(4)]))
