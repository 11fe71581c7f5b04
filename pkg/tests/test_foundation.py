import sys
import json
import warnings
from fractions import Fraction
from pathlib import Path
from random import Random

import pytest
from hypothesis import given, settings, strategies as st

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.embedding import (
    braid_transport_defect,
    check_embedding_identities,
    embed_pair,
    mirror_factorizations,
    mirror_operator,
    pair_dim,
    permutation,
)
from src.core.errors import ConfigError, InternalConsistencyError, ManifestError, PreconditionError, ShapeMismatchError
from src.core.hseries import HSeries
from src.core.linalg import identity, inverse, is_invertible, is_skew, kron, matmul, matrix, rank, transpose
from src.core.tensor import PolyTensor, Tensor, tensor_product
from src.core.verification import VerificationReport, YBReport
from src.logging.decision_logger import DecisionLogger
from src.state.report import CheckResult, RunReport
from src.state.run_state import RunState
from src.utils.rationals import parse_rational, render_rational, render_value
from src.utils.settings import Settings
from src.yang_baxter.relations import random_operator

seeds = st.integers(min_value=0, max_value=10 ** 6)


class TestRationals:
    """Test exact rational parsing and rendering"""

    def test_parse_forms(self):
        """Integers, fractions and "p/q" text all parse to reduced Fractions"""
        assert parse_rational(3) == Fraction(3)
        assert parse_rational("6/4") == Fraction(3, 2)
        assert parse_rational(" -1/3 ") == Fraction(-1, 3)
        assert parse_rational(Fraction(2, 5)) == Fraction(2, 5)

    @pytest.mark.parametrize("bad", [0.5, True, "1.5", "1e3", "", "a/b", "1/0", None])
    def test_rejects_inexact(self, bad):
        """Floats, booleans and malformed text are refused"""
        with pytest.raises(ValueError, match="Not an exact rational"):
            parse_rational(bad)

    def test_render(self):
        """Integers render without a denominator"""
        assert render_rational(Fraction(-3, 4)) == "-3/4"
        assert render_rational(Fraction(4, 2)) == "2"
        assert render_value(Fraction(1, 3)) == "1/3"


class TestTensor:
    """Test sparse exact tensors"""

    def test_zero_entries_not_stored(self):
        """Zeros and cancelling entries leave no trace"""
        t = Tensor((2, 2), [((0, 0), 1), ((0, 0), -1), ((1, 1), 0), ((0, 1), "1/2")])
        assert t.nonzero_count == 1
        assert t[0, 1] == Fraction(1, 2)
        assert t[0, 0] == 0

    def test_items_are_lexicographic(self):
        """Iteration order does not depend on insertion order"""
        t = Tensor((3, 3), [((2, 0), 1), ((0, 2), 2), ((1, 1), 3)])
        assert [i for i, _ in t.items()] == [(0, 2), (1, 1), (2, 0)]

    def test_index_errors(self):
        """Wrong rank or out-of-range indices raise ShapeMismatchError"""
        t = Tensor.zeros((2, 2))
        with pytest.raises(ShapeMismatchError):
            t[0, 2]
        with pytest.raises(ShapeMismatchError):
            Tensor((2, 2), [((0,), 1)])
        with pytest.raises(ShapeMismatchError):
            t + Tensor.zeros((2, 3))

    def test_witness_renders_rationals(self):
        """Witness entries carry index lists and "p/q" values, capped by limit"""
        t = Tensor((3,), [((0,), "1/2"), ((1,), 2), ((2,), -1)])
        assert t.witness(2) == [{"indices": [0], "value": "1/2"}, {"indices": [1], "value": "2"}]

    def test_permute_and_dense(self):
        """Axis permutation transposes and dense rendering round-trips"""
        t = Tensor.from_dense([[1, 2], [3, 4]])
        assert t.permute_axes((1, 0)).to_dense() == [[1, 3], [2, 4]]
        assert Tensor.from_dense(t.to_dense()) == t

    def test_poly_tensor_expands(self):
        """Symbolic entries are expanded, so cancellation is detected"""
        p = PolyTensor((1,), [((0,), "(x + 1)**2 - x**2 - 2*x - 1")])
        assert p.is_zero()

    def test_tensor_product_shape(self):
        a = Tensor((2,), [((0,), 2)])
        b = Tensor((3,), [((1,), 3)])
        out = tensor_product(a, b)
        assert out.shape == (2, 3)
        assert out[0, 1] == 6


class TestLinalg:
    """Test exact linear algebra"""

    def test_inverse(self):
        a = matrix([[2, 1], [1, 1]])
        assert matmul(a, inverse(a)) == identity(2)

    def test_singular_refused(self):
        with pytest.raises(PreconditionError, match="singular"):
            inverse(matrix([[1, 2], [2, 4]]))
        assert not is_invertible(matrix([[1, 2], [2, 4]]))
        assert rank(matrix([[1, 2], [2, 4]])) == 1

    def test_rational_inverse_and_rectangular_rank(self):
        a = matrix([[Fraction(1, 2), 0, 0], [0, 0, 3], [0, Fraction(-1, 3), 0]])
        assert inverse(a) == matrix([[2, 0, 0], [0, 0, -3], [0, Fraction(1, 3), 0]])
        assert rank(matrix([[1, 2, 3], [2, 4, 6]])) == 1
        assert rank(matrix([[1, 0, 0], [0, 1, 0]])) == 2

    def test_kron_and_skew(self):
        a = matrix([[0, 1], [-1, 0]])
        assert is_skew(a)
        assert kron(identity(2), a).shape == (4, 4)
        assert transpose(a) == -a

    @settings(max_examples=15, deadline=None)
    @given(seeds)
    def test_inverse_of_random_invertible(self, seed):
        """A random invertible matrix times its inverse is the identity"""
        rng = Random(seed)
        a = matrix([[rng.randint(-2, 2) for _ in range(3)] for _ in range(3)])
        if is_invertible(a):
            assert matmul(inverse(a), a) == identity(3)


class TestEmbedding:
    """Test slot embeddings of operators on V⊗V"""

    def test_pair_dim(self):
        assert pair_dim(identity(9)) == 3
        with pytest.raises(ShapeMismatchError, match="perfect square"):
            pair_dim(identity(3))

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_mirror_factorizations(self, d):
        """Both braid words in P equal the mirror operator"""
        for value in mirror_factorizations(d).values():
            assert value == mirror_operator(d)

    @pytest.mark.parametrize("d", [2, 3])
    def test_permutation_squares_to_one(self, d):
        p = permutation(d)
        assert matmul(p, p) == identity(d * d)

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_embedding_identities_hold_for_any_operator(self, seed):
        """The slot-exchange identities hold whatever A is"""
        a = random_operator(2, Random(seed))
        for defect in check_embedding_identities(a, 2).values():
            assert defect.is_zero()

    @settings(max_examples=10, deadline=None)
    @given(seeds)
    def test_braid_transport_with_two_permutations(self, seed):
        """U23 V12 W23 = W12 V23 U12 when two of the three are P"""
        rng = Random(seed)
        p = permutation(2)
        a = random_operator(2, rng)
        assert braid_transport_defect(p, p, a, 2).is_zero()
        assert braid_transport_defect(a, p, p, 2).is_zero()

    def test_unknown_slot(self):
        with pytest.raises(ShapeMismatchError, match="Unknown slot"):
            embed_pair(identity(4), "14", 2)

    def test_wrong_size(self):
        with pytest.raises(ShapeMismatchError):
            embed_pair(identity(4), "12", 3)


class TestHSeries:
    """Test truncated power series in h"""

    def test_truncates_at_h_squared(self):
        """(1 + h a)(1 + h b) = 1 + h(a + b) + h² ab"""
        a, b = matrix([[1, 2], [0, 1]]), matrix([[0, 1], [1, 0]])
        product = HSeries([identity(2), a]) * HSeries([identity(2), b])
        assert product.coefficient(1) == a + b
        assert product.coefficient(2) == matmul(a, b)
        assert len(product.coeffs) == 3

    def test_shape_checks(self):
        with pytest.raises(ShapeMismatchError):
            HSeries([])
        with pytest.raises(ShapeMismatchError):
            HSeries([identity(2), identity(3)])

    def test_embedding(self):
        s = HSeries.perturbation(permutation(2), identity(4))
        assert s.embed("13", 2).coefficient(1) == embed_pair(permutation(2), "13", 2)


class TestVerificationReports:
    """Test the report models"""

    def test_from_defect(self):
        defect = Tensor((2,), [((1,), "1/2")])
        report = YBReport.from_defect("demo", defect, limit=5)
        assert not report.holds
        assert report.nonzero_count == 1
        assert report.witness == [{"indices": [1], "value": "1/2"}]
        assert "fails with 1" in report.get_summary()
        assert "defect" not in report.to_dict()

    def test_required_and_optional_parts(self):
        """Only failing required parts become violations"""
        report = VerificationReport(name="demo")
        failing = YBReport(relation_name="bad", holds=False)
        report.add_part("optional", failing, required=False)
        assert report.is_valid
        report.add_part("required", failing)
        assert not report.is_valid
        assert report.first_failure() is failing
        assert "1 violation" in report.get_summary()


class TestSettings:
    """Test settings from the environment and overrides"""

    def test_defaults(self):
        s = Settings.from_env(env={})
        assert s.max_jet_order == 12
        assert s.witness_limit == 10
        assert s.seed == 0
        assert s.log_decisions is True

    def test_environment_values(self):
        s = Settings.from_env(env={"OMATRIX_SEED": "7", "OMATRIX_LOG_DECISIONS": "no"})
        assert s.seed == 7
        assert s.log_decisions is False

    def test_invalid_values(self):
        with pytest.raises(ConfigError, match="max_jet_order"):
            Settings.from_env(env={"OMATRIX_MAX_JET_ORDER": "0"})
        with pytest.raises(ConfigError, match="boolean"):
            Settings.from_env(env={"OMATRIX_LOG_DECISIONS": "maybe"})

    def test_merged_overrides(self):
        """None leaves a value alone; unknown names are refused"""
        s = Settings.from_env(env={"OMATRIX_SEED": "3"}).merged(seed=None, witness_limit=4)
        assert s.seed == 3
        assert s.witness_limit == 4
        with pytest.raises(ConfigError, match="Unknown setting"):
            s.merged(colour="blue")

    def test_merged_reads_fields_from_the_class(self):
        s = Settings.from_env(env={})
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            assert s.merged(seed=5).seed == 5
            with pytest.raises(ConfigError, match="Unknown setting"):
                s.merged(colour="blue")


class TestDecisionLogger:
    """Test decision logging functionality"""

    def test_logger_creation(self, tmp_path):
        """Test that logger creates directories"""
        logger = DecisionLogger("session-1", log_dir=tmp_path)
        assert logger.log_dir.exists()
        assert logger.log_file == tmp_path / "session-1" / "decisions.jsonl"

    def test_log_and_read_back(self, tmp_path):
        logger = DecisionLogger("session-2", log_dir=tmp_path)
        logger.log_decision(
            component="jacobi",
            input_received={"requires": ["lie_algebra"]},
            reasoning_steps=["Algebra sl2 of dimension 3"],
            decision_made="pass",
            output_produced={"nonzero_count": 0},
            wall_time=0.25,
        )
        logger.log_routing({"completed": 1}, "o-operator", ["jacobi passed"])
        logger.log_error("cybe", "r must be skew")

        logs = logger.get_session_logs()
        assert len(logs) == 3
        assert logs[0]["decision"] == "pass"
        assert logs[0]["wall_time"] == 0.25
        assert logs[1]["component"] == "orchestrator"
        assert logs[1]["decision"] == "Route to o-operator"
        assert len(logger.get_component_decisions("jacobi")) == 1
        assert logger.get_errors()[0]["error"] == "r must be skew"
        summary = logger.summary()
        assert summary["total_decisions"] == 3
        assert summary["errors"] == 1
        assert summary["verdicts"] == {"pass": 1, "fail": 0, "skipped": 0}
        assert logger.get_verdicts() == {"jacobi": "pass"}

    def test_truncation(self, tmp_path):
        """Inputs and outputs are cut at 1000 characters"""
        logger = DecisionLogger("session-3", log_dir=tmp_path)
        logger.log_decision("c", "x" * 5000, [], "pass", "y" * 5000)
        entry = logger.get_session_logs()[0]
        assert len(entry["input"]) == 1000
        assert len(entry["output"]) == 1000

    def test_disabled_logger_writes_nothing(self, tmp_path):
        logger = DecisionLogger("session-4", log_dir=tmp_path, enabled=False)
        logger.log_decision("c", "in", [], "pass", "out")
        assert not (tmp_path / "session-4").exists()
        assert logger.get_session_logs() == []


class TestReports:
    """Test check results and run reports"""

    def _results(self):
        return [
            CheckResult(name="jacobi", title="Jacobi", verdict="pass", wall_time=0.5),
            CheckResult(
                name="cybe",
                title="CYBE",
                verdict="fail",
                witness=[{"indices": [0, 1, 2], "value": "-2"}],
                nonzero_count=3,
                message="cybe: fails with 3 nonzero defect entries",
                wall_time=0.25,
            ),
        ]

    def test_exit_code_and_counts(self):
        report = RunReport(manifest="demo.json", seed=0)
        for result in self._results():
            report.add_result(result)
        assert report.exit_code == 1
        assert report.counts() == {"pass": 1, "fail": 1, "skipped": 0}

    def test_json_is_deterministic_and_timing_free(self):
        """Wall time appears only with timings; rendering is byte-stable"""
        report = RunReport(manifest="demo.json", seed=0)
        for result in self._results():
            report.add_result(result)
        first = report.to_json()
        assert first == report.to_json()
        data = json.loads(first)
        assert data["schema"] == "omatrix/1"
        assert all("wall_time" not in r for r in data["results"])
        timed = json.loads(report.to_json(timings=True))
        assert timed["results"][0]["wall_time"] == 0.5

    def test_text(self):
        report = RunReport(manifest="demo.json", seed=0)
        for result in self._results():
            report.add_result(result)
        text = report.to_text()
        assert "PASS jacobi" in text
        assert "FAIL cybe" in text
        assert "[0, 1, 2] = -2" in text
        assert "1 passed, 1 failed, 0 skipped" in text


class TestRunState:
    """Test run state management"""

    def test_state_creation(self):
        state = RunState(session_id="run-001")
        assert state.plan == []
        assert state.results == {}
        assert state.current_check == "orchestrator"

    def test_pending_and_verdicts(self):
        state = RunState(session_id="run-002", requested=["o-operator"], plan=["jacobi", "o-operator"])
        state.add_result(CheckResult(name="jacobi", title="Jacobi", verdict="pass"))
        assert state.pending() == ["o-operator"]
        assert state.verdict_of("jacobi") == "pass"
        assert state.verdict_of("o-operator") is None
        assert [r.name for r in state.ordered_results()] == ["jacobi"]

    def test_json_serialization(self):
        state = RunState(session_id="run-003", plan=["jacobi"])
        state.add_result(CheckResult(name="jacobi", title="Jacobi", verdict="pass"))
        state.add_decision("orchestrator", "route_to_jacobi", ["no prerequisites"])
        restored = RunState.from_json(state.to_json())
        assert restored.results["jacobi"].verdict == "pass"
        assert restored.decision_log[0]["decision"] == "route_to_jacobi"


class TestErrors:
    """Test error types"""

    def test_manifest_error_carries_paths(self):
        exc = ManifestError("Invalid manifest", ["r_matrix.dense[0][0]"])
        assert exc.paths == ["r_matrix.dense[0][0]"]
        assert "r_matrix.dense[0][0]" in str(exc)
        assert isinstance(exc, ValueError)

    def test_consistency_error_is_not_value_error(self):
        assert not issubclass(InternalConsistencyError, ValueError)
