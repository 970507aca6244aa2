import numpy as np
import pytest

import jjcavity as jc
from jjcavity.model import j_matrix, sigma_matrix, validate_model


class TestJSigma:
    def test_j_n1(self):
        assert np.array_equal(j_matrix(1), np.diag([1.0, -1.0]))

    def test_sigma_n2_positions(self):
        sig = sigma_matrix(2)
        expected = np.zeros((4, 4))
        for i, j in [(0, 2), (1, 3), (2, 0), (3, 1)]:
            expected[i, j] = 1.0
        assert np.array_equal(sig, expected)

    @pytest.mark.parametrize("n", range(1, 9))
    def test_identities_exact(self, n):
        J, sig = j_matrix(n), sigma_matrix(n)
        eye = np.eye(2 * n)
        assert np.array_equal(J @ J, eye)
        assert np.array_equal(sig @ sig, eye)
        assert np.array_equal(J @ sig + sig @ J, np.zeros((2 * n, 2 * n)))

    def test_bad_n(self):
        with pytest.raises(ValueError):
            j_matrix(0)
        with pytest.raises(ValueError):
            sigma_matrix(-1)


class TestValidateModel:
    def test_builder_output_is_clean(self, paper_model):
        assert validate_model(paper_model) == []

    def test_zero_model_is_clean(self):
        m = jc.SystemModel(
            n_modes=2, M=np.zeros((4, 4)), N=np.zeros((4, 4)),
            Etilde=np.zeros((1, 4)), gamma=1.0,
        )
        assert validate_model(m) == []

    def test_nonsymmetric_m2_named(self, paper_model):
        M = paper_model.M.copy()
        M[0, 3] += 0.1 * np.max(np.abs(M))          # breaks M2 = M2^T
        m = jc.SystemModel(
            n_modes=2, M=M, N=paper_model.N, Etilde=paper_model.Etilde,
            gamma=paper_model.gamma,
        )
        violations = validate_model(m)
        assert any("M2 transpose-symmetry" in v for v in violations)

    def test_dimension_mismatch_is_hard_error(self):
        with pytest.raises(ValueError, match="must be"):
            jc.SystemModel(
                n_modes=2, M=np.zeros((3, 3)), N=np.zeros((4, 4)),
                Etilde=np.zeros((1, 4)), gamma=1.0,
            )

    def test_bad_constants_reported(self):
        m = jc.SystemModel(
            n_modes=1, M=np.zeros((2, 2)), N=np.zeros((2, 2)),
            Etilde=np.zeros((1, 2)), gamma=-1.0, delta1=-0.5,
        )
        violations = validate_model(m)
        assert any("gamma" in v for v in violations)
        assert any("delta1" in v for v in violations)

    def test_idempotent_and_pure(self, paper_model):
        assert validate_model(paper_model) == validate_model(paper_model)

    def test_negative_tol_rejected(self, paper_model):
        with pytest.raises(ValueError):
            validate_model(paper_model, tol=-1e-9)


class TestSerialization:
    def test_round_trip_bit_for_bit(self, paper_model):
        again = jc.SystemModel.from_json(paper_model.to_json())
        assert np.array_equal(again.M, paper_model.M)
        assert np.array_equal(again.N, paper_model.N)
        assert np.array_equal(again.Etilde, paper_model.Etilde)
        assert again.gamma == paper_model.gamma
        assert again.delta1 == paper_model.delta1
        assert again.delta2 == paper_model.delta2
        assert again.to_json() == paper_model.to_json()

    def test_round_trip_random(self):
        rng = np.random.default_rng(3)
        from conftest import make_random_model

        m = make_random_model(rng)
        again = jc.SystemModel.from_json(m.to_json())
        assert np.array_equal(again.M, m.M)
        assert np.array_equal(again.Etilde, m.Etilde)
