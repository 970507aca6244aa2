import numpy as np
import pytest

import jjcavity as jc
from jjcavity.builder import build_coupling, build_model
from jjcavity.stability import (
    StateSpace,
    build_F,
    certify,
    hinf_norm,
    is_hurwitz,
    spectral_abscissa,
    state_space,
    transfer_eval,
)

from conftest import dense_grid_norm, make_random_model, random_params


class TestBuildF:
    def test_zero_system(self):
        m = jc.SystemModel(
            n_modes=2, M=np.zeros((4, 4)), N=np.zeros((4, 4)),
            Etilde=np.zeros((1, 4)), gamma=1.0,
        )
        assert np.array_equal(build_F(m), np.zeros((4, 4)))

    def test_pure_damping(self):
        # with N2 = 0 the JN^dag JN term collapses to the diagonal decay rates
        k1, k2 = 3.0, 11.0
        m = jc.SystemModel(
            n_modes=2, M=np.zeros((4, 4)), N=build_coupling(k1, k2),
            Etilde=np.zeros((1, 4)), gamma=1.0,
        )
        F = build_F(m)
        assert np.allclose(F, -np.diag([k1 / 2, k2 / 2, k1 / 2, k2 / 2]))

    def test_paper_real_parts(self, paper_model):
        ev = np.linalg.eigvals(build_F(paper_model))
        reals = np.sort(ev.real)
        assert reals[0] == pytest.approx(-1.25e12, rel=1e-3)
        assert reals[1] == pytest.approx(-1.25e12, rel=1e-3)
        assert reals[2] == pytest.approx(-5.0000e10, rel=1e-3)
        assert reals[3] == pytest.approx(-5.0000e10, rel=1e-3)

    def test_spectrum_conjugate_closed(self):
        # the block symmetry of M, N forces a spectrum closed under
        # conjugation; defective pairs leave O(sqrt(eps)) eig noise
        rng = np.random.default_rng(29)
        for _ in range(20):
            ev = np.linalg.eigvals(build_F(build_model(random_params(rng))))
            scale = max(1.0, np.max(np.abs(ev)))
            for z in ev:
                assert np.min(np.abs(ev - np.conj(z))) < 1e-6 * scale


class TestHurwitz:
    def test_minus_identity(self):
        F = -np.eye(3)
        assert spectral_abscissa(F) == pytest.approx(-1.0)
        assert is_hurwitz(F)

    def test_zero_marginal(self):
        F = np.zeros((3, 3))
        assert spectral_abscissa(F) == 0.0
        assert not is_hurwitz(F)

    def test_paper_abscissa(self, paper_model):
        assert spectral_abscissa(build_F(paper_model)) == pytest.approx(-5.0000e10, rel=1e-3)


class TestTransferEval:
    def test_identity_pole(self):
        rng = np.random.default_rng(1)
        b = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        b /= np.linalg.norm(b)
        c = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        c /= np.linalg.norm(c)
        ss = StateSpace(A=-np.eye(3), B=b, C=c)
        assert transfer_eval(ss, 0.0) == pytest.approx(complex(c @ b))

    def test_strictly_proper_decay(self, paper_model):
        # |G(s)| ~ |C B| / s for large s; |C B| = 1/2 here
        ss = state_space(paper_model)
        assert abs(transfer_eval(ss, 1e20)) == pytest.approx(0.5e-20, rel=1e-6)

    def test_singularity_raises(self):
        ss = StateSpace(A=np.diag([-1.0 + 2.0j]), B=[[1.0]], C=[[1.0]])
        with pytest.raises(np.linalg.LinAlgError):
            transfer_eval(ss, -1.0 + 2.0j)


class TestHinfNorm:
    def test_scalar_lag(self):
        ss = StateSpace(A=[[-2.0]], B=[[1.0]], C=[[1.0]])
        norm, freq = hinf_norm(ss)
        assert norm == pytest.approx(0.5, rel=1e-6)
        assert abs(freq) < 1e-3

    def test_paper_value(self, paper_certificate):
        assert paper_certificate.hinf_norm == pytest.approx(5.5554e-13, rel=1e-3)

    def test_not_hurwitz_rejected(self):
        ss = StateSpace(A=[[1.0]], B=[[1.0]], C=[[1.0]])
        with pytest.raises(ValueError, match="Hurwitz"):
            hinf_norm(ss)

    def test_against_dense_grid(self):
        rng = np.random.default_rng(101)
        for _ in range(10):
            ss = state_space(make_random_model(rng))
            norm, _ = hinf_norm(ss, rel_tol=1e-7)
            oracle, _ = dense_grid_norm(ss, n_points=200_000)
            assert norm == pytest.approx(oracle, rel=1e-4)

    def test_lower_bound_soundness(self):
        rng = np.random.default_rng(41)
        ss = state_space(make_random_model(rng))
        norm, _ = hinf_norm(ss, rel_tol=1e-7)
        for w in np.concatenate([np.logspace(-3, 3, 200), -np.logspace(-3, 3, 200)]):
            assert abs(transfer_eval(ss, 1j * w)) <= norm * (1.0 + 1e-6)


class TestCertify:
    def test_paper_certified(self, paper_certificate):
        assert paper_certificate.hurwitz
        assert paper_certificate.hinf_norm < paper_certificate.gamma_half
        assert paper_certificate.certified

    def test_below_threshold_not_certified(self, paper_params):
        cert = certify(build_model(paper_params.replace(kappa2=1e12)))
        assert cert.hurwitz
        assert not cert.certified

    def test_zero_model_not_certified(self):
        m = jc.SystemModel(
            n_modes=2, M=np.zeros((4, 4)), N=np.zeros((4, 4)),
            Etilde=np.zeros((1, 4)), gamma=1.0,
        )
        cert = certify(m)
        assert not cert.hurwitz
        assert not cert.certified
        assert np.isnan(cert.hinf_norm) and np.isnan(cert.hinf_freq)

    def test_certificate_consistency(self, paper_certificate):
        c = paper_certificate
        assert c.certified == (c.hurwitz and c.hinf_norm < c.gamma_half)
        assert c.spectral_abscissa == pytest.approx(
            max(z.real for z in c.eigenvalues_F)
        )

    def test_monotone_in_gamma(self):
        rng = np.random.default_rng(59)
        m = make_random_model(rng)
        base = certify(m)
        bigger = jc.SystemModel(
            n_modes=2, M=m.M, N=m.N, Etilde=m.Etilde,
            gamma=m.gamma * 10.0, delta1=m.delta1, delta2=m.delta2,
        )
        if base.certified:
            assert certify(bigger).certified

    def test_invalid_model_rejected(self, paper_model):
        M = paper_model.M.copy()
        M[0, 1] += 1.0 * np.max(np.abs(M))
        bad = jc.SystemModel(
            n_modes=2, M=M, N=paper_model.N, Etilde=paper_model.Etilde,
            gamma=paper_model.gamma,
        )
        with pytest.raises(ValueError, match="validation"):
            certify(bad)

    def test_json_output(self, paper_certificate):
        import json

        d = json.loads(paper_certificate.to_json())
        assert d["certified"] is True
        assert d["hinf_norm"] == paper_certificate.hinf_norm
