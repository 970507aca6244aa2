"""Builds the junction/cavity system model from physical constants.

The chain is: completed-squares quadratic form over the quadrature vector
(q', p'', n'', phi')  ->  ladder-operator change of variables  ->  block
Hermitian M, plus the coupling matrix N, the perturbation row Etilde and
the sector constants.

Unit convention: U is in joules and is divided by hbar wherever U/hbar or
U'/hbar appears; Jp is already hbar-normalized (rad/s).  The sector
constant is gamma = 1/(2*Jp), dimensionless in these units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import SystemModel, sigma_matrix
from .params import PhysicalParams


@dataclass(frozen=True)
class QuadraticForm:
    """Real symmetric 4x4 matrix over (q', p'', n'', phi'), entries in rad/s
    after hbar-normalization.  The phi' diagonal entry is always zero: the
    junction phase has no quadratic potential (the cosine term is treated
    as the perturbation)."""

    A: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        object.__setattr__(self, "A", A)
        if A.shape != (4, 4):
            raise ValueError(f"quadratic form must be 4x4, got {A.shape}")
        if not np.array_equal(A, A.T):
            raise ValueError("quadratic form matrix must be exactly symmetric")
        if A[3, 3] != 0.0:
            raise ValueError("phi' diagonal entry must vanish")


def quadratic_form_matrix(params: PhysicalParams) -> QuadraticForm:
    """Completed-squares Hamiltonian matrix for the junction/cavity system."""
    w, hb, g = params.omega, params.hbar, params.g
    Uprime = params.U + hb * w * g * g
    entries = {
        (0, 0): w * w / hb,
        (1, 1): 1.0 / hb,
        (1, 2): -g * np.sqrt(w / hb),
        (2, 2): Uprime / hb,
    }
    A = np.zeros((4, 4))
    for (i, j), v in entries.items():
        if not np.isfinite(v):
            raise OverflowError(f"quadratic form entry ({i},{j}) is not finite: {v!r}")
        A[i, j] = v
        A[j, i] = v
    return QuadraticForm(A)


def ladder_rebuild_matrix(params: PhysicalParams) -> np.ndarray:
    """4x4 complex T with x = T v, where x = (q', p'', n'', phi') and
    v = (a1, a2, a1*, a2*).

    Inverts a1 = (omega q' + i p'')/sqrt(2 hbar omega) and
    a2 = (phi' + i n'')/sqrt(2)."""
    w, hb = params.omega, params.hbar
    cq = np.sqrt(hb / (2.0 * w))
    cp = np.sqrt(hb * w / 2.0)
    s2 = np.sqrt(2.0)
    return np.array(
        [
            [cq, 0.0, cq, 0.0],
            [-1j * cp, 0.0, 1j * cp, 0.0],
            [0.0, -1j / s2, 0.0, 1j / s2],
            [0.0, 1.0 / s2, 0.0, 1.0 / s2],
        ],
        dtype=complex,
    )


def ladder_transform(form: QuadraticForm, params: PhysicalParams) -> np.ndarray:
    """Hermitian M with the required block structure such that, for complex
    alpha, (1/2) x(alpha)^T A x(alpha) equals the quadratic form of M at
    alpha up to an alpha-independent constant.

    For a symmetric A the raw change of variables already lands in the
    block structure; the final averaging only scrubs rounding noise."""
    T = ladder_rebuild_matrix(params)
    sig = sigma_matrix(2)
    M = sig @ (T.T @ form.A @ T)
    M = (M + M.conj().T) / 2.0
    M = (M + sig @ M.conj() @ sig) / 2.0
    return M


def build_coupling(kappa1: float, kappa2: float) -> np.ndarray:
    """Coupling matrix N with N1 = diag(sqrt(kappa1), sqrt(kappa2)), N2 = 0."""
    if kappa1 < 0 or kappa2 < 0:
        raise ValueError(f"coupling rates must be nonnegative, got {kappa1}, {kappa2}")
    r = np.sqrt([kappa1, kappa2, kappa1, kappa2])
    return np.diag(r).astype(complex)


def build_zeta() -> np.ndarray:
    """Row Etilde selecting zeta = a2/sqrt(2)."""
    return np.array([[0.0, 1.0 / np.sqrt(2.0), 0.0, 0.0]], dtype=complex)


def sector_constants(params: PhysicalParams) -> tuple[float, float, float]:
    """(gamma, delta1, delta2) for the cosine perturbation.

    gamma = 1/(2 Jp) with Jp hbar-normalized; the sine bound is tight with
    no slack (delta1 = 0) and the cosine second derivative is bounded by
    Jp^2 (delta2)."""
    if params.Jp <= 0:
        raise ValueError("Jp must be positive (gamma would be unbounded)")
    return 1.0 / (2.0 * params.Jp), 0.0, params.Jp ** 2


def build_model(params: PhysicalParams) -> SystemModel:
    """Assemble the full 2-mode system model from physical constants."""
    M = ladder_transform(quadratic_form_matrix(params), params)
    N = build_coupling(params.kappa1, params.kappa2)
    Etilde = build_zeta()
    gamma, delta1, delta2 = sector_constants(params)
    return SystemModel(
        n_modes=2, M=M, N=N, Etilde=Etilde,
        gamma=gamma, delta1=delta1, delta2=delta2,
    )


def quadrature_vector(alpha: np.ndarray, params: PhysicalParams) -> np.ndarray:
    """Rebuild (q', p'', n'', phi') from a complex mode pair alpha, via the
    inverse ladder relations.  Used by the classical-substitution oracle."""
    alpha = np.asarray(alpha, dtype=complex).reshape(2)
    v = np.concatenate([alpha, alpha.conj()])
    return ladder_rebuild_matrix(params) @ v
