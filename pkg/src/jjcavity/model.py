"""Core data types for block-structured linear quantum system models.

The operator vector is always stacked as [a_1, ..., a_n, a_1*, ..., a_n*]
(all annihilators first, then all creators).  All matrices live over that
ordering.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

DEFAULT_VALIDATION_TOL = 1e-9


def j_matrix(n: int) -> np.ndarray:
    """diag(I_n, -I_n)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return np.diag(np.concatenate([np.ones(n), -np.ones(n)])).astype(complex)


def sigma_matrix(n: int) -> np.ndarray:
    """Block swap [[0, I_n], [I_n, 0]]."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    sig = np.zeros((2 * n, 2 * n), dtype=complex)
    sig[:n, n:] = np.eye(n)
    sig[n:, :n] = np.eye(n)
    return sig


@dataclass(frozen=True)
class SystemModel:
    """One analyzable linear quantum system with a sector-bounded perturbation.

    M      : 2n x 2n Hermitian matrix of the nominal quadratic Hamiltonian,
             blocks [[M1, M2], [M2#, M1#]] with M1 Hermitian, M2 symmetric.
    N      : 2n x 2n coupling matrix, blocks [[N1, N2], [N2#, N1#]].
    Etilde : 1 x 2n row defining the scalar perturbation channel.
    gamma  : sector constant (dimensionless in the hbar-normalized units).
    delta1, delta2 : sector slack constants.
    """

    n_modes: int
    M: np.ndarray
    N: np.ndarray
    Etilde: np.ndarray
    gamma: float
    delta1: float = 0.0
    delta2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "M", np.asarray(self.M, dtype=complex))
        object.__setattr__(self, "N", np.asarray(self.N, dtype=complex))
        et = np.asarray(self.Etilde, dtype=complex).reshape(1, -1)
        object.__setattr__(self, "Etilde", et)
        n2 = 2 * self.n_modes
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be >= 1, got {self.n_modes}")
        if self.M.shape != (n2, n2):
            raise ValueError(f"M must be {n2}x{n2}, got {self.M.shape}")
        if self.N.shape != (n2, n2):
            raise ValueError(f"N must be {n2}x{n2}, got {self.N.shape}")
        if self.Etilde.shape != (1, n2):
            raise ValueError(f"Etilde must be 1x{n2}, got {self.Etilde.shape}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "n_modes": self.n_modes,
                "M": _encode_complex(self.M),
                "N": _encode_complex(self.N),
                "Etilde": _encode_complex(self.Etilde),
                "gamma": self.gamma,
                "delta1": self.delta1,
                "delta2": self.delta2,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SystemModel":
        d = json.loads(text)
        return cls(
            n_modes=d["n_modes"],
            M=_decode_complex(d["M"]),
            N=_decode_complex(d["N"]),
            Etilde=_decode_complex(d["Etilde"]),
            gamma=d["gamma"],
            delta1=d.get("delta1", 0.0),
            delta2=d.get("delta2", 0.0),
        )


def _encode_complex(a: np.ndarray) -> list:
    """Row-major nested lists of [re, im] pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(a, dtype=complex)]


def _decode_complex(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)


def _max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _block_violations(name: str, A: np.ndarray, n: int, tol_abs: float,
                      out: list[str]) -> None:
    """Check the [[A1, A2], [A2#, A1#]] structure of a 2n x 2n matrix."""
    A1, A2 = A[:n, :n], A[n:, n:].conj()
    lower = A[n:, :]
    mirror = np.hstack([A[:n, n:].conj(), A[:n, :n].conj()])
    d = np.abs(lower - mirror)
    if d.size and d.max() > tol_abs:
        i, j = np.unravel_index(int(d.argmax()), d.shape)
        out.append(
            f"{name} block-conjugate symmetry: lower row entry "
            f"({n + i},{j}) differs from conjugated upper row by {d[i, j]:.3e}"
        )
    # upper-left block vs conjugate of lower-right block
    d = np.abs(A1 - A2)
    if d.size and d.max() > tol_abs:
        i, j = np.unravel_index(int(d.argmax()), d.shape)
        out.append(f"{name}1 vs {name}1# block mismatch at ({i},{j}): {d[i, j]:.3e}")


def validate_model(model: SystemModel, tol: float = DEFAULT_VALIDATION_TOL) -> list[str]:
    """Return the list of structural violations (empty iff the model is valid).

    `tol` is relative to the max-abs entry of the matrix being checked.
    Dimension mismatches are raised at construction time, not reported here.
    """
    if tol < 0:
        raise ValueError(f"tol must be nonnegative, got {tol}")
    n = model.n_modes
    out: list[str] = []

    tol_m = tol * max(1e-300, _max_abs(model.M))
    d = np.abs(model.M - model.M.conj().T)
    if d.max() > tol_m:
        i, j = np.unravel_index(int(d.argmax()), d.shape)
        out.append(f"M Hermitian symmetry violated at ({i},{j}): {d[i, j]:.3e}")
    M1 = model.M[:n, :n]
    d = np.abs(M1 - M1.conj().T)
    if d.max() > tol_m:
        i, j = np.unravel_index(int(d.argmax()), d.shape)
        out.append(f"M1 Hermitian symmetry violated at ({i},{j}): {d[i, j]:.3e}")
    M2 = model.M[:n, n:]
    d = np.abs(M2 - M2.T)
    if d.max() > tol_m:
        i, j = np.unravel_index(int(d.argmax()), d.shape)
        out.append(f"M2 transpose-symmetry violated at ({i},{j}): {d[i, j]:.3e}")
    _block_violations("M", model.M, n, tol_m, out)

    tol_n = tol * max(1e-300, _max_abs(model.N))
    _block_violations("N", model.N, n, tol_n, out)

    if not model.gamma > 0:
        out.append(f"gamma must be positive, got {model.gamma}")
    if model.delta1 < 0:
        out.append(f"delta1 must be nonnegative, got {model.delta1}")
    if model.delta2 < 0:
        out.append(f"delta2 must be nonnegative, got {model.delta2}")
    return out
