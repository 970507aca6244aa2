"""Numerical check of the sector bounds for a scalar nonlinearity.

The operator inequalities are checked through their commutative surrogate:
the scalar operator is replaced by a complex number z on a rectangular
grid, and the bound margins are minimized over the grid.  Operator-ordering
corrections are absorbed into the slack constants delta1/delta2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

DEFAULT_RANGE = 20.0
DEFAULT_POINTS = 801


@dataclass(frozen=True)
class GridSpec:
    """Square grid [-re_max, re_max] x [-im_max, im_max] in the complex plane."""

    re_max: float = DEFAULT_RANGE
    im_max: float = DEFAULT_RANGE
    points_re: int = DEFAULT_POINTS
    points_im: int = DEFAULT_POINTS

    def __post_init__(self):
        if self.points_re < 1 or self.points_im < 1:
            raise ValueError("grid must have at least one point per axis")
        if self.re_max <= 0 or self.im_max <= 0:
            raise ValueError("grid half-ranges must be positive")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(-self.re_max, self.re_max, self.points_re),
            np.linspace(-self.im_max, self.im_max, self.points_im),
        )

    def to_dict(self) -> dict:
        return {
            "re_max": self.re_max,
            "im_max": self.im_max,
            "points_re": self.points_re,
            "points_im": self.points_im,
        }


@dataclass(frozen=True)
class SectorReport:
    gamma_tested: float
    delta1: float
    delta2: float
    worst_margin: float
    worst_point: complex
    passed: bool
    grid_spec: GridSpec

    def to_json(self) -> str:
        return json.dumps(
            {
                "gamma_tested": self.gamma_tested,
                "delta1": self.delta1,
                "delta2": self.delta2,
                "worst_margin": self.worst_margin,
                "worst_point": [self.worst_point.real, self.worst_point.imag],
                "passed": self.passed,
                "grid_spec": self.grid_spec.to_dict(),
            }
        )


def _min_margin(margin: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> tuple[float, complex]:
    """Minimum over the grid; ties resolved to the lexicographically smallest
    point so that the report is deterministic."""
    worst = float(margin.min())
    ii, jj = np.nonzero(margin == margin.min())
    order = np.lexsort((ys[jj], xs[ii]))
    i, j = ii[order[0]], jj[order[0]]
    return worst, complex(xs[i], ys[j])


def verify_sector(
    fprime: Callable[[np.ndarray], np.ndarray],
    gamma: float,
    delta1: float = 0.0,
    grid: GridSpec = GridSpec(),
) -> SectorReport:
    """Check |f'(z + conj(z))|^2 <= |z|^2 / gamma^2 + delta1 over the grid.

    `fprime` is evaluated on the real array z + conj(z) = 2 Re z."""
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    xs, ys = grid.axes()
    vals = np.asarray(fprime(2.0 * xs), dtype=complex)
    if not np.all(np.isfinite(vals)):
        bad = xs[~np.isfinite(vals)][0]
        raise FloatingPointError(f"f' is not finite at z + conj(z) = {2 * bad}")
    lhs = np.abs(vals) ** 2                       # depends on Re z only
    rhs = (xs[:, None] ** 2 + ys[None, :] ** 2) / gamma ** 2 + delta1
    margin = rhs - lhs[:, None]
    worst, point = _min_margin(margin, xs, ys)
    return SectorReport(
        gamma_tested=gamma, delta1=delta1, delta2=float("nan"),
        worst_margin=worst, worst_point=point,
        passed=worst >= 0.0, grid_spec=grid,
    )


def verify_second(
    fsecond: Callable[[np.ndarray], np.ndarray],
    delta2: float,
    grid: GridSpec = GridSpec(),
) -> SectorReport:
    """Check |f''(z + conj(z))|^2 <= delta2 over the grid."""
    if delta2 < 0:
        raise ValueError(f"delta2 must be nonnegative, got {delta2}")
    xs, ys = grid.axes()
    vals = np.asarray(fsecond(2.0 * xs), dtype=complex)
    if not np.all(np.isfinite(vals)):
        bad = xs[~np.isfinite(vals)][0]
        raise FloatingPointError(f"f'' is not finite at z + conj(z) = {2 * bad}")
    lhs = np.abs(vals) ** 2
    margin = np.broadcast_to((delta2 - lhs)[:, None], (grid.points_re, grid.points_im))
    worst, point = _min_margin(margin, xs, ys)
    return SectorReport(
        gamma_tested=float("nan"), delta1=float("nan"), delta2=delta2,
        worst_margin=worst, worst_point=point,
        passed=worst >= 0.0, grid_spec=grid,
    )


def cosine_first_derivative(Jp: float) -> Callable[[np.ndarray], np.ndarray]:
    """f'(u) = Jp sin(u) for the cosine perturbation -Jp cos(zeta + zeta*)."""
    return lambda u: Jp * np.sin(u)


def cosine_second_derivative(Jp: float) -> Callable[[np.ndarray], np.ndarray]:
    """f''(u) = Jp cos(u)."""
    return lambda u: Jp * np.cos(u)
