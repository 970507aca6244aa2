"""Physical constants describing the junction/cavity system."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, asdict, fields

# Reduced Planck constant, J*s, rounded to the 4-figure precision of the
# other constants.
HBAR = 1.0546e-34


@dataclass(frozen=True)
class PhysicalParams:
    """Constants for a Josephson junction in a resonant cavity.

    omega   : cavity angular frequency, rad/s
    g       : dimensionless junction/cavity coupling
    U       : charging energy, joule
    Jp      : Josephson energy divided by hbar, rad/s
    nbar    : dimensionless gate parameter (enters only through dropped
              constant terms, so it never affects the built model)
    kappa1  : cavity field coupling rate, 1/s
    kappa2  : junction field coupling rate, 1/s
    hbar    : reduced Planck constant, joule-second
    """

    omega: float
    g: float
    U: float
    Jp: float
    nbar: float = 0.0
    kappa1: float = 0.0
    kappa2: float = 0.0
    hbar: float = HBAR

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not math.isfinite(v):
                raise ValueError(f"parameter {f.name} is not finite: {v!r}")
        if self.omega <= 0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if self.Jp <= 0:
            raise ValueError(f"Jp must be positive, got {self.Jp}")
        if self.hbar <= 0:
            raise ValueError(f"hbar must be positive, got {self.hbar}")
        if self.kappa1 < 0 or self.kappa2 < 0:
            raise ValueError("coupling rates must be nonnegative")

    def replace(self, **kwargs) -> "PhysicalParams":
        d = asdict(self)
        d.update(kwargs)
        return PhysicalParams(**d)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "PhysicalParams":
        return cls(**json.loads(text))


def reference_params(kappa1: float = 1e11, kappa2: float = 2.5e12) -> PhysicalParams:
    """The published junction/cavity constants with chosen coupling rates."""
    return PhysicalParams(
        omega=2.0 * math.pi * 1e11,
        g=0.15,
        U=2.2087e-22,
        Jp=3.6652e11,
        nbar=0.0,
        kappa1=kappa1,
        kappa2=kappa2,
    )
