"""Reference signal chain: superposition coding, distortion noise,
inter-cell interference and the MLD / SIC detectors.

These functions work on scalars or broadcastable numpy arrays.  The
Monte-Carlo engine uses a fused kernel that is checked against them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class PowerAllocation:
    eps2: float = 0.2

    def __post_init__(self):
        if not 0.0 < self.eps2 < 0.5:
            raise ValueError(f"need 0 < eps2 < eps1 (eps2 < 0.5), got eps2={self.eps2}")

    @property
    def eps1(self) -> float:
        return 1.0 - self.eps2

    @property
    def amp1(self) -> float:
        return math.sqrt(self.eps1)

    @property
    def amp2(self) -> float:
        return math.sqrt(self.eps2)


@dataclass(frozen=True)
class ImpairmentProfile:
    """Distortion levels (squared) and neighbor-cell interference settings.

    ``neighbor_power=None`` ties each neighbor's transmit power to the
    source power, i.e. ``P_j = P_s``.
    """

    k_t2: float = 0.075
    k_r2: float = 0.075
    k_tj2: float = 0.075
    k_rj2: float = 0.075
    n_cells: int = 3
    neighbor_power: Optional[float] = None

    def __post_init__(self):
        for name in ("k_t2", "k_r2", "k_tj2", "k_rj2"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")
        if self.n_cells < 0:
            raise ValueError("n_cells must be >= 0")
        if self.neighbor_power is not None and self.neighbor_power < 0:
            raise ValueError("neighbor_power must be >= 0")

    @classmethod
    def from_level(cls, k: float, n_cells: int, neighbor_power: Optional[float] = None):
        """Aggregate level ``k = K_a^2 = K_b^2`` split evenly between TX and RX."""
        return cls(k / 2, k / 2, k / 2, k / 2, n_cells, neighbor_power)

    @property
    def ka2(self) -> float:
        return self.k_t2 + self.k_r2

    @property
    def kb2(self) -> float:
        return self.k_tj2 + self.k_rj2

    @property
    def level(self) -> float:
        return self.ka2

    def neighbor_tx_power(self, source_power: float) -> float:
        return source_power if self.neighbor_power is None else self.neighbor_power


@dataclass(frozen=True)
class SuperposedSymbol:
    s1: int
    s2: int
    x: float


def _check_bpsk(*symbols):
    for s in symbols:
        if not np.all(np.isin(s, (-1, 1))):
            raise ValueError(f"BPSK symbols must be +1 or -1, got {s!r}")


def superpose(s1, s2, alloc: PowerAllocation) -> SuperposedSymbol:
    _check_bpsk(s1, s2)
    return SuperposedSymbol(s1, s2, alloc.amp1 * s1 + alloc.amp2 * s2)


def _cn(rng: np.random.Generator, var, size=None):
    """Circular complex Gaussian with total variance ``var``."""
    sd = np.sqrt(np.asarray(var, dtype=float) / 2)
    shape = size if size is not None else np.shape(sd)
    return sd * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def ici_sample(profile: ImpairmentProfile, a2, iota: float, source_power: float,
               alloc: PowerAllocation, rng: np.random.Generator) -> complex:
    """Interference from the neighbor cells for one received sample.

    ``a2`` holds the aligned cascade magnitude of each cell.  Every cell sends
    its own independent superposition and arrives with a uniform carrier
    phase relative to the serving link.
    """
    a2 = np.atleast_1d(np.asarray(a2, dtype=float))
    if a2.shape[0] != profile.n_cells:
        raise ValueError("need one cascade gain per neighbor cell")
    if profile.n_cells == 0:
        return 0j
    pj = profile.neighbor_tx_power(source_power)
    q = math.sqrt(iota) * a2 * np.exp(2j * np.pi * rng.random(a2.shape))
    bits = 2 * rng.integers(0, 2, (2,) + a2.shape) - 1
    xj = alloc.amp1 * bits[0] + alloc.amp2 * bits[1]
    eta_t = _cn(rng, pj * profile.k_tj2, a2.shape)
    eta_r = _cn(rng, pj * profile.k_rj2 * np.abs(q) ** 2)
    return complex(np.sum((math.sqrt(pj) * xj + eta_t) * q + eta_r))


def received_sample(x, a1: float, psi: float, source_power: float,
                    profile: ImpairmentProfile, ici, noise_var: float,
                    rng: np.random.Generator):
    """``y = (sqrt(P) x + eta_t) q + eta_r + I + w`` with ``q = sqrt(psi) a1``."""
    if source_power < 0 or noise_var < 0:
        raise ValueError("powers must be >= 0")
    q = math.sqrt(psi) * a1
    shape = np.shape(x)
    eta_t = _cn(rng, source_power * profile.k_t2, shape)
    eta_r = _cn(rng, source_power * profile.k_r2 * q * q, shape)
    w = _cn(rng, noise_var, shape)
    return (math.sqrt(source_power) * np.asarray(x) + eta_t) * q + eta_r + ici + w


def detect_s1(y, ref_gain: float, alloc: PowerAllocation):
    """Nearest of ``+-ref_gain*sqrt(eps1)``; for BPSK this is the sign of Re(y)."""
    if not ref_gain > 0:
        raise ValueError("ref_gain must be > 0")
    return np.where(np.real(y) >= 0, 1, -1)


def sic_subtract(y2, ref_gain: float, alloc: PowerAllocation, s1_hat, replica: str = "corrected"):
    """Remove the decoded strong-user layer from ``y2``.

    ``replica="corrected"`` subtracts ``ref_gain * sqrt(eps1) * s1_hat``;
    ``"paper"`` subtracts ``ref_gain * s1_hat`` (no power scaling), the caller
    then passes user 1's channel as ``ref_gain``.
    """
    _check_bpsk(s1_hat)
    if replica == "corrected":
        return y2 - ref_gain * alloc.amp1 * np.asarray(s1_hat)
    if replica == "paper":
        return y2 - ref_gain * np.asarray(s1_hat)
    raise ValueError(f"unknown replica rule {replica!r}")


def detect_s2(y2_after_sic, ref_gain: float, alloc: PowerAllocation):
    if not ref_gain > 0:
        raise ValueError("ref_gain must be > 0")
    return np.where(np.real(y2_after_sic) >= 0, 1, -1)
