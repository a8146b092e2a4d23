"""Rayleigh cascades through the RIS and their central-limit statistics.

All magnitudes have unit second moment (Rayleigh scale ``1/sqrt(2)``), so a
single product ``nu * mu`` has mean ``pi/4`` and variance ``1 - pi^2/16``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

RAYLEIGH_SCALE = 1.0 / math.sqrt(2.0)


class SecondMomentMode(str, Enum):
    PAPER = "paper"
    CONSISTENT = "consistent"


@dataclass(frozen=True)
class FadingDraw:
    """One realization of every small-scale magnitude.

    ``nu`` has shape ``(N,)``, ``mu`` shape ``(2, N)`` (row ``i-1`` is user
    ``i``), and the interferer arrays have shape ``(2, L, N)``: for each user,
    per neighbor cell, the first and second hop seen by that user.
    """

    nu: np.ndarray
    mu: np.ndarray
    nu_cells: np.ndarray
    mu_cells: np.ndarray

    @property
    def n_elements(self) -> int:
        return self.nu.shape[0]

    @property
    def n_cells(self) -> int:
        return self.nu_cells.shape[1]


@dataclass(frozen=True)
class CascadeGain:
    a1: float
    a2: np.ndarray

    def __post_init__(self):
        if self.a1 < 0 or np.any(np.asarray(self.a2) < 0):
            raise ValueError("cascade gains must be nonnegative")


@dataclass(frozen=True)
class CltStats:
    mean: float
    variance: float
    second_moment: float
    mode: SecondMomentMode


def draw_fading(n_elements: int, n_cells: int, rng: np.random.Generator) -> FadingDraw:
    if n_elements < 1:
        raise ValueError("n_elements must be >= 1")
    if n_cells < 0:
        raise ValueError("n_cells must be >= 0")
    nu = rng.rayleigh(RAYLEIGH_SCALE, n_elements)
    mu = rng.rayleigh(RAYLEIGH_SCALE, (2, n_elements))
    nu_cells = rng.rayleigh(RAYLEIGH_SCALE, (2, n_cells, n_elements))
    mu_cells = rng.rayleigh(RAYLEIGH_SCALE, (2, n_cells, n_elements))
    return FadingDraw(nu, mu, nu_cells, mu_cells)


def aligned_cascade_gain(draw: FadingDraw, user_index: int) -> CascadeGain:
    """Cascade amplitudes after the RIS phases cancel both hops' phases.

    The serving sum is real and nonnegative.  Each neighbor cell's RIS is
    aligned to its own link, so its cascade magnitude is the same kind of
    sum of products.
    """
    if user_index not in (1, 2):
        raise ValueError(f"user_index must be 1 or 2, got {user_index!r}")
    u = user_index - 1
    a1 = float(np.dot(draw.nu, draw.mu[u]))
    a2 = np.sum(draw.nu_cells[u] * draw.mu_cells[u], axis=-1)
    return CascadeGain(a1, a2)


def clt_stats(n_elements: int, mode: SecondMomentMode | str = SecondMomentMode.CONSISTENT) -> CltStats:
    """Gaussian approximation of ``sum_n nu_n mu_n`` over ``n_elements`` terms.

    In ``paper`` mode the second moment used for noise-power expectations is
    the variance alone; ``consistent`` adds the squared mean.
    """
    if n_elements < 1:
        raise ValueError("n_elements must be >= 1")
    mode = SecondMomentMode(mode)
    mean = n_elements * math.pi / 4
    var = n_elements * (1 - math.pi**2 / 16)
    second = var if mode is SecondMomentMode.PAPER else var + mean * mean
    return CltStats(mean, var, second, mode)
