"""Seeded Monte-Carlo BER estimation.

Every random number of trial ``t`` is a counter-based draw keyed by
``(master_seed, point_key)`` and indexed by ``t``, so counters depend only on
the seed and the point parameters; splitting trials into chunks and
scheduling them across workers cannot change them.
"""

from __future__ import annotations

import hashlib
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from risnoma import geometry
from risnoma.channel import SecondMomentMode
from risnoma.geometry import PathLossParams, ScenarioGeometry
from risnoma.montecarlo import kernels
from risnoma.montecarlo import rng as crng
from risnoma.transceiver import ImpairmentProfile, PowerAllocation

log = logging.getLogger(__name__)

CHUNK_TRIALS = 16384
WILSON_Z = 1.959963984540054
TAGS = ("u1", "u2", "system", "oma_u1", "oma_u2", "oma_system")


@dataclass(frozen=True)
class SimPoint:
    snr_db: float
    n_elements: int = 64
    alloc: PowerAllocation = field(default_factory=PowerAllocation)
    profile: ImpairmentProfile = field(default_factory=ImpairmentProfile)
    geometry: ScenarioGeometry = field(default_factory=ScenarioGeometry)
    pathloss: PathLossParams = field(default_factory=PathLossParams)
    sic_replica: str = "corrected"
    second_moment_mode: SecondMomentMode = SecondMomentMode.CONSISTENT
    trials: int = 100_000
    master_seed: int = 0
    noise_var: float = 1.0
    # Test hook: freeze the serving cascade amplitudes (A1 at U1, U2).
    fixed_a1: Optional[tuple] = None
    label: str = ""

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if not math.isfinite(self.snr_db):
            raise ValueError("snr_db must be finite")
        if self.n_elements < 1:
            raise ValueError("n_elements must be >= 1")
        if self.sic_replica not in ("corrected", "paper"):
            raise ValueError(f"sic_replica must be 'corrected' or 'paper', got {self.sic_replica!r}")
        if self.fixed_a1 is not None and (len(self.fixed_a1) != 2 or min(self.fixed_a1) < 0):
            raise ValueError("fixed_a1 must be two nonnegative amplitudes")
        object.__setattr__(self, "second_moment_mode", SecondMomentMode(self.second_moment_mode))

    @property
    def power(self) -> float:
        return self.noise_var * 10 ** (self.snr_db / 10)

    @property
    def point_key(self) -> int:
        """64-bit key from every parameter that shapes the trial statistics.

        Trial count and seed are excluded: more trials extend the same stream.
        """
        ident = repr((
            float(self.snr_db), self.n_elements, self.alloc, self.profile, self.geometry,
            self.pathloss, self.sic_replica, self.noise_var, self.fixed_a1, self.label,
        ))
        return int.from_bytes(hashlib.blake2b(ident.encode(), digest_size=8).digest(), "little")


def estimate_interval(errors: int, trials: int, z: float = WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval for a binomial proportion."""
    if trials < 1 or not 0 <= errors <= trials:
        raise ValueError(f"need 0 <= errors <= trials and trials >= 1, got {errors}/{trials}")
    p = errors / trials
    z2n = z * z / trials
    centre = (p + z2n / 2) / (1 + z2n)
    half = z * math.sqrt(p * (1 - p) / trials + z2n / (4 * trials)) / (1 + z2n)
    low = 0.0 if errors == 0 else max(0.0, centre - half)
    high = 1.0 if errors == trials else min(1.0, centre + half)
    return low, high


@dataclass(frozen=True)
class BerEstimate:
    errors_u1: int
    errors_u2: int
    errors_system: int
    errors_oma_u1: int
    errors_oma_u2: int
    errors_oma_system: int
    trials: int
    master_seed: int
    point_key: int
    backend: str = kernels.BACKEND

    def errors(self, tag: str) -> int:
        if tag not in TAGS:
            raise KeyError(tag)
        return getattr(self, f"errors_{tag}")

    def ber(self, tag: str = "u1") -> float:
        return self.errors(tag) / self.trials

    def interval(self, tag: str = "u1") -> tuple[float, float]:
        return estimate_interval(self.errors(tag), self.trials)

    def ci_width(self, tag: str = "u1") -> float:
        lo, hi = self.interval(tag)
        return hi - lo

    @property
    def ber_u1(self) -> float:
        return self.ber("u1")

    @property
    def ber_u2(self) -> float:
        return self.ber("u2")

    @property
    def ber_system(self) -> float:
        return self.ber("system")


@dataclass(frozen=True)
class PointFailure:
    point: SimPoint
    message: str


def kernel_params(point: SimPoint) -> np.ndarray:
    geo, pl, prof, alloc = point.geometry, point.pathloss, point.profile, point.alloc
    fixed = point.fixed_a1 if point.fixed_a1 is not None else (-1.0, -1.0)
    return np.array([
        geometry.large_scale_gain(geo, pl, 1),
        geometry.large_scale_gain(geo, pl, 2),
        geometry.neighbor_gain(geo, pl),
        point.power,
        prof.neighbor_tx_power(point.power),
        point.noise_var,
        prof.ka2,
        prof.kb2,
        alloc.amp1,
        alloc.amp2,
        1.0 if point.sic_replica == "paper" else 0.0,
        float(fixed[0]),
        float(fixed[1]),
    ])


def _chunk_ranges(trials: int):
    return [(t0, min(CHUNK_TRIALS, trials - t0)) for t0 in range(0, trials, CHUNK_TRIALS)]


def _run_chunk(point: SimPoint, t0: int, n: int, backend=None) -> np.ndarray:
    key = crng.stream_key(point.master_seed, point.point_key)
    kernel = kernels.get_kernel(backend)
    return kernel(key, t0, n, point.n_elements, point.profile.n_cells, kernel_params(point))


def _run_task(args):
    return _run_chunk(*args)


def _estimate(point: SimPoint, counts: np.ndarray, backend=None) -> BerEstimate:
    name = backend or kernels.BACKEND
    return BerEstimate(*(int(c) for c in counts), trials=point.trials,
                       master_seed=point.master_seed, point_key=point.point_key, backend=name)


def run_point(point: SimPoint, workers: int = 1, backend: Optional[str] = None) -> BerEstimate:
    return run_sweep([point], workers=workers, backend=backend, raise_errors=True)[0]


def run_sweep(points: Sequence[SimPoint], workers: int = 1, backend: Optional[str] = None,
              raise_errors: bool = False) -> list:
    """Run every point; entries that fail become ``PointFailure`` records.

    Output order follows ``points``.  Counters are independent of ``workers``.
    """
    if not points:
        raise ValueError("run_sweep needs at least one point")
    tasks, owner = [], []
    for i, pt in enumerate(points):
        for t0, n in _chunk_ranges(pt.trials):
            tasks.append((pt, t0, n, backend))
            owner.append(i)

    counts = [np.zeros(6, dtype=np.int64) for _ in points]
    failures: dict[int, str] = {}

    def absorb(i, result):
        if isinstance(result, BaseException):
            if raise_errors:
                raise result
            failures.setdefault(i, f"{type(result).__name__}: {result}")
        else:
            counts[i] += result

    if workers <= 1:
        for i, task in zip(owner, tasks):
            if i in failures:
                continue
            try:
                absorb(i, _run_chunk(*task))
            except Exception as exc:
                absorb(i, exc)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_run_task, task) for task in tasks]
            for i, fut in zip(owner, futures):
                exc = fut.exception()
                absorb(i, exc if exc is not None else fut.result())

    out = []
    for i, pt in enumerate(points):
        if i in failures:
            log.warning("point %d failed: %s", i, failures[i])
            out.append(PointFailure(pt, failures[i]))
        else:
            out.append(_estimate(pt, counts[i], backend))
    return out


def with_trials(point: SimPoint, trials: int) -> SimPoint:
    return replace(point, trials=trials)
