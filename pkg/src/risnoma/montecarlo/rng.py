"""Counter-based uniform generator shared by both kernel backends.

Draw ``k`` of trial ``t`` is ``fin(key + (t * M + k) * GAMMA)`` where ``fin``
is the SplitMix64 output mix and ``M`` the fixed number of draws per trial.
Any trial can be regenerated without touching the others.
"""

import hashlib

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB
_MASK = (1 << 64) - 1


def mix64(x):
    """SplitMix64 finalizer on uint64 arrays; arithmetic wraps mod 2**64."""
    x = np.asarray(x, dtype=np.uint64)
    with np.errstate(over="ignore"):
        x = (x ^ (x >> np.uint64(30))) * np.uint64(MIX1)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(MIX2)
    return x ^ (x >> np.uint64(31))


def stream_key(master_seed: int, point_key: int) -> int:
    raw = f"{master_seed & _MASK}:{point_key & _MASK}".encode()
    return int.from_bytes(hashlib.blake2b(raw, digest_size=8).digest(), "little")


def raw_draws(key: int, counters) -> np.ndarray:
    c = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(np.uint64(key) + c * np.uint64(GAMMA))


def to_unit(v) -> np.ndarray:
    """Map uint64 draws to doubles strictly inside (0, 1)."""
    return ((v >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0**-53


def uniforms(key: int, counters) -> np.ndarray:
    return to_unit(raw_draws(key, counters))


def draws_per_trial(n_elements: int, n_cells: int) -> int:
    """Slots per trial: 3N serving magnitudes, 4LN interferer magnitudes,
    2L phases, 2+4L bits, 4 uniforms for two Box-Muller normals."""
    return 3 * n_elements + 4 * n_cells * n_elements + 2 * n_cells + 2 + 4 * n_cells + 4
