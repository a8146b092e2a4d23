"""Selects the compiled trial kernel when available, else the numpy one.

Set ``RISNOMA_PURE_PYTHON=1`` to force the numpy implementation.
"""

import os

from risnoma.montecarlo import _kernels_py

simulate_trials_py = _kernels_py.simulate_trials

try:
    if os.environ.get("RISNOMA_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure-python kernel requested")
    from risnoma.montecarlo._kernels import simulate_trials as simulate_trials_ext
except ImportError:
    simulate_trials_ext = None

if simulate_trials_ext is not None:
    simulate_trials = simulate_trials_ext
    BACKEND = "cython"
else:
    simulate_trials = simulate_trials_py
    BACKEND = "python"


def get_kernel(backend=None):
    if backend is None:
        return simulate_trials
    if backend == "python":
        return simulate_trials_py
    if backend == "cython":
        if simulate_trials_ext is None:
            raise RuntimeError("compiled kernel is not built")
        return simulate_trials_ext
    raise ValueError(f"unknown backend {backend!r}")
