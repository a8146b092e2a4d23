from risnoma.montecarlo.engine import (
    BerEstimate,
    PointFailure,
    SimPoint,
    estimate_interval,
    run_point,
    run_sweep,
)
from risnoma.montecarlo.kernels import BACKEND

__all__ = [
    "BACKEND",
    "BerEstimate",
    "PointFailure",
    "SimPoint",
    "estimate_interval",
    "run_point",
    "run_sweep",
]
