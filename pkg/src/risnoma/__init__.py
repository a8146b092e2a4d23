"""Bit-error-rate simulation and closed-form evaluation for a UAV-mounted RIS
serving a two-user NOMA downlink with hardware impairments, inter-cell
interference and imperfect SIC.
"""

from risnoma.geometry import (
    PathLossParams,
    Position3,
    ScenarioGeometry,
    UavTrajectory,
    default_geometry,
    default_pathloss,
)
from risnoma.transceiver import ImpairmentProfile, PowerAllocation

__all__ = [
    "ImpairmentProfile",
    "PathLossParams",
    "Position3",
    "PowerAllocation",
    "ScenarioGeometry",
    "UavTrajectory",
    "default_geometry",
    "default_pathloss",
]

__version__ = "0.1.0"
