"""Node placement, air-to-ground path loss and large-scale gains.

Coordinates follow the usual drawing of the scenario: the source sits at
``(-x_s, 0, 0)``, user 1 at ``(x_1, 0, -z_1)``, user 2 at ``(x_2, 0, z_2)`` and
the UAV flies a circle of radius ``r`` at altitude ``T``.  The distance
formulas are evaluated exactly in that sign convention, so ``user1.z`` is
stored as ``-z_1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class Position3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        for name in ("x", "y", "z"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"coordinate {name} must be finite")


@dataclass(frozen=True)
class UavTrajectory:
    """Snapshot of the UAV on its circular orbit."""

    radius: float = 5.0
    altitude: float = 20.0
    angle: float = math.pi / 4

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("radius must be >= 0")
        if not self.altitude > 0:
            raise ValueError("altitude must be > 0")
        if not math.isfinite(self.angle):
            raise ValueError("angle must be finite")
        object.__setattr__(self, "angle", self.angle % (2 * math.pi))

    @property
    def position(self) -> Position3:
        return Position3(
            self.radius * math.cos(self.angle),
            self.radius * math.sin(self.angle),
            self.altitude,
        )


@dataclass(frozen=True)
class ScenarioGeometry:
    source: Position3 = field(default_factory=lambda: Position3(-5.0, 0.0, 0.0))
    user1: Position3 = field(default_factory=lambda: Position3(10.0, 0.0, -10.0))
    user2: Position3 = field(default_factory=lambda: Position3(5.0, 0.0, 5.0))
    uav: UavTrajectory = field(default_factory=UavTrajectory)
    neighbor_d_sj: float = 100.0
    neighbor_d_j: float = 100.0

    def __post_init__(self):
        if not (self.neighbor_d_sj > 0 and self.neighbor_d_j > 0):
            raise ValueError("neighbor-cell distances must be > 0")

    def with_altitude(self, altitude: float) -> "ScenarioGeometry":
        uav = UavTrajectory(self.uav.radius, altitude, self.uav.angle)
        return ScenarioGeometry(
            self.source, self.user1, self.user2, uav, self.neighbor_d_sj, self.neighbor_d_j
        )


@dataclass(frozen=True)
class PathLossParams:
    """Environment constants of the elevation-dependent path-loss model."""

    ell1: float = -1.5
    mho1: float = 3.5
    ell2: float = 2.0
    mho2: float = 0.16
    elevation: float = 1.2
    plos_override: Optional[float] = None

    def __post_init__(self):
        if self.plos_override is not None and not 0.0 <= self.plos_override <= 1.0:
            raise ValueError("plos_override must lie in [0, 1]")


def default_geometry() -> ScenarioGeometry:
    return ScenarioGeometry()


def default_pathloss() -> PathLossParams:
    return PathLossParams()


def distance_source_uav(geo: ScenarioGeometry) -> float:
    """S-UAV distance ``sqrt(r^2 + T^2 + x_s^2 + 2 r x_s cos(phi))``."""
    r, t, phi = geo.uav.radius, geo.uav.altitude, geo.uav.angle
    xs = -geo.source.x
    d = math.sqrt(r * r + t * t + xs * xs + 2 * r * xs * math.cos(phi))
    if not d > 0:
        raise ValueError("degenerate source-UAV distance")
    return d


def distance_uav_user(geo: ScenarioGeometry, user_index: int) -> float:
    r, t, phi = geo.uav.radius, geo.uav.altitude, geo.uav.angle
    if user_index == 1:
        dx = r * math.cos(phi) - geo.user1.x
        dz = r * math.sin(phi) + (-geo.user1.z)
    elif user_index == 2:
        dx = r * math.cos(phi) - geo.user2.x
        dz = r * math.sin(phi) - geo.user2.z
    else:
        raise ValueError(f"user_index must be 1 or 2, got {user_index!r}")
    return math.sqrt(dx * dx + dz * dz + t * t)


def los_probability(p: PathLossParams) -> float:
    if p.plos_override is not None:
        return p.plos_override
    return 1.0 / (1.0 + p.ell2 * math.exp(-p.mho2 * (p.elevation - p.ell2)))


def path_loss_exponent(p: PathLossParams) -> float:
    alpha = p.ell1 * los_probability(p) + p.mho1
    if not alpha > 0:
        raise ValueError(f"path-loss exponent must be > 0, got {alpha}")
    return alpha


def large_scale_gain(geo: ScenarioGeometry, p: PathLossParams, user_index: int) -> float:
    """Cascaded gain ``(d_s * d_i) ** -alpha`` of the serving link."""
    alpha = path_loss_exponent(p)
    return (distance_source_uav(geo) * distance_uav_user(geo, user_index)) ** -alpha


def neighbor_gain(geo: ScenarioGeometry, p: PathLossParams) -> float:
    alpha = path_loss_exponent(p)
    return (geo.neighbor_d_sj * geo.neighbor_d_j) ** -alpha
