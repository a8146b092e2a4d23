"""Flat ``section.key = value`` experiment configuration.

One assignment per line, ``#`` starts a comment.  Every key has a default
taken from the reference parameter set, so an empty file is a complete
configuration.  A few keys may also be written without their section
(``eps2``, ``k``, ``L``, ``N``, ``r``, ``T``, ``phi``, ``trials``, ``seed``,
``mode``).
"""

from __future__ import annotations

import ast
import math
import operator
from dataclasses import dataclass, field, replace
from typing import Optional

from risnoma.channel import SecondMomentMode
from risnoma.geometry import PathLossParams, Position3, ScenarioGeometry, UavTrajectory
from risnoma.transceiver import ImpairmentProfile, PowerAllocation

SWEEP_VARIABLES = ("snr", "altitude", "n_elements", "k", "L", "eps2")
ENGINES = ("analytic", "upper", "mc", "oma_analytic", "oma_mc", "no_ris_mc", "no_ris_analytic")

DEFAULTS = {
    "geometry.radius": "5",
    "geometry.altitude": "20",
    "geometry.angle": "pi/4",
    "geometry.source_x": "-5",
    "geometry.user1_x": "10",
    "geometry.user1_z": "-10",
    "geometry.user2_x": "5",
    "geometry.user2_z": "5",
    "geometry.d_sj": "100",
    "geometry.d_j": "100",
    "pathloss.ell1": "-1.5",
    "pathloss.mho1": "3.5",
    "pathloss.ell2": "2",
    "pathloss.mho2": "0.16",
    "pathloss.elevation": "1.2",
    "pathloss.plos": "",
    "impairment.k": "0.15",
    "impairment.L": "3",
    "alloc.eps2": "0.2",
    "system.n_elements": "64",
    "system.snr_db": "30",
    "sweep.variable": "snr",
    "sweep.grid": "0:5:100",
    "engine.mode": "consistent",
    "engine.trials": "100000",
    "engine.seed": "0",
    "engine.sic_replica": "corrected",
    "engine.workers": "1",
    "engine.engines": "analytic,upper,mc,oma_analytic,oma_mc",
    "output.path": "",
    "output.experiment": "custom",
}

ALIASES = {
    "r": "geometry.radius",
    "T": "geometry.altitude",
    "phi": "geometry.angle",
    "eps2": "alloc.eps2",
    "k": "impairment.k",
    "L": "impairment.L",
    "N": "system.n_elements",
    "n_elements": "system.n_elements",
    "snr_db": "system.snr_db",
    "plos": "pathloss.plos",
    "trials": "engine.trials",
    "seed": "engine.seed",
    "mode": "engine.mode",
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Scenario:
    """One fully specified operating point."""

    geometry: ScenarioGeometry
    pathloss: PathLossParams
    alloc: PowerAllocation
    profile: ImpairmentProfile
    n_elements: int
    snr_db: float

    @property
    def k(self) -> float:
        return self.profile.level


@dataclass(frozen=True)
class ExperimentConfig:
    experiment: str = "custom"
    geometry: ScenarioGeometry = field(default_factory=ScenarioGeometry)
    pathloss: PathLossParams = field(default_factory=PathLossParams)
    k: float = 0.15
    n_cells: int = 3
    eps2: float = 0.2
    n_elements: int = 64
    snr_db: float = 30.0
    sweep_variable: str = "snr"
    sweep_values: tuple = tuple(float(v) for v in range(0, 101, 5))
    mode: SecondMomentMode = SecondMomentMode.CONSISTENT
    trials: int = 100_000
    seed: int = 0
    sic_replica: str = "corrected"
    workers: int = 1
    engines: tuple = ("analytic", "upper", "mc", "oma_analytic", "oma_mc")
    output: Optional[str] = None

    def __post_init__(self):
        if self.sweep_variable not in SWEEP_VARIABLES:
            raise ConfigError(f"sweep.variable must be one of {SWEEP_VARIABLES}")
        if not self.sweep_values or not all(math.isfinite(v) for v in self.sweep_values):
            raise ConfigError("sweep grid must be nonempty and finite")
        for e in self.engines:
            if e not in ENGINES:
                raise ConfigError(f"unknown engine {e!r}")
        object.__setattr__(self, "mode", SecondMomentMode(self.mode))

    def base_scenario(self) -> Scenario:
        return Scenario(
            self.geometry, self.pathloss, PowerAllocation(self.eps2),
            ImpairmentProfile.from_level(self.k, self.n_cells), self.n_elements, self.snr_db,
        )

    def scenario_at(self, value: float) -> Scenario:
        s = self.base_scenario()
        var = self.sweep_variable
        if var == "snr":
            return replace(s, snr_db=float(value))
        if var == "altitude":
            return replace(s, geometry=s.geometry.with_altitude(float(value)))
        if var == "n_elements":
            return replace(s, n_elements=_as_int(value, "n_elements"))
        if var == "k":
            return replace(s, profile=ImpairmentProfile.from_level(float(value), self.n_cells))
        if var == "L":
            return replace(s, profile=ImpairmentProfile.from_level(self.k, _as_int(value, "L")))
        return replace(s, alloc=PowerAllocation(float(value)))

    def scenarios(self):
        return [(v, self.scenario_at(v)) for v in self.sweep_values]


def _as_int(value, name):
    if float(value) != int(value):
        raise ConfigError(f"{name} must be an integer, got {value}")
    return int(value)


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def parse_number(text: str) -> float:
    """Float literal or simple arithmetic on literals and ``pi``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(text)

    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


def parse_grid(text: str) -> tuple:
    """``start:step:stop`` (inclusive) or a comma-separated list."""
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must be start:step:stop, got {text!r}")
        start, step, stop = (parse_number(p) for p in parts)
        if step == 0 or (stop - start) / step < 0:
            raise ValueError(f"grid {text!r} is empty")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 12) for i in range(n))
    values = tuple(parse_number(p) for p in text.split(",") if p.strip())
    if not values:
        raise ValueError("grid is empty")
    return values


def _read_pairs(text: str):
    pairs = {}
    lines = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        key = ALIASES.get(key, key)
        if key not in DEFAULTS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in pairs:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        pairs[key] = value
        lines[key] = lineno
    return pairs, lines


def parse_config(text: str) -> ExperimentConfig:
    pairs, lines = _read_pairs(text)

    if ("sweep.variable" in pairs) != ("sweep.grid" in pairs):
        missing = "sweep.grid" if "sweep.variable" in pairs else "sweep.variable"
        present = "sweep.variable" if missing == "sweep.grid" else "sweep.grid"
        raise ConfigError(f"line {lines[present]}: {present} given without required key {missing!r}")

    values = dict(DEFAULTS, **pairs)

    def at(key):
        return f"line {lines[key]}" if key in lines else "default"

    def num(key):
        try:
            return parse_number(values[key])
        except ValueError as exc:
            raise ConfigError(f"{at(key)}: {key}: {exc}") from None

    def integer(key):
        v = num(key)
        if v != int(v):
            raise ConfigError(f"{at(key)}: {key} must be an integer")
        return int(v)

    current = None
    try:
        current = "geometry.altitude"
        uav = UavTrajectory(num("geometry.radius"), num("geometry.altitude"), num("geometry.angle"))
        current = "geometry.d_sj"
        geo = ScenarioGeometry(
            source=Position3(num("geometry.source_x"), 0.0, 0.0),
            user1=Position3(num("geometry.user1_x"), 0.0, num("geometry.user1_z")),
            user2=Position3(num("geometry.user2_x"), 0.0, num("geometry.user2_z")),
            uav=uav,
            neighbor_d_sj=num("geometry.d_sj"),
            neighbor_d_j=num("geometry.d_j"),
        )
        current = "pathloss.plos"
        plos = values["pathloss.plos"].strip()
        pathloss = PathLossParams(
            num("pathloss.ell1"), num("pathloss.mho1"), num("pathloss.ell2"),
            num("pathloss.mho2"), num("pathloss.elevation"),
            parse_number(plos) if plos else None,
        )
        current = "alloc.eps2"
        eps2 = num("alloc.eps2")
        PowerAllocation(eps2)
        current = "impairment.k"
        k = num("impairment.k")
        current = "impairment.L"
        n_cells = integer("impairment.L")
        ImpairmentProfile.from_level(k, n_cells)
        current = "system.n_elements"
        n_elements = integer("system.n_elements")
        if n_elements < 1:
            raise ValueError("n_elements must be >= 1")
        current = "sweep.grid"
        grid = parse_grid(values["sweep.grid"])
        current = "engine.trials"
        trials = integer("engine.trials")
        if trials < 1:
            raise ValueError("trials must be >= 1")
        current = "engine.seed"
        seed = integer("engine.seed")
        if seed < 0:
            raise ValueError("seed must be >= 0")
        current = "engine.workers"
        workers = integer("engine.workers")
        current = "engine.sic_replica"
        replica = values["engine.sic_replica"].strip()
        if replica not in ("corrected", "paper"):
            raise ValueError("sic_replica must be 'corrected' or 'paper'")
        current = "engine.mode"
        mode = SecondMomentMode(values["engine.mode"].strip())
        current = "engine.engines"
        engines = tuple(e.strip() for e in values["engine.engines"].split(",") if e.strip())
        current = "sweep.variable"
        cfg = ExperimentConfig(
            experiment=values["output.experiment"].strip() or "custom",
            geometry=geo,
            pathloss=pathloss,
            k=k,
            n_cells=n_cells,
            eps2=eps2,
            n_elements=n_elements,
            snr_db=num("system.snr_db"),
            sweep_variable=values["sweep.variable"].strip(),
            sweep_values=grid,
            mode=mode,
            trials=trials,
            seed=seed,
            sic_replica=replica,
            workers=workers,
            engines=engines,
            output=values["output.path"].strip() or None,
        )
        current = "sweep.grid"
        cfg.scenarios()
    except ConfigError as exc:
        raise ConfigError(f"{at(current)}: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"{at(current)}: {current}: {exc}") from None
    return cfg


def load_config(path: Optional[str]) -> ExperimentConfig:
    if path is None:
        return parse_config("")
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
