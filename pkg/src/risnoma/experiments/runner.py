"""Turns experiment configurations into result rows."""

from __future__ import annotations

import logging
from dataclasses import replace

from risnoma import analytic, geometry
from risnoma.experiments.config import ExperimentConfig, Scenario
from risnoma.experiments.output import ResultRow
from risnoma.montecarlo import PointFailure, SimPoint, run_sweep

log = logging.getLogger(__name__)

MC_ENGINES = ("mc", "oma_mc", "no_ris_mc")


def operating_point(s: Scenario, mode) -> analytic.OperatingPoint:
    return analytic.OperatingPoint.from_scenario(
        s.geometry, s.pathloss, s.n_elements, s.snr_db, s.alloc, s.profile, mode
    )


def sim_point(cfg: ExperimentConfig, s: Scenario) -> SimPoint:
    return SimPoint(
        snr_db=s.snr_db, n_elements=s.n_elements, alloc=s.alloc, profile=s.profile,
        geometry=s.geometry, pathloss=s.pathloss, sic_replica=cfg.sic_replica,
        second_moment_mode=cfg.mode, trials=cfg.trials, master_seed=cfg.seed,
    )


def _row(cfg, s, value, user, engine, mode, ber, ci=(None, None), trials=None, seed=None):
    return ResultRow(
        experiment=cfg.experiment, user=user, engine=engine, mode=mode,
        sweep_var=cfg.sweep_variable, sweep_value=float(value), n_elements=s.n_elements,
        snr_db=float(s.snr_db), k=float(s.k), L=s.profile.n_cells, eps2=float(s.alloc.eps2),
        plos=float(geometry.los_probability(s.pathloss)), ber=float(ber),
        ci_low=ci[0], ci_high=ci[1], trials=trials, seed=seed,
    )


def _clip(p):
    # signed six-term sums can undershoot zero by rounding
    return min(max(p, 0.0), 1.0)


def analytic_rows(cfg: ExperimentConfig) -> list[ResultRow]:
    wanted = set(cfg.engines)
    if not wanted & {"analytic", "upper", "oma_analytic", "no_ris_analytic"}:
        return []
    rows = []
    mode = cfg.mode.value
    for value, s in cfg.scenarios():
        ev = analytic.evaluate(operating_point(s, cfg.mode))
        for engine in ("analytic", "no_ris_analytic"):
            if engine in wanted:
                for user in ("u1", "u2", "system"):
                    rows.append(_row(cfg, s, value, user, engine, mode, _clip(ev[user])))
        if "upper" in wanted:
            for user in ("u1", "u2"):
                rows.append(_row(cfg, s, value, user, "upper", mode, _clip(ev[f"upper_{user}"])))
        if "oma_analytic" in wanted:
            for user in ("u1", "u2", "system"):
                rows.append(_row(cfg, s, value, user, "oma_analytic", mode, _clip(ev[f"oma_{user}"])))
    return rows


def mc_rows(cfg: ExperimentConfig, workers: int = 1) -> list[ResultRow]:
    wanted = [e for e in MC_ENGINES if e in cfg.engines]
    if not wanted:
        return []
    scen = cfg.scenarios()
    results = run_sweep([sim_point(cfg, s) for _, s in scen], workers=workers)
    mode = f"sic-{cfg.sic_replica}"
    rows = []
    for (value, s), est in zip(scen, results):
        if isinstance(est, PointFailure):
            log.error("%s at %s=%s failed: %s", cfg.experiment, cfg.sweep_variable, value, est.message)
            continue
        for engine in wanted:
            prefix = "oma_" if engine == "oma_mc" else ""
            for user in ("u1", "u2", "system"):
                tag = prefix + user
                rows.append(_row(cfg, s, value, user, engine, mode, est.ber(tag),
                                 est.interval(tag), est.trials, est.master_seed))
    return rows


def run_config(cfg: ExperimentConfig, workers: int = 1) -> list[ResultRow]:
    return analytic_rows(cfg) + mc_rows(cfg, workers)


def run_configs(configs, workers: int = 1) -> list[ResultRow]:
    rows = []
    for cfg in configs:
        log.info("running %s (%d points)", cfg.experiment, len(cfg.sweep_values))
        rows.extend(run_config(cfg, workers))
    return rows


def override(cfg: ExperimentConfig, **changes) -> ExperimentConfig:
    changes = {k: v for k, v in changes.items() if v is not None}
    return replace(cfg, **changes) if changes else cfg
