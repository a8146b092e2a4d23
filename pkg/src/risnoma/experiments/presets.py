"""Preset experiment sets behind the ``fig2``/``fig3``/``fig4`` verbs.

fig2: BER vs SNR at k=0.15, L=3 for N in {16, 32, 64} plus the N=1
no-RIS comparator, with eps2=0.2 as the main series and eps2=0.1 as a
variant.  fig3 repeats the sweep analytically with ideal (k=0, L=0)
series added.  fig4: system BER vs altitude at SNR=50 dB, N=32 for
fixed Plos in {0.1, 0.3} and four impairment variants, NOMA and TDMA.
"""

from __future__ import annotations

from dataclasses import replace

from risnoma.channel import SecondMomentMode
from risnoma.experiments.config import ExperimentConfig
from risnoma.geometry import PathLossParams

SNR_GRID = tuple(float(v) for v in range(0, 101, 5))
ALTITUDE_GRID = tuple(float(v) for v in range(10, 101, 10))
FIG_N = (16, 32, 64)
EPS2_SERIES = (0.2, 0.1)
FIG4_PLOS = (0.1, 0.3)
FIG4_VARIANTS = ((0.0, 0), (0.15, 0), (0.0, 3), (0.15, 3))


def _base(mode, trials, seed, **kw) -> ExperimentConfig:
    return ExperimentConfig(mode=SecondMomentMode(mode), trials=trials, seed=seed, **kw)


def preset_fig2(mode="paper", trials=100_000, seed=0, k=0.15, n_cells=3) -> list[ExperimentConfig]:
    out = []
    for eps2 in EPS2_SERIES:
        for n in FIG_N:
            out.append(_base(
                mode, trials, seed, experiment=f"fig2_eps{eps2:g}_N{n}", k=k, n_cells=n_cells,
                eps2=eps2, n_elements=n, sweep_variable="snr", sweep_values=SNR_GRID,
                engines=("analytic", "upper", "mc"),
            ))
        out.append(_base(
            mode, trials, seed, experiment=f"fig2_eps{eps2:g}_noris", k=k, n_cells=n_cells,
            eps2=eps2, n_elements=1, sweep_variable="snr", sweep_values=SNR_GRID,
            engines=("no_ris_analytic", "no_ris_mc"),
        ))
    return out


def preset_fig3(mode="paper", trials=100_000, seed=0) -> list[ExperimentConfig]:
    out = []
    for tag, (k, n_cells) in (("nonideal", (0.15, 3)), ("ideal", (0.0, 0))):
        for cfg in preset_fig2(mode, trials, seed, k=k, n_cells=n_cells):
            engines = ("no_ris_analytic",) if cfg.n_elements == 1 else ("analytic", "upper")
            name = cfg.experiment.replace("fig2", "fig3") + f"_{tag}"
            out.append(replace(cfg, experiment=name, engines=engines))
    return out


def preset_fig4(mode="paper", trials=100_000, seed=0) -> list[ExperimentConfig]:
    out = []
    for plos in FIG4_PLOS:
        for k, n_cells in FIG4_VARIANTS:
            out.append(_base(
                mode, trials, seed, experiment=f"fig4_plos{plos:g}_k{k:g}_L{n_cells}",
                pathloss=PathLossParams(plos_override=plos), k=k, n_cells=n_cells,
                n_elements=32, snr_db=50.0, sweep_variable="altitude",
                sweep_values=ALTITUDE_GRID,
                engines=("analytic", "mc", "oma_analytic", "oma_mc"),
            ))
    return out
