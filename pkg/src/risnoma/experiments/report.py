"""Analytic-versus-Monte-Carlo agreement report."""

from __future__ import annotations

from dataclasses import dataclass

from risnoma.experiments.output import ResultRow

FLAG_LIMIT = 3.0
GATE_MIN_BER = 1e-4
GATE_MIN_N = 64
VALIDATED_USERS = ("u1", "u2")


@dataclass(frozen=True)
class ReportEntry:
    experiment: str
    user: str
    sweep_value: float
    n_elements: int
    analytic: float
    mc: float
    ci_low: float
    ci_high: float

    @property
    def deviation(self) -> float:
        """|MC - analytic| in units of the full Wilson interval width."""
        return abs(self.mc - self.analytic) / (self.ci_high - self.ci_low)

    @property
    def gated(self) -> bool:
        return (self.user in VALIDATED_USERS and self.analytic >= GATE_MIN_BER
                and self.n_elements >= GATE_MIN_N)

    @property
    def flagged(self) -> bool:
        return self.gated and self.deviation > FLAG_LIMIT


@dataclass(frozen=True)
class ValidationReport:
    entries: tuple

    @property
    def flagged(self) -> list:
        return [e for e in self.entries if e.flagged]

    @property
    def gated(self) -> list:
        return [e for e in self.entries if e.gated]

    @property
    def ok(self) -> bool:
        return not self.flagged

    def format(self) -> str:
        lines = [
            f"{'experiment':<24} {'user':<6} {'sweep':>7} {'N':>4} {'analytic':>12} "
            f"{'mc':>12} {'dev/CIw':>8}  status"
        ]
        for e in self.entries:
            status = "FLAG" if e.flagged else ("ok" if e.gated else "-")
            lines.append(
                f"{e.experiment:<24} {e.user:<6} {e.sweep_value:>7g} {e.n_elements:>4d} "
                f"{e.analytic:>12.4e} {e.mc:>12.4e} {e.deviation:>8.2f}  {status}"
            )
        lines.append(
            f"gated points: {len(self.gated)}, flagged (> {FLAG_LIMIT:g} CI widths): {len(self.flagged)}"
        )
        return "\n".join(lines) + "\n"


def build_report(rows) -> ValidationReport:
    """Pair each analytic row with its Monte-Carlo row at the same point."""
    analytic = {}
    mc = {}
    for r in rows:
        key = (r.experiment, r.user, r.sweep_value)
        if r.engine in ("analytic", "no_ris_analytic"):
            analytic[key] = r
        elif r.engine in ("mc", "no_ris_mc"):
            mc[key] = r
    entries = []
    for key in sorted(analytic.keys() & mc.keys()):
        a: ResultRow = analytic[key]
        m: ResultRow = mc[key]
        entries.append(ReportEntry(a.experiment, a.user, a.sweep_value, a.n_elements,
                                   a.ber, m.ber, m.ci_low, m.ci_high))
    return ValidationReport(tuple(entries))


def validate_report(configs, workers: int = 1) -> ValidationReport:
    from risnoma.experiments.runner import run_configs

    return build_report(run_configs(configs, workers))
