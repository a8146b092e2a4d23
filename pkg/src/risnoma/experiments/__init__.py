from risnoma.experiments.config import ConfigError, ExperimentConfig, parse_config
from risnoma.experiments.output import ResultRow, emit_csv, parse_csv, read_csv
from risnoma.experiments.presets import preset_fig2, preset_fig3, preset_fig4
from risnoma.experiments.report import ValidationReport, validate_report

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "ResultRow",
    "ValidationReport",
    "emit_csv",
    "parse_config",
    "parse_csv",
    "preset_fig2",
    "preset_fig3",
    "preset_fig4",
    "read_csv",
    "validate_report",
]
