import math
from dataclasses import replace

import pytest

from risnoma.experiments import cli, presets
from risnoma.experiments.config import ConfigError, load_config, parse_config, parse_grid, parse_number
from risnoma.experiments.output import COLUMNS, ResultRow, emit_csv, format_csv, parse_csv, read_csv
from risnoma.experiments.report import ReportEntry, ValidationReport, build_report
from risnoma.experiments.runner import run_config, sim_point
from risnoma.montecarlo import run_point

HEADER = ("experiment,user,engine,mode,sweep_var,sweep_value,n_elements,snr_db,k,L,eps2,"
          "plos,ber,ci_low,ci_high,trials,seed")


def test_empty_config_is_reference_set():
    cfg = parse_config("")
    assert cfg.geometry.uav.radius == 5 and cfg.geometry.uav.altitude == 20
    assert cfg.geometry.uav.angle == pytest.approx(math.pi / 4)
    assert cfg.eps2 == 0.2 and cfg.k == 0.15 and cfg.n_cells == 3
    assert cfg.trials == 100_000
    assert cfg.sweep_variable == "snr" and len(cfg.sweep_values) == 21
    assert load_config(None) == cfg


def test_config_rejects_bad_allocation():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("eps2 = 0.6")
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("# comment\nalloc.eps2 = 0.5\n")


def test_config_errors_are_line_anchored():
    with pytest.raises(ConfigError, match="line 3: unknown key"):
        parse_config("k = 0.1\n\nbogus.key = 1\n")
    with pytest.raises(ConfigError, match="line 2: duplicate"):
        parse_config("k = 0.1\nimpairment.k = 0.2\n")
    with pytest.raises(ConfigError, match="line 1: expected"):
        parse_config("just words\n")
    with pytest.raises(ConfigError, match="line 1.*sweep.grid"):
        parse_config("sweep.variable = altitude\n")
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("sweep.variable = altitude\nsweep.grid = 0:10:100\n")  # T = 0 is invalid
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("T = -3")
    with pytest.raises(ConfigError):
        parse_config("sweep.variable = bogus\nsweep.grid = 1,2\n")
    with pytest.raises(ConfigError):
        parse_config("engine.engines = analytic,telepathy\n")


def test_grid_parsing():
    cfg = parse_config("sweep.variable = snr\nsweep.grid = 0:10:100\n")
    assert cfg.sweep_values == tuple(float(v) for v in range(0, 101, 10))
    assert parse_grid("1, 2.5, 4") == (1.0, 2.5, 4.0)
    assert parse_grid("0:0.1:0.3") == (0.0, 0.1, 0.2, 0.3)
    with pytest.raises(ValueError):
        parse_grid("5:1:0")
    assert parse_number("pi/4") == pytest.approx(math.pi / 4)
    with pytest.raises(ValueError):
        parse_number("__import__('os')")


def test_sweep_variables_map_to_scenarios():
    cfg = parse_config("sweep.variable = altitude\nsweep.grid = 10,30\n")
    assert [s.geometry.uav.altitude for _, s in cfg.scenarios()] == [10.0, 30.0]
    cfg = parse_config("sweep.variable = L\nsweep.grid = 0,2\n")
    assert [s.profile.n_cells for _, s in cfg.scenarios()] == [0, 2]
    cfg = parse_config("sweep.variable = k\nsweep.grid = 0,0.1\n")
    assert [s.k for _, s in cfg.scenarios()] == [0.0, 0.1]
    with pytest.raises(ConfigError):
        parse_config("sweep.variable = n_elements\nsweep.grid = 1.5\n")


def _row(**kw):
    base = dict(experiment="e", user="u1", engine="analytic", mode="paper", sweep_var="snr",
                sweep_value=10.0, n_elements=64, snr_db=10.0, k=0.15, L=3, eps2=0.2,
                plos=0.3055201996, ber=0.0123456789)
    base.update(kw)
    return ResultRow(**base)


def test_csv_header_and_round_trip(tmp_path):
    rows = [
        _row(),
        _row(user="u2", engine="mc", mode="sic-corrected", ci_low=0.01, ci_high=0.015, trials=1000, seed=7),
        _row(sweep_value=5.0, snr_db=5.0, ber=0.25),
    ]
    text = format_csv(rows)
    assert text.splitlines()[0] == HEADER
    assert ",".join(COLUMNS) == HEADER
    path = tmp_path / "out.csv"
    emit_csv(rows, path)
    back = read_csv(path)
    assert back == sorted(rows, key=ResultRow.sort_key)
    assert format_csv(back) == text
    assert parse_csv(text) == back
    assert text.splitlines()[1].split(",")[13] == ""  # analytic rows carry no interval


def test_csv_sorted_by_experiment_user_sweep():
    rows = [_row(experiment="b"), _row(user="u2"), _row(sweep_value=0.0), _row(user="system")]
    keys = [(r.experiment, r.user, r.sweep_value) for r in parse_csv(format_csv(rows))]
    assert keys == sorted(keys)


def test_empty_rows_rejected(tmp_path):
    path = tmp_path / "none.csv"
    with pytest.raises(ValueError):
        emit_csv([], path)
    assert not path.exists()


def test_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        emit_csv([_row()], tmp_path / "missing" / "x.csv")


def test_row_range_check():
    with pytest.raises(ValueError):
        _row(ber=1.5)


def test_fig2_preset_contents():
    cfgs = presets.preset_fig2()
    names = [c.experiment for c in cfgs]
    assert "fig2_eps0.2_noris" in names and "fig2_eps0.1_noris" in names
    main = [c for c in cfgs if c.eps2 == 0.2]
    assert sorted(c.n_elements for c in main) == [1, 16, 32, 64]
    assert all(c.k == 0.15 and c.n_cells == 3 for c in cfgs)
    assert all(c.mode.value == "paper" for c in cfgs)


def test_fig3_preset_contents():
    cfgs = presets.preset_fig3()
    ideal = [c for c in cfgs if c.experiment.endswith("_ideal")]
    nonideal = [c for c in cfgs if c.experiment.endswith("_nonideal")]
    assert ideal and nonideal and len(ideal) == len(nonideal)
    assert all(c.k == 0 and c.n_cells == 0 for c in ideal)
    assert all("mc" not in c.engines for c in cfgs)


def test_fig4_preset_contents():
    cfgs = presets.preset_fig4()
    assert {(c.k, c.n_cells) for c in cfgs} == {(0.0, 0), (0.15, 0), (0.0, 3), (0.15, 3)}
    assert {c.pathloss.plos_override for c in cfgs} == {0.1, 0.3}
    assert all(c.sweep_variable == "altitude" and c.n_elements == 32 and c.snr_db == 50 for c in cfgs)
    assert all({"oma_analytic", "oma_mc", "analytic", "mc"} <= set(c.engines) for c in cfgs)


def test_fig4_analytic_rows_behave():
    for cfg in presets.preset_fig4():
        cfg = replace(cfg, engines=("analytic", "oma_analytic"))
        rows = run_config(cfg)
        system = [r.ber for r in sorted(rows, key=lambda r: r.sweep_value)
                  if r.user == "system" and r.engine == "analytic"]
        assert all(b > a for a, b in zip(system, system[1:]))
        users = {(r.user, r.engine) for r in rows}
        assert {("u1", "analytic"), ("u2", "analytic"), ("system", "oma_analytic")} <= users


def test_both_users_emitted_and_params_echo():
    cfg = replace(presets.preset_fig2(trials=2000, seed=11)[2], sweep_values=(40.0, 60.0))
    rows = run_config(cfg)
    assert {r.user for r in rows} == {"u1", "u2", "system"}
    assert {r.engine for r in rows} == {"analytic", "upper", "mc"}
    mc = [r for r in rows if r.engine == "mc" and r.user == "u2" and r.sweep_value == 60.0][0]
    assert (mc.snr_db, mc.n_elements, mc.k, mc.L, mc.eps2, mc.trials, mc.seed) == (60.0, 64, 0.15, 3, 0.2, 2000, 11)
    est = run_point(sim_point(cfg, cfg.scenario_at(60.0)))
    assert est.ber_u2 == mc.ber
    assert mc.ci_low <= mc.ber <= mc.ci_high


def _entry(analytic, mc, lo, hi, user="u1", n=64):
    return ReportEntry("e", user, 10.0, n, analytic, mc, lo, hi)


def test_report_gating_and_flags():
    assert _entry(1e-2, 1.2e-2, 0.0119, 0.0121).flagged
    assert not _entry(1e-2, 1.01e-2, 0.009, 0.011).flagged
    assert not _entry(1e-5, 1e-3, 9e-4, 1.1e-3).gated
    assert not _entry(1e-2, 1.2e-2, 0.0119, 0.0121, n=32).gated
    assert not _entry(1e-2, 1.2e-2, 0.0119, 0.0121, user="system").gated
    rep = ValidationReport((_entry(1e-2, 1.2e-2, 0.0119, 0.0121), _entry(1e-2, 1e-2, 0.009, 0.011)))
    assert not rep.ok and len(rep.flagged) == 1
    assert "flagged (> 3 CI widths): 1" in rep.format()


def test_build_report_pairs_rows():
    rows = [_row(), _row(engine="mc", mode="sic-corrected", ber=0.0125, ci_low=0.012, ci_high=0.013, trials=10, seed=0),
            _row(engine="upper", ber=0.1)]
    rep = build_report(rows)
    assert len(rep.entries) == 1
    assert rep.entries[0].deviation == pytest.approx(abs(0.0125 - 0.0123456789) / 0.001)


def _cfg(tmp_path, text):
    p = tmp_path / "c.cfg"
    p.write_text(text)
    return str(p)


def test_cli_point_and_sweep(tmp_path, capsys):
    out = tmp_path / "p.csv"
    path = _cfg(tmp_path, "N = 16\nsnr_db = 40\n")
    assert cli.main(["point", "--config", path, "--trials", "2000", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert {r.snr_db for r in rows} == {40.0} and {r.n_elements for r in rows} == {16}
    path = _cfg(tmp_path, "N = 16\nsweep.variable = snr\nsweep.grid = 0:20:40\nengine.engines = analytic\n")
    assert cli.main(["--seed", "3", "sweep", "--config", path]) == 0
    text = capsys.readouterr().out
    assert text.startswith(HEADER) and len(parse_csv(text)) == 9


def test_cli_fig3(tmp_path):
    out = tmp_path / "f3.csv"
    assert cli.main(["fig3", "--out", str(out)]) == 0
    rows = read_csv(out)
    assert {r.mode for r in rows} == {"paper"}
    assert any(r.experiment.endswith("_ideal") for r in rows)


def test_cli_config_error_exit(tmp_path, capsys):
    assert cli.main(["point", "--config", _cfg(tmp_path, "eps2 = 0.6\n")]) == 1
    assert "line 1" in capsys.readouterr().err
    assert cli.main(["point", "--config", str(tmp_path / "nope.cfg")]) == 1
    with pytest.raises(SystemExit):
        cli.main(["point", "--mode", "sideways"])


def test_cli_runtime_error_exit(tmp_path):
    path = _cfg(tmp_path, "pathloss.ell1 = -4\npathloss.plos = 1\nengine.engines = analytic\n")
    assert cli.main(["point", "--config", path]) == 2


def test_cli_validation_exit(tmp_path, monkeypatch):
    bad = ValidationReport((_entry(1e-2, 1.2e-2, 0.0119, 0.0121),))
    good = ValidationReport((_entry(1e-2, 1e-2, 0.009, 0.011),))
    monkeypatch.setattr(cli, "validate_report", lambda configs, workers: bad)
    assert cli.main(["validate", "--out", str(tmp_path / "r.txt")]) == 3
    assert "FLAG" in (tmp_path / "r.txt").read_text()
    monkeypatch.setattr(cli, "validate_report", lambda configs, workers: good)
    assert cli.main(["validate", "--trials", "10"]) == 0
