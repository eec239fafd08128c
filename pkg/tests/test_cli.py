from smsemoa.cli import main
from smsemoa.harness import read_records


def test_run_with_config_file(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    out = tmp_path / "out.csv"
    cfg.write_text("kind = ojzj\nn = 8\nk = 2\nruns = 2\nseed = 3\n")
    code = main(["run", "--config", str(cfg), "--out", str(out), "--threads", "2"])
    assert code == 0
    records = read_records(out)
    assert len(records) == 6  # 3 strategies x 2 runs
    stdout = capsys.readouterr().out
    assert "aging" in stdout and "mean_evals" in stdout


def test_cli_flags_override_config(tmp_path):
    cfg = tmp_path / "exp.cfg"
    out = tmp_path / "out.csv"
    cfg.write_text("kind = ojzj\nn = 8\nk = 2\nruns = 5\n")
    assert main(["run", "--config", str(cfg), "--out", str(out), "--runs", "1"]) == 0
    assert len(read_records(out)) == 3


def test_run_without_out_errors(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    cfg.write_text("kind = ojzj\nn = 8\nk = 2\n")
    assert main(["run", "--config", str(cfg)]) == 2
    assert "error" in capsys.readouterr().err


def test_sweep_preset_grid(tmp_path):
    out = tmp_path / "fig2.csv"
    code = main(
        ["sweep", "fig2", "--out", str(out), "--runs", "1", "--max-iterations", "200"]
    )
    assert code == 0
    records = read_records(out)
    assert len(records) == 15  # 3 strategies x 5 sizes
    assert {r.n for r in records} == {10, 15, 20, 25, 30}


def test_summarize_prints_table(tmp_path, capsys):
    cfg = tmp_path / "exp.cfg"
    out = tmp_path / "out.csv"
    cfg.write_text("kind = ojzj\nn = 8\nk = 2\nruns = 2\nout = " + str(out) + "\n")
    main(["run", "--config", str(cfg)])
    capsys.readouterr()
    assert main(["summarize", str(out)]) == 0
    table = capsys.readouterr().out
    assert "classic" in table and "stochastic-update" in table

def test_summarize_rejects_malformed_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert main(["summarize", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_verify_quick(capsys):
    assert main(["verify", "--quick"]) == 0
    out = capsys.readouterr().out
    assert out.count("[PASS]") == 6
    assert "[FAIL]" not in out
