import pytest

from waterhammer.cli import main
from waterhammer.config import bundled_text


@pytest.fixture()
def short_scenario(tmp_path):
    path = tmp_path / "short.toml"
    path.write_text(bundled_text("waterhammer_s8").replace("t_end = 0.8", "t_end = 0.1"))
    return str(path)


def test_run(tmp_path, short_scenario, capsys):
    out = tmp_path / "out"
    assert main(["run", "--scenario", short_scenario, "--out", str(out), "--probes", "10,19.9"]) == 0
    assert (out / "probe_x10.csv").exists() and (out / "events.csv").exists()
    assert "closure step=400" in capsys.readouterr().out
    assert main(["run", "--scenario", short_scenario, "--out", str(out)]) == 2
    assert main(["run", "--scenario", short_scenario, "--out", str(out), "--force"]) == 0


def test_validation_exit_code(tmp_path, short_scenario):
    assert main(["run", "--scenario", short_scenario, "--out", str(tmp_path), "--dx", "0.3"]) == 2
    assert main(["run", "--scenario", str(tmp_path / "missing.toml"), "--out", str(tmp_path)]) == 2


def test_argparse_errors_exit_two(tmp_path):
    with pytest.raises(SystemExit) as info:
        main(["run", "--out", str(tmp_path), "--probes", "a,b"])
    assert info.value.code == 2


def test_numerical_abort_exit_code(tmp_path):
    path = tmp_path / "bad.toml"
    # supersonic initial flow is caught by the monitor before the first step
    text = bundled_text("waterhammer_s8").replace("v_init = 1.0", "v_init = 600.0")
    path.write_text(text)
    assert main(["run", "--scenario", str(path), "--out", str(tmp_path / "o")]) == 3


def test_converge(tmp_path, capsys):
    path = tmp_path / "pulse.toml"
    text = bundled_text("waterhammer_s8")
    text = (text.replace("rho_init = 1000.0", 'rho_init = "1000 + exp(-((x-20)/6)**2)"')
            .replace("v_init = 1.0", "v_init = 0.0").replace("c_f = 2.0", "c_f = 0.0")
            .replace("t_close = 0.04", "t_close = 1.0").replace("t_end = 0.8", "t_end = 0.05"))
    path.write_text(text)
    assert main(["converge", "--scenario", str(path), "--out", str(tmp_path / "o")]) == 0
    rows = (tmp_path / "o" / "order.csv").read_text().splitlines()
    assert float(rows[-1].split(",")[-1]) == pytest.approx(2.0, abs=0.3)


def test_weak(tmp_path, short_scenario):
    text = bundled_text("waterhammer_s8").replace("t_end = 0.8", "t_end = 0.3")
    path = tmp_path / "w.toml"
    path.write_text(text)
    assert main(["weak", "--scenario", str(path), "--out", str(tmp_path / "o"), "--dx", "0.4,0.2,0.1"]) == 0
    assert (tmp_path / "o" / "weak.csv").exists()


def test_sweep(tmp_path, short_scenario, capsys):
    assert main(["sweep", "--scenario", short_scenario, "--out", str(tmp_path / "o"),
                 "--courant", "1,0.5"]) == 0
    assert (tmp_path / "o" / "sweep.csv").exists()
    assert (tmp_path / "o" / "co0.5_dx0.1" / "probe_x10.csv").exists()


def test_moc(tmp_path, capsys):
    assert main(["moc", "--out", str(tmp_path)]) == 0
    assert capsys.readouterr().out.count("PASS") == 3
