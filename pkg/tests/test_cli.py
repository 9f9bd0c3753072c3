"""End-to-end CLI behaviour: verbs, formats, exit codes."""

import csv
import json
import math

import pytest

import retroflow as rf
from retroflow import serialize
from retroflow.cli import main

PI2 = math.pi**2


@pytest.fixture
def state_file(tmp_path):
    sp = rf.make_heat_spectrum(4)
    x = rf.SpectralState.from_values(sp, [1.0, -0.5, 0.25, 0.125])
    path = tmp_path / "state.json"
    serialize.save_json(path, serialize.state_to_dict(x))
    return path


@pytest.fixture
def power_state_file(tmp_path):
    x = rf.SpectralState.zeros(rf.make_heat_spectrum(2), rf.PowerTail(1.0, 1.0))
    path = tmp_path / "power.json"
    serialize.save_json(path, serialize.state_to_dict(x))
    return path


def test_classify_outputs_wire_format(power_state_file, capsys):
    assert main(["classify", "--in", str(power_state_file)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["class"] == "Z"
    assert payload["horizon"] == 0.0
    assert payload["open"] is True


def test_horizon_verb(state_file, capsys):
    assert main(["horizon", "--in", str(state_file)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"value": "inf", "open": False}


def test_evolve_writes_output(state_file, tmp_path):
    out = tmp_path / "out.json"
    assert main(["evolve", "--in", str(state_file), "--t", "0.5", "--out", str(out)]) == 0
    state = serialize.state_from_dict(serialize.load_json(out))
    assert state.coeff(1).to_linear() == pytest.approx(math.exp(-PI2 / 2), rel=1e-12)


def test_backward_reports_amplification(state_file, tmp_path, capsys):
    out = tmp_path / "back.json"
    assert main(["backward", "--in", str(state_file), "--t", "1.0", "--out", str(out)]) == 0
    err = capsys.readouterr().err
    assert "amplification" in err
    state = serialize.state_from_dict(serialize.load_json(out))
    assert state.log_mags[3] == pytest.approx(math.log(0.125) + 16 * PI2, rel=1e-12)


def test_backward_past_horizon_exits_3(power_state_file, capsys):
    assert main(["backward", "--in", str(power_state_file), "--t", "0.1"]) == 3
    err = json.loads(capsys.readouterr().err)
    assert err["error"] == "HorizonExceededError"


def test_group_evolve_negative_time(tmp_path, capsys):
    z = rf.lift(rf.SpectralState.zeros(rf.make_heat_spectrum(2), rf.PowerTail(1.0, 1.0)))
    path = tmp_path / "class.json"
    serialize.save_json(path, serialize.extended_to_dict(z))
    assert main(["group-evolve", "--in", str(path), "--s", "-0.5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["offset"] == pytest.approx(0.5)


def test_pair_verb(tmp_path, capsys):
    sp = rf.make_heat_spectrum(3)
    x = rf.SpectralState.basis(sp, 1)
    z = rf.lift(rf.SpectralState.basis(sp, 1))
    xp, zp = tmp_path / "x.json", tmp_path / "z.json"
    serialize.save_json(xp, serialize.state_to_dict(x))
    serialize.save_json(zp, serialize.extended_to_dict(z))
    assert main(["pair", "--x", str(xp), "--z", str(zp)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pairing"] == pytest.approx(1.0)
    assert payload["sign"] == 1


def test_pair_requires_reversible_state(power_state_file, tmp_path, capsys):
    z = rf.lift(rf.SpectralState.basis(rf.make_heat_spectrum(2), 1))
    zp = tmp_path / "z.json"
    serialize.save_json(zp, serialize.extended_to_dict(z))
    assert main(["pair", "--x", str(power_state_file), "--z", str(zp)]) == 3
    assert json.loads(capsys.readouterr().err)["error"] == "NotFullyReversibleError"


def test_duhamel_verb(tmp_path, capsys):
    sp = rf.make_heat_spectrum(2)
    x0 = rf.SpectralState.zeros(sp)
    f = rf.Forcing.from_dict({1: rf.ConstantForcing(1.0)})
    xp, fp = tmp_path / "x.json", tmp_path / "f.json"
    serialize.save_json(xp, serialize.state_to_dict(x0))
    serialize.save_json(fp, serialize.forcing_to_dict(f))
    out = tmp_path / "out.json"
    code = main(["duhamel", "--in", str(xp), "--forcing", str(fp),
                 "--t", "1.0", "--steps", "64", "--out", str(out)])
    assert code == 0
    state = serialize.state_from_dict(serialize.load_json(out))
    assert state.coeff(1).to_linear() == pytest.approx(0.10131594298788986, rel=1e-8)


def test_density_verb(tmp_path, capsys):
    x = rf.SpectralState.zeros(rf.make_heat_spectrum(2), rf.PowerTail(1.5, 0.5))
    xp = tmp_path / "x.json"
    serialize.save_json(xp, serialize.state_to_dict(x))
    out = tmp_path / "out.json"
    assert main(["density", "--in", str(xp), "--eps", "0.1", "--out", str(out)]) == 0
    cert = json.loads(capsys.readouterr().out)
    assert cert["achieved_error_bound"] <= 0.1
    result = serialize.state_from_dict(serialize.load_json(out))
    assert rf.classify(result).label is rf.ReversibilityClass.FULL


def test_shift_demo(capsys):
    assert main(["shift-demo", "--resolution", "100", "--radius", "0.4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["exclusion"]["found"] is True
    assert payload["exclusion"]["onset"] == pytest.approx(0.17)


def test_trajectory_csv(state_file, tmp_path):
    out = tmp_path / "traj.csv"
    code = main(["trajectory", "--in", str(state_file), "--t-min", "-0.5",
                 "--t-max", "0.5", "--steps", "5", "--out", str(out)])
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert rows[0][:4] == ["t", "offset", "norm", "log_norm"]
    assert len(rows) == 6
    times = [float(r[0]) for r in rows[1:]]
    assert times[0] == -0.5 and times[-1] == 0.5
    norms = [float(r[2]) for r in rows[1:]]
    assert all(b < a for a, b in zip(norms, norms[1:]))  # strictly decaying


def test_trajectory_extended_allows_negative_times(tmp_path):
    z = rf.lift(rf.SpectralState.zeros(rf.make_heat_spectrum(2), rf.PowerTail(1.0, 1.0)))
    zp = tmp_path / "z.json"
    serialize.save_json(zp, serialize.extended_to_dict(z))
    out = tmp_path / "traj.csv"
    code = main(["trajectory", "--in", str(zp), "--t-min", "-1", "--t-max", "1",
                 "--steps", "3", "--out", str(out), "--extended"])
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert float(rows[1][1]) == pytest.approx(1.0)  # offset column at t = -1


def test_trajectory_two_steps_are_exact_endpoints(state_file, tmp_path):
    out = tmp_path / "traj.csv"
    code = main(["trajectory", "--in", str(state_file), "--t-min", "0.0",
                 "--t-max", "2.0", "--steps", "2", "--out", str(out)])
    assert code == 0
    with open(out) as fh:
        rows = list(csv.reader(fh))
    assert [float(r[0]) for r in rows[1:]] == [0.0, 2.0]


def test_trajectory_rejects_single_step(state_file, tmp_path):
    out = tmp_path / "traj.csv"
    assert main(["trajectory", "--in", str(state_file), "--t-min", "0.0",
                 "--t-max", "1.0", "--steps", "1", "--out", str(out)]) == 2


def test_trajectory_past_horizon_exits_3(power_state_file, tmp_path, capsys):
    out = tmp_path / "traj.csv"
    code = main(["trajectory", "--in", str(power_state_file), "--t-min", "-1",
                 "--t-max", "0", "--steps", "3", "--out", str(out)])
    assert code == 3


def test_parse_failure_exits_2():
    assert main(["evolve", "--in", "missing.json"]) == 2  # --t absent


def test_missing_file_exits_2(capsys):
    assert main(["classify", "--in", "no-such-file.json"]) == 2


def test_malformed_json_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["classify", "--in", str(bad)]) == 2


def test_verify_single_suite(capsys):
    code = main(["verify", "--suite", "classification"])
    out = capsys.readouterr().out
    assert code == 0
    assert "[PASS]" in out and "[FAIL]" not in out


def test_verify_unknown_suite_exits_2(capsys):
    assert main(["verify", "--suite", "nonsense"]) == 2


def test_verify_respects_env_tolerance(capsys, monkeypatch):
    monkeypatch.setenv("RETROFLOW_TOL", "1e-6")
    assert main(["verify", "--suite", "restriction"]) == 0


def test_csv_format_output(state_file, capsys):
    assert main(["horizon", "--in", str(state_file), "--format", "csv"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out[0].split(",")[0] == "value"
