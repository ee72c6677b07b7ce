"""Batch front end: exit codes, file outputs, determinism.

Everything runs in process through main(argv); no subprocesses. Exit code 0
is success, 1 a configuration problem, 2 a numerical failure.
"""

import json

import numpy as np
import pytest

from blochwave.cli import main


def run(args):
    return main([str(a) for a in args])


def write_config(tmp_path, name="config.json", **fields):
    cfg = {
        "instance": {
            "lambda": {"delta": -0.0175, "omega_a": 0.4, "omega_b": 0.3, "big_delta": 1.0}
        },
        "time_window": [40.0, 200],
    }
    cfg.update(fields)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


def read_csv(path):
    rows = [
        line.split(",")
        for line in path.read_text().splitlines()
        if line and not line.startswith("#")
    ]
    header, data = rows[0], rows[1:]
    return header, np.array([[float(c) for c in row] for row in data])


def test_lambda_demo_outputs_and_determinism(tmp_path, capsys):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert run(["lambda-demo", "--out", out1]) == 0
    names = [
        "populations_exact.csv",
        "populations_order0.csv",
        "populations_iter4.csv",
        "populations_hermitized10.csv",
        "report.json",
    ]
    for n in names:
        assert (out1 / n).is_file()

    report = json.loads((out1 / "report.json").read_text())
    assert report["diagnostics"]["eps"] == pytest.approx(0.00875, abs=1e-15)
    assert report["diagnostics"]["eps_prime"] == pytest.approx(0.25, abs=1e-15)
    assert report["diagnostics"]["convergent"] is True
    assert report["fixed_point"]["order"] == 12
    assert report["fixed_point"]["residual"] <= 1e-12
    assert report["spectrum"]["max_abs_error"] <= 1e-12
    runs = report["runs"]
    assert runs["iter4"]["norm_leakage"] == pytest.approx(0.036254245615088852, rel=1e-9)
    assert runs["hermitized10"]["norm_leakage"] <= 1e-12
    # higher order tracks the envelope strictly better
    assert runs["iter4"]["envelope_rms_error"] < runs["order0"]["envelope_rms_error"]
    assert runs["order0"]["envelope_rms_error"] == pytest.approx(0.17196052932570444, rel=1e-6)
    assert runs["iter4"]["envelope_rms_error"] == pytest.approx(0.05574217979282164, rel=1e-6)

    capsys.readouterr()
    assert run(["lambda-demo", "--out", out2]) == 0
    for n in names:
        assert (out1 / n).read_bytes() == (out2 / n).read_bytes()


def test_lambda_demo_csv_shape(tmp_path):
    out = tmp_path / "demo"
    assert run(["lambda-demo", "--out", out, "--n-points", 50, "--t-max", 20]) == 0
    header, data = read_csv(out / "populations_exact.csv")
    assert header == ["t", "pop_1", "pop_2", "pop_3", "norm"]
    assert data.shape == (50, 5)
    assert data[0, 0] == 0.0 and data[-1, 0] == pytest.approx(20.0)
    assert np.allclose(data[:, 4], 1.0, atol=1e-12)  # exact evolution conserves norm
    assert np.allclose(data[:, 1:4].sum(axis=1), data[:, 4], atol=1e-12)


def test_reduce_report(tmp_path):
    cfg = write_config(tmp_path, method="fixed-point", tol=1e-12)
    assert run(["reduce", "--config", cfg, "--out", tmp_path]) == 0
    report = json.loads((tmp_path / "reduce_report.json").read_text())
    assert report["method"] == "fixed-point"
    assert report["residual"] <= 1e-12
    assert report["x_unitarity_defect"] <= 1e-12
    assert report["spectrum"]["max_abs_error"] <= 1e-9
    assert report["two_cycle"]["cycle_detected"] is False
    assert report["bloch_equation_defect"] <= 1e-9
    b = np.array([[complex(re, im) for re, im in row] for row in report["b"]])
    assert b.shape == (1, 2)


def test_reduce_method_override(tmp_path):
    cfg = write_config(tmp_path)
    assert run(["reduce", "--config", cfg, "--method", "sylvester", "--order", 3,
                "--out", tmp_path]) == 0
    report = json.loads((tmp_path / "reduce_report.json").read_text())
    assert report["method"] == "sylvester"
    assert report["order"] == 4  # partial sum b_0 .. b_3
    assert report["residual"] == pytest.approx(5.137596824269735e-05, rel=1e-6)


def test_reduce_rejects_exact_method(tmp_path, capsys):
    cfg = write_config(tmp_path, method="exact")
    assert run(["reduce", "--config", cfg, "--out", tmp_path]) == 1
    assert "exact" in capsys.readouterr().err


def test_simulate_fixed_point(tmp_path):
    cfg = write_config(
        tmp_path,
        method="fixed-point",
        outputs={"populations_csv": "pops.csv", "report_json": "rep.json"},
    )
    assert run(["simulate", "--config", cfg, "--out", tmp_path]) == 0
    header, data = read_csv(tmp_path / "pops.csv")
    assert header == ["t", "pop_1", "pop_2", "pop_3", "norm"]
    assert data.shape == (200, 5)
    assert np.allclose(data[:, 1:4].sum(axis=1), data[:, 4], atol=1e-12)
    report = json.loads((tmp_path / "rep.json").read_text())
    assert report["method"] == "fixed-point"
    assert report["norm_leakage"] == pytest.approx(np.max(np.abs(data[:, 4] - 1.0)), rel=1e-9)
    assert len(report["max_population_error"]) == 3

    # same inputs, same bytes
    first = (tmp_path / "pops.csv").read_bytes()
    assert run(["simulate", "--config", cfg, "--out", tmp_path]) == 0
    assert (tmp_path / "pops.csv").read_bytes() == first


def test_simulate_hermitized_conserves_norm(tmp_path):
    cfg = write_config(
        tmp_path,
        method="fixed-point",
        hermitized=True,
        outputs={"populations_csv": "pops.csv", "report_json": "rep.json"},
    )
    assert run(["simulate", "--config", cfg, "--out", tmp_path]) == 0
    report = json.loads((tmp_path / "rep.json").read_text())
    assert report["hermitized"] is True
    assert report["norm_leakage"] <= 1e-12


def test_simulate_exact_writes_only_populations(tmp_path):
    cfg = write_config(tmp_path, method="exact")
    assert run(["simulate", "--config", cfg, "--out", tmp_path]) == 0
    assert (tmp_path / "populations.csv").is_file()
    assert not (tmp_path / "simulate_report.json").exists()


def test_simulate_custom_initial_state(tmp_path):
    cfg = write_config(tmp_path, method="perturbative", order=3, psi0=[[0.0, 1.0], 0.0, 0.0])
    assert run(["simulate", "--config", cfg, "--out", tmp_path]) == 0
    header, data = read_csv(tmp_path / "populations.csv")
    assert data[0, 1] == pytest.approx(1.0)  # |i|^2 on the first state


def test_simulate_bad_initial_state(tmp_path, capsys):
    cfg = write_config(tmp_path, psi0=[1.0, 0.0])
    assert run(["simulate", "--config", cfg, "--out", tmp_path]) == 1
    assert "psi0" in capsys.readouterr().err


def test_spectrum_csv(tmp_path):
    cfg = write_config(tmp_path, method="fixed-point", tol=1e-12)
    assert run(["spectrum", "--config", cfg, "--out", tmp_path]) == 0
    header, data = read_csv(tmp_path / "spectrum.csv")
    assert header == ["index", "exact", "reduced", "abs_error"]
    assert data.shape == (3, 4)
    assert np.max(data[:, 3]) <= 1e-9
    assert np.all(np.diff(data[:, 1]) >= 0)


def test_blocks_and_file_instances_agree(tmp_path):
    blocks = {
        "omega": [[0.01, 0.0], [0.0, -0.01]],
        "coupling": [[0.1, [0.0, 0.05]]],
        "delta": [[1.2]],
    }
    inner = tmp_path / "instance.json"
    inner.write_text(json.dumps({"instance": {"blocks": blocks}}))

    direct = write_config(tmp_path, name="direct.json", instance={"blocks": blocks})
    via_file = write_config(tmp_path, name="via_file.json", instance={"file": "instance.json"})
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    assert run(["reduce", "--config", direct, "--out", out_a]) == 0
    assert run(["reduce", "--config", via_file, "--out", out_b]) == 0
    assert (out_a / "reduce_report.json").read_bytes() == (out_b / "reduce_report.json").read_bytes()


def test_nested_file_reference_rejected(tmp_path, capsys):
    (tmp_path / "one.json").write_text(json.dumps({"instance": {"file": "two.json"}}))
    (tmp_path / "two.json").write_text(json.dumps({"instance": {"file": "one.json"}}))
    cfg = write_config(tmp_path, instance={"file": "one.json"})
    assert run(["reduce", "--config", cfg, "--out", tmp_path]) == 1
    assert "nested" in capsys.readouterr().err


def test_config_error_paths(tmp_path, capsys):
    missing = tmp_path / "nope.json"
    assert run(["reduce", "--config", missing, "--out", tmp_path]) == 1
    assert "cannot read" in capsys.readouterr().err

    bad = tmp_path / "bad.json"
    bad.write_text('{"instance": {lambda}}')
    assert run(["reduce", "--config", bad, "--out", tmp_path]) == 1
    err = capsys.readouterr().err
    assert "line 1" in err and "column" in err

    both = write_config(
        tmp_path,
        name="both.json",
        instance={
            "lambda": {"delta": 0.1, "big_delta": 1.0},
            "blocks": {"omega": [[0.0]], "coupling": [[0.0]], "delta": [[1.0]]},
        },
    )
    assert run(["reduce", "--config", both, "--out", tmp_path]) == 1
    assert "exactly one" in capsys.readouterr().err

    assert run(["reduce", "--config", write_config(tmp_path, name="m.json", method="magic"),
                "--out", tmp_path]) == 1
    assert "method" in capsys.readouterr().err

    assert run(["reduce", "--config", write_config(tmp_path, name="w.json", time_window=[0.0, 10]),
                "--out", tmp_path]) == 1
    assert "time_window" in capsys.readouterr().err

    assert run(["simulate", "--config", write_config(tmp_path, name="o.json",
                outputs={"movie": "x.mp4"}), "--out", tmp_path]) == 1
    assert "unknown output kind" in capsys.readouterr().err


def test_numerical_failure_exit_code(tmp_path, capsys):
    # omega and delta share the eigenvalue 1: the Sylvester route must refuse
    cfg = write_config(
        tmp_path,
        instance={"blocks": {"omega": [[1.0]], "coupling": [[0.1]], "delta": [[1.0]]}},
        method="sylvester",
        order=2,
    )
    assert run(["reduce", "--config", cfg, "--out", tmp_path]) == 2
    err = capsys.readouterr().err
    assert "numerical failure" in err and "sylvester_series" in err


def test_validate_sweep(tmp_path, capsys):
    assert run(["validate", "--seed", 7, "--out", tmp_path]) == 0
    report = json.loads((tmp_path / "validate_report.json").read_text())
    assert report["all_pass"] is True
    for suite in report["suites"].values():
        assert suite["pass"] is True


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as info:
        run(["--version"])
    assert info.value.code == 0
    assert "blochwave" in capsys.readouterr().out
