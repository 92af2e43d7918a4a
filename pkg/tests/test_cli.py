import json
import math

import pytest

import hypercalc.cli as cli


def run(argv, tmp_path, extra=()):
    out = tmp_path / "reports"
    code = cli.main(list(argv) + ["--output", str(out)] + list(extra))
    return code, out


def test_every_operation_mapped_exactly_once():
    seen = {}
    for sub, ops in cli.OPS_BY_SUBCOMMAND.items():
        assert sub in cli.HANDLERS
        for op in ops:
            assert op not in seen, f"{op} mapped to both {seen[op]} and {sub}"
            seen[op] = sub
    assert set(cli.HANDLERS) == set(cli.OPS_BY_SUBCOMMAND)
    # every public callable named in the map resolves to a real attribute
    import importlib
    for op in seen:
        mod_name, rest = op.split(".", 1)
        obj = importlib.import_module(f"hypercalc.{mod_name}")
        for part in rest.split("."):
            obj = getattr(obj, part)
        assert callable(obj)


def _csv_rows(path):
    import csv
    with open(path) as fh:
        return list(csv.reader(fh))


def test_pair_subcommand_writes_report(tmp_path):
    code, out = run(["pair", "--label", "delta", "--test", "gauss"], tmp_path)
    assert code == 0
    rec = json.loads((out / "pair.json").read_text())
    assert rec["label"].startswith("delta")
    rows = _csv_rows(out / "pair.csv")
    assert rows[0] == ["test", "re", "im", "err_bound"]
    assert abs(float(rows[1][1]) - 1.0) < 1e-10


def test_expand_reports_known_coefficient(tmp_path):
    code, out = run(["expand", "--label", "sech", "--order", "2"], tmp_path)
    assert code == 0
    rec = json.loads((out / "expand.json").read_text())
    c2 = rec["coefficients"][2]
    assert abs(c2[0] - math.pi ** 3 / 8.0) < 1e-8


def test_report_determinism(tmp_path):
    a1 = cli.main(["ode-solve", "--op", "t^2*D-1", "--basis", "delta",
                   "--order", "12", "--seed", "7",
                   "--output", str(tmp_path / "r1")])
    a2 = cli.main(["ode-solve", "--op", "t^2*D-1", "--basis", "delta",
                   "--order", "12", "--seed", "7",
                   "--output", str(tmp_path / "r2")])
    assert a1 == 0 and a2 == 0
    for suffix in ("json", "csv"):
        b1 = (tmp_path / "r1" / f"ode_solve.{suffix}").read_bytes()
        b2 = (tmp_path / "r2" / f"ode_solve.{suffix}").read_bytes()
        assert b1 == b2


def test_usage_errors_exit_2(tmp_path):
    assert cli.main(["no-such-command"]) == 2
    assert cli.main(["pair", "--label", "nonexistent",
                     "--output", str(tmp_path / "x")]) == 2
    assert cli.main(["pair", "--abs-tol", "-1",
                     "--output", str(tmp_path / "y")]) == 2


def test_failed_check_exits_1(tmp_path):
    moments = ",".join(str(float(math.factorial(k)) ** 2) for k in range(12))
    code, out = run(["support-check", "--moments", moments, "--S", "1.0"],
                    tmp_path)
    assert code == 1
    rec = json.loads((out / "support_check.json").read_text())
    assert "diverges" in rec["diagnosis"]


def test_config_file_merges_under_flags(tmp_path):
    cfgfile = tmp_path / "job.json"
    cfgfile.write_text(json.dumps({"label": "delta", "test": "gauss",
                                   "eta": 0.25}))
    code, out = run(["pair", "--config", str(cfgfile)], tmp_path)
    assert code == 0
    rows = _csv_rows(out / "pair.csv")
    assert len(rows) == 2  # header + the single test named in the file
    assert rows[1][0] == "gauss"
    assert abs(float(rows[1][1]) - 1.0) < 1e-10
    # explicit flag wins over the file value
    code2, out2 = run(["pair", "--config", str(cfgfile), "--test",
                       "affine_gauss"], tmp_path)
    assert code2 == 0
    rows2 = _csv_rows(out2 / "pair.csv")
    assert rows2[1][0] == "affine_gauss"


def test_config_validation_messages():
    with pytest.raises(cli.UsageError) as exc:
        cli.JobConfig(command="pair", eta=-1.0, abs_tol=0.0).validate()
    msg = str(exc.value)
    assert "contour.eta" in msg and "contour.abs_tol" in msg


def test_parse_operator():
    L = cli.parse_operator("t^2*D-1")
    assert set(L.terms) == {(2, 1, 1), (0, 0, -1)}
    L2 = cli.parse_operator("t*D^2 + 3*t")
    assert set(L2.terms) == {(1, 2, 1), (1, 0, 3)}
    with pytest.raises(cli.UsageError):
        cli.parse_operator("t^^2")


def test_gevrey_subcommand(tmp_path):
    code, out = run(["gevrey", "--label", "point_a", "--omega", "0.6,0.8",
                     "--tau-imag", "2.0"], tmp_path)
    assert code == 0
    rec = json.loads((out / "gevrey.json").read_text())
    assert rec["envelope_ok"] is True
