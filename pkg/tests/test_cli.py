"""End-to-end runs of the command line front end."""

import csv
import json

import pytest

from coflowsched import model
from coflowsched.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def gen_instance(tmp_path, capsys, *extra):
    out = tmp_path / "gen"
    code, _, err = run(
        capsys, "generate", "--coflows", "4", "--ports", "5", "--cores", "2",
        "--seed", "3", "--out", str(out), *extra,
    )
    assert code == 0 and err == ""
    return out / "instance.json"


def test_generate_writes_valid_instance(tmp_path, capsys):
    path = gen_instance(tmp_path, capsys)
    with open(path) as fp:
        inst = model.load_instance(fp)
    assert inst.n == 4 and inst.ports == 5 and inst.cores == 2


def test_generate_to_stdout(capsys):
    code, out, err = run(capsys, "generate", "--coflows", "2", "--ports", "4")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert len(doc["coflows"]) == 2


def test_generate_reruns_byte_identical(tmp_path, capsys):
    a = gen_instance(tmp_path / "a", capsys)
    b = gen_instance(tmp_path / "b", capsys)
    assert a.read_bytes() == b.read_bytes()


def test_generate_density_flag(tmp_path, capsys):
    path = gen_instance(tmp_path, capsys, "--density", "sparse")
    with open(path) as fp:
        inst = model.load_instance(fp)
    assert all(1 <= c.flow_count <= 5 for c in inst.coflows)


def test_order_stdout_and_trace(tmp_path, capsys):
    inst = gen_instance(tmp_path, capsys)
    code, out, err = run(capsys, "order", str(inst), "--granularity", "coflow")
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["granularity"] == "coflow"
    assert sorted(doc["order"]) == [1, 2, 3, 4]
    assert doc["dual_cost"] > 0

    outdir = tmp_path / "ord"
    code, _, err = run(
        capsys, "order", str(inst), "--emit-trace", "--out", str(outdir)
    )
    assert code == 0 and err == ""
    lines = (outdir / "dual_trace_flow.jsonl").read_text().splitlines()
    assert len(lines) == 4
    recs = [json.loads(line) for line in lines]
    assert [r["r"] for r in recs] == [4, 3, 2, 1]
    assert all(r["branch"] in ("alpha", "beta", "fallback") for r in recs)


def test_order_emit_trace_requires_out(tmp_path, capsys):
    inst = gen_instance(tmp_path, capsys)
    code, out, err = run(capsys, "order", str(inst), "--emit-trace")
    assert code == 1
    assert json.loads(err)["error"]


def test_schedule_document_and_timeline(tmp_path, capsys):
    inst = gen_instance(tmp_path, capsys)
    outdir = tmp_path / "sched"
    code, _, err = run(
        capsys, "schedule", str(inst), "--emit-timeline", "--out", str(outdir)
    )
    assert code == 0 and err == ""
    doc = json.loads((outdir / "schedule_flow.json").read_text())
    assert doc["ratio"] >= 1 - 1e-9
    assert doc["objective"] > 0
    assert set(doc["coflow_completion"]) == {"1", "2", "3", "4"}
    with open(outdir / "timeline_flow.csv", newline="") as fp:
        rows = list(csv.reader(fp))
    assert rows[0] == ["start", "end", "i", "j", "k", "core"]
    assert len(rows) > 1
    assert all(float(r[1]) > float(r[0]) for r in rows[1:])


def test_schedule_rerun_byte_identical(tmp_path, capsys):
    inst = gen_instance(tmp_path, capsys)
    outs = []
    for name in ("s1", "s2"):
        outdir = tmp_path / name
        code, _, _ = run(
            capsys, "schedule", str(inst), "--granularity", "coflow",
            "--out", str(outdir),
        )
        assert code == 0
        outs.append((outdir / "schedule_coflow.json").read_bytes())
    assert outs[0] == outs[1]


def test_trace_import_with_threshold(tmp_path, capsys):
    trace = tmp_path / "trace.txt"
    trace.write_text(
        "9 2\n1 0 1 1 1 2:4\n2 1000 2 1 2 2 1:6 3:6\n"
    )
    code, out, err = run(
        capsys, "trace-import", str(trace), "--ports", "3", "--cores", "2",
        "--threshold", "2",
    )
    assert code == 0 and err == ""
    inst = model.instance_from_dict(json.loads(out))
    assert inst.n == 1 and inst.cores == 2
    assert inst.coflows[0].flow_count == 4
    assert inst.coflows[0].release == 128


def test_experiment_writes_out_dir(tmp_path, capsys):
    outdir = tmp_path / "exp"
    code, out, err = run(
        capsys, "experiment", "ratio-vs-coflows", "--coflows", "3", "4",
        "--cores", "2", "--ports", "5", "--instances", "2", "--out", str(outdir),
    )
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert [p["point"] for p in doc["points"]] == [3, 4]
    assert (outdir / "ratio-vs-coflows_flow_rows.csv").exists()
    assert (outdir / "ratio-vs-coflows_flow_aggregates.json").exists()
    disk = json.loads((outdir / "ratio-vs-coflows_flow_aggregates.json").read_text())
    assert disk == doc


def test_oracle_check_ok(tmp_path, capsys):
    inst = model.Instance(
        cores=2,
        ports=2,
        coflows=(
            model.Coflow(id=1, release=0, weight=1, demands={(1, 1): 2}),
            model.Coflow(id=2, release=1, weight=3, demands={(1, 2): 1, (2, 2): 4}),
        ),
    )
    path = tmp_path / "tiny.json"
    path.write_text(model.dumps_instance(inst))
    code, out, err = run(capsys, "oracle-check", str(path))
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert doc["ok"] is True
    assert all(doc["checks"].values())
    assert doc["dual_cost_flow"] <= doc["best_cost_flow"] + 1e-9
    assert doc["dual_cost_coflow"] <= doc["best_cost_coflow"] + 1e-9
    assert doc["trivial_lower_bound"] <= doc["best_cost_flow"] + 1e-9
    assert doc["schedules_examined"] > 0


def test_oracle_check_refuses_large_instance(tmp_path, capsys):
    big = model.Instance(
        cores=1,
        ports=4,
        coflows=(model.Coflow(id=1, release=0, weight=1, demands={(1, 4): 1}),),
    )
    path = tmp_path / "big.json"
    path.write_text(model.dumps_instance(big))
    code, out, err = run(capsys, "oracle-check", str(path))
    assert code == 1
    assert "caps" in json.loads(err)["error"]


def test_missing_file_error_is_json(capsys):
    code, out, err = run(capsys, "order", "/nonexistent/instance.json")
    assert code == 1
    assert out == ""
    assert "error" in json.loads(err)


def test_corrupt_instance_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{\"cores\": 1}")
    code, _, err = run(capsys, "schedule", str(bad))
    assert code == 1
    assert "missing field" in json.loads(err)["error"]
