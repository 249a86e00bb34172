import json

from click.testing import CliRunner

from planprobe.cli import main
from planprobe.synthesis import QueryCase


def invoke(*args):
    result = CliRunner().invoke(main, [str(a) for a in args], catch_exceptions=False)
    return result


def test_census_text_and_json():
    out = invoke("census")
    assert out.exit_code == 0 and "basic: 250 sub-sentence derivations" in out.output
    data = json.loads(invoke("census", "--mode", "extended", "--json").output)
    assert data["total"] == 864
    top = data["breakdown"][0]
    assert top["production"] == "sub_sentence" and top["derivations"] == 864
    assert sum(alt["derivations"] for alt in top["rhs"]) == 864


def test_gen_prints_and_saves(tmp_path):
    out = invoke("gen", "--count", 2, "--seed", "s")
    assert out.output.count("== ") == 2
    saved = invoke("gen", "--mode", "extended", "--count", 3, "--out-dir", tmp_path)
    files = saved.output.split()
    assert len(files) == 3
    case = QueryCase.load(files[0])
    assert case.mode.value == "extended" and case.hidden_durations


def test_gen_extend_and_topic(tmp_path):
    invoke("gen", "--extend", "--topic", "Waiter/Waitress", "--out-dir", tmp_path)
    (path,) = tmp_path.iterdir()
    case = QueryCase.load(path)
    assert case.topic == "Waiter/Waitress" and case.mode.value == "extended"


def test_run_writes_reports(tmp_path):
    out = invoke("run", "--agent", "sim:swap", "--max-cases", 15, "--out-dir", tmp_path)
    assert out.exit_code == 0
    assert {p.name for p in tmp_path.iterdir()} == {"report.json", "report.csv", "report.md"}
    data = json.loads((tmp_path / "report.json").read_text())
    assert data["summary"]["generated"] == 15
    assert f"generated 15, erroneous {data['summary']['erroneous']}" in out.output


def test_run_config_file_overrides(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"max_cases": 4, "mode": "extended", "out_dir": str(tmp_path / "o")}))
    invoke("run", "--config", cfg, "--max-cases", 99)
    data = json.loads((tmp_path / "o" / "report.json").read_text())
    assert data["summary"]["generated"] == 4 and data["config"]["mode"] == "extended"


def test_run_rejects_unknown_config_key(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    result = CliRunner().invoke(main, ["run", "--config", str(cfg)])
    assert result.exit_code != 0


def test_sweep(tmp_path):
    out = invoke("sweep", "--agent", "sim:coin:0.9", "--k", 5, "--n-max", 5, "--out-dir", tmp_path)
    assert "n=2:" in out.output and "capability limit:" in out.output
    assert (tmp_path / "sweep.json").exists()


def test_dissect_and_report(tmp_path):
    invoke("gen", "--seed", "d", "--out-dir", tmp_path / "cases")
    (case_file,) = (tmp_path / "cases").iterdir()
    ok = invoke("dissect", case_file)
    assert "nothing to dissect" in ok.output
    out = invoke("dissect", case_file, "--agent", "sim:drop", "--out", tmp_path / "d.json")
    assert json.loads(out.output)["label"] == "Constraint"
    assert json.loads((tmp_path / "d.json").read_text())["label"] == "Constraint"

    invoke("run", "--max-cases", 3, "--out-dir", tmp_path / "r")
    out = invoke("report", tmp_path / "r" / "report.json", "--out-dir", tmp_path / "again", "--format", "markdown")
    assert out.output.startswith("markdown:")
    assert "## Overview" in (tmp_path / "again" / "report.md").read_text()
