import json
import random

import pytest

from planprobe.campaign import CampaignConfig, CaseResult, LevelResult, run_budgeted, run_capability_sweep, run_one
from planprobe.common import Mode
from planprobe.harness import run_case
from planprobe.harness.simulated import perfect, swap_adjacent
from planprobe.report import (
    cases_from_csv,
    cases_to_csv,
    csv_summary,
    emit_report,
    report_from_dict,
    report_to_dict,
    report_to_markdown,
)
from planprobe.synthesis import generate_case


def small(**kw) -> CampaignConfig:
    kw.setdefault("max_cases", 40)
    return CampaignConfig(**kw)


def test_perfect_agent_has_no_errors():
    for mode in Mode:
        s = run_budgeted(small(mode=mode, max_cases=60)).summary()
        assert s["generated"] == 60 and s["erroneous"] == 0 and s["error_rate"] == 0.0


def test_swap_error_rate_matches_offline_judgement():
    config = small(agent="sim:swap", seed=7, max_cases=80)
    report = run_budgeted(config)
    expected = 0
    for c in report.cases:
        rng = random.Random(c.seed)
        case = generate_case(rng.randint(config.actions_min, config.actions_max), config.mode, rng, seed=c.seed)
        _, verdict = run_case(swap_adjacent(case), case)
        expected += not verdict.correct
        assert case.id == c.case_id
    assert report.summary()["erroneous"] == expected > 0


def test_sample_size():
    cfg = CampaignConfig()
    assert [cfg.sample_size(n) for n in range(2, 10)] == [20, 60, 120, 200, 300, 300, 300, 300]
    assert CampaignConfig(k=1, cap=5).sample_size(9) == 5


def test_perfect_sweep_reaches_no_limit():
    report = run_capability_sweep(CampaignConfig())
    assert report.capability_limit is None and not report.truncated
    assert [lv.n for lv in report.levels] == list(range(2, 10))
    assert all(lv.success_rate == 1.0 for lv in report.levels)
    assert len(report.cases) == 1600


def test_coin_limit_found_at_first_level():
    cfg = CampaignConfig(agent="sim:coin:0.9", seed=1, n_start=3, n_max=6, k=100)
    report = run_capability_sweep(cfg)
    assert report.capability_limit == 3
    (level,) = report.levels
    assert level.samples == 300
    assert abs(level.success_rate - 0.1) <= 0.05


def test_sweep_stops_on_budget():
    report = run_capability_sweep(CampaignConfig(budget_secs=1e-9))
    assert report.truncated and report.capability_limit is None


def test_budgeted_run_stops_on_budget():
    report = run_budgeted(CampaignConfig(budget_secs=0.2))
    assert report.truncated and len(report.cases) >= 1


def test_reproducible_with_max_cases():
    a = run_budgeted(small(agent="sim:coin:0.5", seed="r", parallelism=4))
    b = run_budgeted(small(agent="sim:coin:0.5", seed="r", parallelism=1))
    key = lambda r: [(c.case_id, c.status, c.error_type) for c in r.cases]
    assert key(a) == key(b)
    assert [c.index for c in a.cases] == list(range(40))


def test_accounting_adds_up():
    s = run_budgeted(small(agent="sim:coin:0.5")).summary()
    assert s["generated"] == s["correct"] + s["erroneous"]
    assert s["cases"] == s["generated"] + s["generation_failures"]
    assert sum(s["error_types"].values()) == s["erroneous"]


def test_generation_failure_recorded(monkeypatch):
    from planprobe import campaign
    from planprobe.synthesis import GenerationError

    def fail(*a, **kw):
        raise GenerationError("no luck")
    monkeypatch.setattr(campaign, "generate_case", fail)
    result = run_one(CampaignConfig(), 0, perfect)
    assert not result.generated and result.generation_error == "no luck"
    assert result.status is None and not result.erroneous


def test_dissection_in_campaign():
    s = run_budgeted(small(agent="sim:coin:0.5", dissect=True, max_cases=20)).summary()
    assert sum(s["root_causes"].values()) == s["erroneous"]


def test_solver_metering_recorded():
    s = run_budgeted(small(max_cases=10)).summary()
    assert s["solver_calls"] >= 10 and 0 < s["solver_time"] <= s["synthesis_time"]


@pytest.mark.parametrize("bad", [
    {"threshold": 0}, {"threshold": 1.0}, {"budget_secs": 0}, {"actions_min": 1},
    {"actions_min": 5, "actions_max": 4}, {"parallelism": 0}, {"n_start": 5, "n_max": 4},
])
def test_config_validation(bad):
    with pytest.raises(ValueError):
        CampaignConfig(**bad)


def test_config_round_trip():
    cfg = CampaignConfig(mode=Mode.EXTENDED, seed="s", max_cases=3)
    assert CampaignConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
    with pytest.raises(ValueError, match="unknown config keys"):
        CampaignConfig.from_dict({"bogus": 1})


def test_level_success_rate():
    assert LevelResult(3, 10, 4, 6, 0).success_rate == 0.4
    assert LevelResult(3, 0, 0, 0, 0).success_rate == 0.0


# -- reports --------------------------------------------------------------

def test_empty_report(tmp_path):
    report = run_budgeted(small(max_cases=0))
    paths = emit_report(report, tmp_path)
    assert set(paths) == {"json", "csv", "markdown"}
    assert paths["csv"].read_text().count("\n") == 1
    assert "No erroneous cases." in paths["markdown"].read_text()
    assert json.loads(paths["json"].read_text())["summary"]["error_rate"] == 0.0


def test_report_formats_agree(tmp_path):
    report = run_budgeted(small(agent="sim:coin:0.5", max_cases=10))
    paths = emit_report(report, tmp_path)
    assert len(paths["csv"].read_text().splitlines()) == 11
    data = json.loads(paths["json"].read_text())
    from_csv = csv_summary(paths["csv"], report.config.top_topics)
    for key in ("generated", "correct", "erroneous", "error_types", "top_topics", "solver_calls"):
        assert from_csv[key] == data["summary"][key]
    md = paths["markdown"].read_text()
    assert f"| {data['summary']['generated']} | {data['summary']['erroneous']} |" in md


def test_report_round_trips():
    report = run_capability_sweep(CampaignConfig(n_max=3, k=2, agent="sim:swap"))
    again = report_from_dict(json.loads(json.dumps(report_to_dict(report))))
    assert again.cases == report.cases and again.levels == report.levels
    assert again.capability_limit == report.capability_limit
    assert cases_from_csv(cases_to_csv(report.cases)) == report.cases


def test_markdown_sections():
    report = run_capability_sweep(CampaignConfig(n_max=4, k=2, agent="sim:coin:0.5", dissect=True))
    md = report_to_markdown(report)
    for heading in ("## Overview", "## Error types", "## Success rate per action count", "## Root causes"):
        assert heading in md
    assert "OrderError" in md


def test_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        emit_report(run_budgeted(small(max_cases=1)), tmp_path, formats=("xml",))


def test_case_result_flags():
    assert not CaseResult(0, 3, "s", generation_error="boom").generated
    assert CaseResult(0, 3, "s", case_id="c", status="Erroneous").erroneous
    assert not CaseResult(0, 3, "s", case_id="c", status="Correct").erroneous
