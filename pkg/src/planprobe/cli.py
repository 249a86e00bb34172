"""Command-line entry point."""
from __future__ import annotations

import json
import random
import sys
from pathlib import Path
from typing import Any

import click

from .campaign import CampaignConfig, run_budgeted, run_capability_sweep
from .common import Mode
from .dissect import DissectionAborted, dissect
from .grammar import enumerate_expansion_options
from .harness import Limits, make_factory, run_case
from .report import emit_report, report_from_dict
from .synthesis import QueryCase, extend_with_time, generate_case

MODE = click.Choice([m.value for m in Mode])


def campaign_options(fn):
    opts = [
        click.option("--mode", type=MODE, default="basic", show_default=True),
        click.option("--actions-min", type=int, default=3, show_default=True),
        click.option("--actions-max", type=int, default=5, show_default=True),
        click.option("--budget-secs", type=float, default=3600.0, show_default=True),
        click.option("--timeout-secs", type=float, default=180.0, show_default=True),
        click.option("--max-iters", type=int, default=50, show_default=True),
        click.option("--k", "k", type=int, default=20, show_default=True),
        click.option("--cap", type=int, default=300, show_default=True),
        click.option("--threshold", type=float, default=0.2, show_default=True),
        click.option("--x", "x", type=int, default=2, show_default=True, help="Exponent in k*C(n, x)."),
        click.option("--n-max", type=int, default=9, show_default=True),
        click.option("--agent", default="sim:perfect", show_default=True,
                     help="http:<model>, react:<model> or sim:<profile>."),
        click.option("--seed", default="0", show_default=True),
        click.option("--parallelism", type=int, default=1, show_default=True),
        click.option("--max-cases", type=int, default=None),
        click.option("--dissect/--no-dissect", "dissect_errors", default=False),
        click.option("--out-dir", type=click.Path(file_okay=False), default="out", show_default=True),
        click.option("--config", "config_file", type=click.Path(exists=True, dir_okay=False),
                     help="JSON file whose keys override the flags."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def build_config(params: dict[str, Any]) -> tuple[CampaignConfig, Path]:
    params = dict(params)
    out_dir = Path(params.pop("out_dir"))
    config_file = params.pop("config_file", None)
    params["dissect"] = params.pop("dissect_errors")
    if config_file:
        overrides = json.loads(Path(config_file).read_text())
        out_dir = Path(overrides.pop("out_dir", out_dir))
        params.update(overrides)
    return CampaignConfig.from_dict(params), out_dir


@click.group()
def main() -> None:
    """Synthesize planning queries, run agents on them and judge the plans."""


@main.command()
@click.option("--mode", type=MODE, default="basic", show_default=True)
@click.option("--actions-min", type=int, default=3, show_default=True)
@click.option("--actions-max", type=int, default=5, show_default=True)
@click.option("--count", type=int, default=1, show_default=True)
@click.option("--seed", default="0", show_default=True)
@click.option("--topic", default=None)
@click.option("--extend", is_flag=True, help="Generate a basic case, then add time requirements.")
@click.option("--out-dir", type=click.Path(file_okay=False), default=None)
def gen(mode: str, actions_min: int, actions_max: int, count: int, seed: str, topic: str | None,
        extend: bool, out_dir: str | None) -> None:
    """Generate query cases (printed, or saved as JSON under --out-dir)."""
    for i in range(count):
        case_seed = f"{seed}-{i}"
        rng = random.Random(case_seed)
        n = rng.randint(actions_min, actions_max)
        if extend:
            case = extend_with_time(generate_case(n, Mode.BASIC, rng, topic=topic, seed=case_seed), rng)
        else:
            case = generate_case(n, Mode(mode), rng, topic=topic, seed=case_seed)
        if out_dir:
            Path(out_dir).mkdir(parents=True, exist_ok=True)
            case.save(Path(out_dir) / f"{case.id}.json")
            click.echo(str(Path(out_dir) / f"{case.id}.json"))
        else:
            click.echo(f"== {case.id} ({case.topic})\n{case.text}\n")


@main.command()
@campaign_options
def run(**params: Any) -> None:
    """Budgeted random testing."""
    config, out_dir = build_config(params)
    report = run_budgeted(config)
    for fmt, path in emit_report(report, out_dir).items():
        click.echo(f"{fmt}: {path}")
    s = report.summary()
    click.echo(f"generated {s['generated']}, erroneous {s['erroneous']} ({s['error_rate']:.1%})")


@main.command()
@campaign_options
def sweep(**params: Any) -> None:
    """Capability-limit sweep over increasing action counts."""
    config, out_dir = build_config(params)
    report = run_capability_sweep(config)
    for fmt, path in emit_report(report, out_dir, stem="sweep").items():
        click.echo(f"{fmt}: {path}")
    for lv in report.levels:
        click.echo(f"n={lv.n}: {lv.correct}/{lv.samples} correct ({lv.success_rate:.1%})")
    click.echo(f"capability limit: {report.capability_limit if report.capability_limit else 'none'}")


@main.command("dissect")
@click.argument("case_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--agent", default="sim:perfect", show_default=True)
@click.option("--k", "k", type=int, default=5, show_default=True)
@click.option("--timeout-secs", type=float, default=180.0, show_default=True)
@click.option("--max-iters", type=int, default=50, show_default=True)
@click.option("--seed", default="0", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None)
def dissect_cmd(case_file: str, agent: str, k: int, timeout_secs: float, max_iters: int, seed: str,
                out: str | None) -> None:
    """Find the root cause of an agent's failure on a saved case."""
    case = QueryCase.load(case_file)
    factory = make_factory(agent, seed)
    limits = Limits(timeout_secs, max_iters)
    _, verdict = run_case(factory(case), case, limits)
    if verdict.correct:
        click.echo("the agent handles this case correctly; nothing to dissect")
        return
    try:
        rep = dissect(case, factory, k, limits=limits, rng=random.Random(seed))
    except DissectionAborted as exc:
        click.echo(f"aborted: {exc}", err=True)
        sys.exit(2)
    text = rep.to_json()
    if out:
        Path(out).write_text(text + "\n")
    click.echo(text)


@main.command()
@click.argument("report_json", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
@click.option("--format", "formats", type=click.Choice(["json", "csv", "markdown"]), multiple=True)
def report(report_json: str, out_dir: str, formats: tuple[str, ...]) -> None:
    """Re-emit a saved JSON report in other formats."""
    rep = report_from_dict(json.loads(Path(report_json).read_text()))
    stem = Path(report_json).stem
    for fmt, path in emit_report(rep, out_dir, formats or ("json", "csv", "markdown"), stem=stem).items():
        click.echo(f"{fmt}: {path}")


@main.command()
@click.option("--mode", type=MODE, default="basic", show_default=True)
@click.option("--json", "as_json", is_flag=True)
def census(mode: str, as_json: bool) -> None:
    """Count the grammar's expansion options."""
    c = enumerate_expansion_options(Mode(mode))
    if as_json:
        click.echo(json.dumps({"mode": mode, "total": c.total, "breakdown": c.breakdown,
                               "sentence_level": c.sentence_level}, indent=1))
        return
    click.echo(f"{mode}: {c.total} sub-sentence derivations")
    for row in c.breakdown:
        click.echo(f"  {row['production']}: {row['derivations']} over {row['alternatives']} alternatives")


if __name__ == "__main__":
    main()
