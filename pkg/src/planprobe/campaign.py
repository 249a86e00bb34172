"""Testing campaigns: budgeted random testing and capability-limit sweeps."""
from __future__ import annotations

import dataclasses
import random
import time
from collections import Counter
from concurrent.futures import FIRST_COMPLETED, Future, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from math import comb
from typing import Any, Callable, Iterator, Mapping

from .common import GenerationError, Mode
from .dissect import DissectionAborted, dissect
from .harness import AgentAdapter, Limits, make_factory, run_case
from .lexicon import Lexicon, builtin_lexicon
from .solver import metered
from .synthesis import QueryCase, generate_case

AgentFactory = Callable[[QueryCase], AgentAdapter]


@dataclass(frozen=True)
class CampaignConfig:
    mode: Mode = Mode.BASIC
    actions_min: int = 3
    actions_max: int = 5
    budget_secs: float = 3600.0
    timeout_secs: float = 180.0
    max_iters: int = 50
    k: int = 20
    cap: int = 300
    threshold: float = 0.2
    x: int = 2
    n_start: int = 2
    n_max: int = 9
    top_topics: int = 5
    agent: str = "sim:perfect"
    seed: int | str = 0
    parallelism: int = 1
    max_cases: int | None = None
    dissect: bool = False
    dissect_k: int = 5

    def __post_init__(self) -> None:
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie strictly between 0 and 1")
        if self.budget_secs <= 0:
            raise ValueError("budget must be positive")
        if not 2 <= self.actions_min <= self.actions_max:
            raise ValueError("action range must satisfy 2 <= min <= max")
        if self.parallelism < 1 or self.k < 1 or self.cap < 1 or self.x < 1:
            raise ValueError("parallelism, k, cap and x must be positive")
        if not 2 <= self.n_start <= self.n_max:
            raise ValueError("sweep levels must satisfy 2 <= start <= max")

    @property
    def limits(self) -> Limits:
        return Limits(self.timeout_secs, self.max_iters)

    def sample_size(self, n: int) -> int:
        return min(self.cap, self.k * comb(n, self.x))

    def to_dict(self) -> dict[str, Any]:
        d = dataclasses.asdict(self)
        d["mode"] = self.mode.value
        return d

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> CampaignConfig:
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        values = dict(d)
        if "mode" in values:
            values["mode"] = Mode(values["mode"])
        return cls(**values)


@dataclass
class CaseResult:
    index: int
    n: int
    seed: str
    case_id: str | None = None
    topic: str | None = None
    mode: str = "basic"
    status: str | None = None  # Correct | Erroneous | None when generation failed
    error_type: str | None = None
    outcome: str | None = None
    violated: int = 0
    synthesis_time: float = 0.0
    solver_time: float = 0.0
    solver_calls: int = 0
    agent_time: float = 0.0
    generation_error: str | None = None
    root_cause: str | None = None

    @property
    def generated(self) -> bool:
        return self.generation_error is None

    @property
    def erroneous(self) -> bool:
        return self.status == "Erroneous"


@dataclass
class LevelResult:
    n: int
    samples: int
    correct: int
    erroneous: int
    failures: int

    @property
    def success_rate(self) -> float:
        judged = self.correct + self.erroneous
        return self.correct / judged if judged else 0.0


@dataclass
class CampaignReport:
    config: CampaignConfig
    kind: str = "budgeted"
    cases: list[CaseResult] = field(default_factory=list)
    levels: list[LevelResult] = field(default_factory=list)
    capability_limit: int | None = None
    truncated: bool = False
    wall_time: float = 0.0

    def summary(self) -> dict[str, Any]:
        return summarize(self.cases, self.config.top_topics, self.wall_time)


def summarize(cases: list[CaseResult], top: int = 5, wall_time: float | None = None) -> dict[str, Any]:
    """Aggregates shared by every report format."""
    made = [c for c in cases if c.generated]
    bad = [c for c in made if c.erroneous]
    synth = sum(c.synthesis_time for c in cases)
    solver = sum(c.solver_time for c in cases)
    topics = Counter(c.topic for c in bad)
    out = {
        "cases": len(cases),
        "generated": len(made),
        "correct": sum(1 for c in made if c.status == "Correct"),
        "erroneous": len(bad),
        "generation_failures": len(cases) - len(made),
        "error_rate": round(len(bad) / len(made), 6) if made else 0.0,
        "error_types": dict(sorted(Counter(c.error_type for c in bad).items())),
        "root_causes": dict(sorted(Counter(c.root_cause for c in bad if c.root_cause).items())),
        "top_topics": [[t, k] for t, k in sorted(topics.items(), key=lambda kv: (-kv[1], kv[0]))[:top]],
        "solver_calls": sum(c.solver_calls for c in cases),
        "solver_time": round(solver, 6),
        "synthesis_time": round(synth, 6),
        "agent_time": round(sum(c.agent_time for c in cases), 6),
        "mean_synthesis_ms": round(1000 * synth / len(cases), 6) if cases else 0.0,
        "solver_share": round(solver / synth, 6) if synth else 0.0,
    }
    if wall_time is not None:
        out["wall_time"] = round(wall_time, 6)
    return out


def run_one(config: CampaignConfig, index: int, factory: AgentFactory, *, n: int | None = None,
            lexicon: Lexicon | None = None, salt: str = "") -> CaseResult:
    """Generate, run and judge one case; everything random derives from (seed, salt, index)."""
    seed = f"{config.seed}-{salt}{index}"
    rng = random.Random(seed)
    n = n if n is not None else rng.randint(config.actions_min, config.actions_max)
    result = CaseResult(index, n, seed, mode=config.mode.value)
    with metered() as meter:
        t0 = time.perf_counter()
        try:
            case = generate_case(n, config.mode, rng, lexicon=lexicon, seed=seed)
        except GenerationError as exc:
            case = None
            result.generation_error = str(exc)
        result.synthesis_time = time.perf_counter() - t0
    result.solver_time, result.solver_calls = meter.seconds, meter.calls
    if case is None:
        return result
    result.case_id, result.topic = case.id, case.topic
    t0 = time.perf_counter()
    log, verdict = run_case(factory(case), case, config.limits)
    result.agent_time = time.perf_counter() - t0
    result.status = verdict.status.value
    result.error_type = verdict.error_type.value if verdict.error_type else None
    result.outcome = verdict.outcome.value
    result.violated = len(verdict.violated)
    if config.dissect and not verdict.correct:
        try:
            rep = dissect(case, factory, config.dissect_k, limits=config.limits,
                          rng=random.Random(f"{seed}-dissect"), lexicon=lexicon)
            result.root_cause = rep.label.value
        except DissectionAborted:
            result.root_cause = "Aborted"
    return result


def _pool_run(config: CampaignConfig, jobs: Iterator[Callable[[], CaseResult]],
              deadline: Callable[[], bool]) -> tuple[list[CaseResult], bool]:
    """Run jobs with bounded concurrency until exhausted or past the deadline."""
    results: list[CaseResult] = []
    truncated = False
    with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
        running: set[Future] = set()
        for job in jobs:
            if deadline():
                truncated = True
                break
            running.add(pool.submit(job))
            if len(running) >= config.parallelism:
                done, running = wait(running, return_when=FIRST_COMPLETED)
                results.extend(f.result() for f in done)
        done, _ = wait(running)
        results.extend(f.result() for f in done)
    results.sort(key=lambda r: r.index)
    return results, truncated


def run_budgeted(config: CampaignConfig, factory: AgentFactory | None = None,
                 lexicon: Lexicon | None = None) -> CampaignReport:
    """Random testing until the time budget (or ``max_cases``) is used up."""
    factory = factory or make_factory(config.agent, config.seed)
    lexicon = lexicon or builtin_lexicon()
    start = time.monotonic()

    def jobs() -> Iterator[Callable[[], CaseResult]]:
        index = 0
        while config.max_cases is None or index < config.max_cases:
            yield lambda i=index: run_one(config, i, factory, lexicon=lexicon)
            index += 1

    cases, truncated = _pool_run(config, jobs(), lambda: time.monotonic() - start >= config.budget_secs)
    return CampaignReport(config, "budgeted", cases, truncated=truncated,
                          wall_time=time.monotonic() - start)


def run_capability_sweep(config: CampaignConfig, factory: AgentFactory | None = None,
                         lexicon: Lexicon | None = None) -> CampaignReport:
    """Raise the action count until the success rate drops below the threshold."""
    factory = factory or make_factory(config.agent, config.seed)
    lexicon = lexicon or builtin_lexicon()
    start = time.monotonic()
    report = CampaignReport(config, "sweep")
    offset = 0
    for n in range(config.n_start, config.n_max + 1):
        size = config.sample_size(n)
        jobs = (lambda i=i: run_one(config, i, factory, n=n, lexicon=lexicon, salt=f"n{n}-")
                for i in range(offset, offset + size))
        cases, truncated = _pool_run(config, jobs, lambda: time.monotonic() - start >= config.budget_secs)
        offset += size
        report.cases.extend(cases)
        level = LevelResult(n, len(cases), sum(c.status == "Correct" for c in cases),
                            sum(c.erroneous for c in cases), sum(not c.generated for c in cases))
        report.levels.append(level)
        if truncated:
            report.truncated = True
            break
        if level.success_rate < config.threshold:
            report.capability_limit = n
            break
    report.wall_time = time.monotonic() - start
    return report
