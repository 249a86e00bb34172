"""Drive an agent against mock tools, record the log, and judge the plan."""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Iterable, Mapping

from ..common import Mode
from ..solver import (
    Constraint,
    HorizonBound,
    MonotoneSequence,
    OrderBefore,
    PlanAssignment,
    StartBound,
    completion_feasible,
    constraint_from_dict,
    constraint_to_dict,
    evaluate,
)
from ..synthesis import QueryCase
from .protocol import (
    AdapterError,
    AgentAdapter,
    FinalAnswer,
    Halt,
    MalformedToolCall,
    Observation,
    Thought,
    ToolCall,
    Turn,
)
from .tools import BadArguments, ToolManifest, build_tools, invoke


class Outcome(str, Enum):
    FINISHED = "Finished"
    HALTED = "Halted"
    TIMED_OUT = "TimedOut"
    ITERATION_CAP = "IterationCapHit"
    PROTOCOL_ERROR = "ProtocolError"


class Status(str, Enum):
    CORRECT = "Correct"
    ERRONEOUS = "Erroneous"


class ErrorType(str, Enum):
    TIMEOUT = "Timeout"
    ACT_ERROR = "ActError"
    ACTION_LOST = "ActionLost"
    PARAMETER_ERROR = "ParameterError"
    ORDER_ERROR = "OrderError"


# severity order used when several error types apply
PRECEDENCE = (ErrorType.TIMEOUT, ErrorType.ACT_ERROR, ErrorType.ACTION_LOST,
              ErrorType.PARAMETER_ERROR, ErrorType.ORDER_ERROR)


@dataclass(frozen=True)
class Limits:
    timeout_seconds: float = 180.0
    max_iterations: int = 50

    def __post_init__(self) -> None:
        if self.timeout_seconds <= 0 or self.max_iterations <= 0:
            raise ValueError("limits must be positive")


@dataclass
class LogRecord:
    seq: int
    tool: str
    args: Mapping[str, Any]
    message: str
    elapsed: float
    action: str | None = None
    call_id: str | None = None
    start: int | None = None
    end: int | None = None
    error: str | None = None  # "unknown_tool" | "malformed"
    duplicate: bool = False

    def to_dict(self) -> dict[str, Any]:
        return {"seq": self.seq, "call_id": self.call_id, "tool": self.tool, "action": self.action,
                "args": dict(self.args), "message": self.message, "start": self.start, "end": self.end,
                "error": self.error, "duplicate": self.duplicate, "elapsed": round(self.elapsed, 6)}


@dataclass
class ExecutionLog:
    case_id: str
    records: list[LogRecord] = field(default_factory=list)
    outcome: Outcome | None = None
    detail: str = ""
    iterations: int = 0
    elapsed: float = 0.0

    def append(self, record: LogRecord) -> None:
        if self.outcome is not None:
            raise RuntimeError("log is closed")
        if self.records and record.seq <= self.records[-1].seq:
            raise ValueError("sequence numbers must increase")
        self.records.append(record)

    def close(self, outcome: Outcome, detail: str = "") -> None:
        self.outcome = outcome
        self.detail = detail

    def invocations(self) -> list[LogRecord]:
        return [r for r in self.records if r.action is not None and r.error is None]

    def first_invocations(self) -> list[LogRecord]:
        return [r for r in self.invocations() if not r.duplicate]

    def to_jsonl(self) -> str:
        lines = [json.dumps(r.to_dict(), ensure_ascii=False) for r in self.records]
        lines.append(json.dumps({"case_id": self.case_id,
                                 "outcome": self.outcome.value if self.outcome else None,
                                 "detail": self.detail, "iterations": self.iterations,
                                 "elapsed": round(self.elapsed, 6)}, ensure_ascii=False))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Verdict:
    status: Status
    error_type: ErrorType | None
    violated: tuple[Constraint, ...]
    assignment: PlanAssignment | None
    outcome: Outcome
    detail: str = ""

    def __post_init__(self) -> None:
        if (self.status is Status.ERRONEOUS) != (self.error_type is not None):
            raise ValueError("error type is present exactly when the verdict is erroneous")
        needs = self.error_type in (ErrorType.ORDER_ERROR, ErrorType.PARAMETER_ERROR)
        if needs != bool(self.violated):
            raise ValueError("violations are listed exactly for order and parameter errors")

    @property
    def correct(self) -> bool:
        return self.status is Status.CORRECT

    def to_dict(self) -> dict[str, Any]:
        return {"status": self.status.value,
                "error_type": self.error_type.value if self.error_type else None,
                "violated": [constraint_to_dict(c) for c in self.violated],
                "assignment": self.assignment.to_dict() if self.assignment else None,
                "outcome": self.outcome.value, "detail": self.detail}

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> Verdict:
        return cls(Status(d["status"]), ErrorType(d["error_type"]) if d["error_type"] else None,
                   tuple(constraint_from_dict(c) for c in d["violated"]),
                   PlanAssignment.from_dict(d["assignment"]) if d["assignment"] else None,
                   Outcome(d["outcome"]), d.get("detail", ""))


def _erroneous(kind: ErrorType, outcome: Outcome, detail: str = "",
               violated: Iterable[Constraint] = (), assignment: PlanAssignment | None = None) -> Verdict:
    return Verdict(Status.ERRONEOUS, kind, tuple(violated), assignment, outcome, detail)


def _is_parameter(c: Constraint) -> bool:
    return isinstance(c, (MonotoneSequence, HorizonBound))


def extract_assignment(case: QueryCase, log: ExecutionLog, *, partial: bool = False) -> PlanAssignment:
    firsts = log.first_invocations()
    if not partial:
        missing = set(case.action_ids) - {r.action for r in firsts}
        if missing:
            raise ValueError(f"actions never invoked: {sorted(missing)}")
    seq = [r.action for r in firsts]
    times = None
    if case.mode is Mode.EXTENDED:
        times = {r.action: (r.start, r.end) for r in firsts}
    return PlanAssignment.from_sequence(seq, times)  # type: ignore[arg-type]


def _prefix_violations(case: QueryCase, plan: PlanAssignment) -> list[Constraint]:
    """Violations already decided by the executed prefix of a halted run."""
    done = set(plan.order)
    times = plan.times or {}
    out: list[Constraint] = []
    for c in case.constraints:
        if isinstance(c, OrderBefore):
            if c.after in done and (c.before not in done or plan.order[c.before] > plan.order[c.after]):
                out.append(c)
        elif isinstance(c, StartBound) and c.action in done:
            start = times[c.action][0]
            if not (start < c.hour if c.relation == "<" else start > c.hour):
                out.append(c)
        elif isinstance(c, HorizonBound):
            if any(not (c.start <= s and e <= c.end) for s, e in times.values()):
                out.append(c)
        elif isinstance(c, MonotoneSequence):
            seq = plan.sequence
            if any(times[b][0] < times[a][1] for a, b in zip(seq, seq[1:])):
                out.append(c)
    return out


def judge(case: QueryCase, log: ExecutionLog) -> Verdict:
    """Classify a closed log. Pure: depends only on the case and the log."""
    outcome = log.outcome
    if outcome is None:
        raise ValueError("log is still open")
    if outcome in (Outcome.TIMED_OUT, Outcome.ITERATION_CAP):
        return _erroneous(ErrorType.TIMEOUT, outcome, log.detail)
    if outcome is Outcome.PROTOCOL_ERROR:
        return _erroneous(ErrorType.ACT_ERROR, outcome, log.detail)
    bad_calls = [r for r in log.records if r.error is not None]
    if bad_calls:
        return _erroneous(ErrorType.ACT_ERROR, outcome, f"{bad_calls[0].error}: {bad_calls[0].tool}")

    complete = set(case.action_ids) <= {r.action for r in log.first_invocations()}
    if outcome is Outcome.HALTED and not complete:
        plan = extract_assignment(case, log, partial=True)
        violated = _prefix_violations(case, plan)
        params = [c for c in violated if _is_parameter(c)]
        if params:
            return _erroneous(ErrorType.PARAMETER_ERROR, outcome, "halted", violated, plan)
        if violated:
            return _erroneous(ErrorType.ORDER_ERROR, outcome, "halted", violated, plan)
        if completion_feasible(case.constraints, plan.sequence, plan.times):
            done = set(plan.order)
            pending = tuple(c for c in case.constraints
                            if isinstance(c, (OrderBefore, StartBound))
                            and not ({getattr(c, "action", None), getattr(c, "after", None)} & done))
            pending = pending or tuple(c for c in case.constraints if isinstance(c, MonotoneSequence))
            return _erroneous(ErrorType.ORDER_ERROR, outcome, "halt while completion was still feasible",
                              pending, plan)
        return Verdict(Status.CORRECT, None, (), plan, outcome, "justified halt")

    invoked = {r.action for r in log.first_invocations()}
    missing = sorted(set(case.action_ids) - invoked)
    if missing:
        return _erroneous(ErrorType.ACTION_LOST, outcome, f"never invoked: {', '.join(missing)}",
                          assignment=extract_assignment(case, log, partial=True))
    plan = extract_assignment(case, log)
    violated = evaluate(case.constraints, plan)
    if not violated:
        return Verdict(Status.CORRECT, None, (), plan, outcome)
    kind = ErrorType.PARAMETER_ERROR if any(_is_parameter(c) for c in violated) else ErrorType.ORDER_ERROR
    return _erroneous(kind, outcome, "", violated, plan)


def run_case(agent: AgentAdapter, case: QueryCase, limits: Limits = Limits(),
             clock: Callable[[], float] = time.monotonic) -> tuple[ExecutionLog, Verdict]:
    """Run ``agent`` on ``case`` until it finishes, halts, errs or exhausts its limits."""
    tools = build_tools(case)
    by_name: dict[str, ToolManifest] = {t.tool_name: t for t in tools}
    views = [t.public() for t in tools]
    log = ExecutionLog(case.id)
    transcript: list[Turn] = []
    seen: set[str] = set()
    t0 = clock()
    seq = 0

    def over() -> bool:
        return clock() - t0 > limits.timeout_seconds

    for iteration in range(1, limits.max_iterations + 1):
        if over():
            log.close(Outcome.TIMED_OUT, f"wall clock above {limits.timeout_seconds:g}s")
            break
        log.iterations = iteration
        before = clock()
        try:
            step = agent.next_step(case.text, views, list(transcript))
        except MalformedToolCall as exc:
            seq += 1
            message = f"Error: could not read the tool call ({exc.detail})."
            log.append(LogRecord(seq, exc.name or "", {}, message, clock() - before,
                                 call_id=exc.call_id, error="malformed"))
            transcript.append(Observation(exc.call_id, exc.name or "", message, error=True))
            continue
        except AdapterError as exc:
            log.close(Outcome.PROTOCOL_ERROR, str(exc))
            break
        if over():
            log.close(Outcome.TIMED_OUT, f"wall clock above {limits.timeout_seconds:g}s")
            break
        transcript.append(step)
        if isinstance(step, FinalAnswer):
            log.close(Outcome.FINISHED, step.text)
            break
        if isinstance(step, Halt):
            log.close(Outcome.HALTED, step.reason)
            break
        if isinstance(step, Thought):
            continue
        assert isinstance(step, ToolCall)
        seq += 1
        tool = by_name.get(step.name)
        if tool is None:
            message = f"Error: there is no tool called {step.name!r}."
            log.append(LogRecord(seq, step.name, step.args, message, clock() - before,
                                 call_id=step.call_id, error="unknown_tool"))
            transcript.append(Observation(step.call_id, step.name, message, error=True))
            continue
        try:
            message, start = invoke(tool, step.args)
        except BadArguments as exc:
            message = f"Error: {exc}."
            log.append(LogRecord(seq, step.name, step.args, message, clock() - before,
                                 call_id=step.call_id, error="malformed"))
            transcript.append(Observation(step.call_id, step.name, message, error=True))
            continue
        end = start + tool.duration if start is not None and tool.duration is not None else None
        log.append(LogRecord(seq, step.name, step.args, message, clock() - before, action=tool.action_id,
                             call_id=step.call_id, start=start, end=end, duplicate=tool.action_id in seen))
        seen.add(tool.action_id)
        transcript.append(Observation(step.call_id, step.name, message))
    else:
        log.close(Outcome.ITERATION_CAP, f"no final answer within {limits.max_iterations} iterations")
    log.elapsed = clock() - t0
    return log, judge(case, log)
