"""Text-only agent that follows a Thought / Action / Observation loop."""
from __future__ import annotations

import json
import re
from typing import Any, Callable, Sequence

from .protocol import (
    AdapterError,
    AgentAdapter,
    FinalAnswer,
    Halt,
    MalformedToolCall,
    Observation,
    PublicTool,
    Step,
    Thought,
    ToolCall,
    Turn,
)

DEFAULT_TEMPLATE = """You are an assistant that completes tasks by calling tools.

Available tools:
{tools}

Work in steps. In each step write one line "Thought: ..." and then either
  Action: tool_name[arguments]
or, once everything is done,
  Final Answer: short summary
Arguments are a JSON object or key=value pairs, for example start_time=9; leave the brackets empty when a tool takes none.
If the requirements can no longer be met, write "HALT: reason" instead.

Example:
Thought: The report has to be filed before the meeting.
Action: file_report[]
Observation: Done: file report has been completed successfully.
Thought: Now the meeting.
Action: hold_meeting[]
Observation: Done: hold meeting has been completed successfully.
Final Answer: Filed the report, then held the meeting.

Request:
{query}

{scratchpad}"""

_ACTION = re.compile(r"^\s*Action\s*:\s*([^\[\s]+)\s*(?:\[(.*)\])?\s*$", re.MULTILINE)
_FINAL = re.compile(r"^\s*Final Answer\s*:\s*(.*)", re.MULTILINE | re.DOTALL)
_HALT = re.compile(r"^\s*HALT\s*:\s*(.*)", re.MULTILINE | re.DOTALL | re.IGNORECASE)
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def parse_args(raw: str | None) -> dict[str, Any]:
    raw = (raw or "").strip()
    if not raw:
        return {}
    if raw.startswith("{"):
        value = json.loads(raw)
        if not isinstance(value, dict):
            raise ValueError("arguments must be an object")
        return value
    out: dict[str, Any] = {}
    for part in raw.split(","):
        key, sep, value = part.partition("=")
        if not sep or not key.strip():
            raise ValueError(f"cannot read argument {part.strip()!r}")
        value = value.strip().strip("\"'")
        out[key.strip()] = int(value) if value.lstrip("-").isdigit() else value
    return out


def parse_completion(text: str, call_id: str) -> Step:
    halt = _HALT.search(text)
    action = _ACTION.search(text)
    final = _FINAL.search(text)
    first = min((m for m in (halt, action, final) if m is not None), key=lambda m: m.start(), default=None)
    if first is None:
        if re.search(r"^\s*Action\s*:", text, re.MULTILINE):
            raise MalformedToolCall("unreadable Action line", None, call_id)
        return Thought(text.strip())
    if first is halt:
        return Halt(halt.group(1).strip())
    if first is final:
        return FinalAnswer(final.group(1).strip())
    name = action.group(1)
    if not _NAME.match(name):
        raise MalformedToolCall(f"bad tool name {name!r}", None, call_id)
    try:
        args = parse_args(action.group(2))
    except (ValueError, json.JSONDecodeError) as exc:
        raise MalformedToolCall(f"bad arguments: {exc}", name, call_id) from None
    return ToolCall(name, args, call_id)


class ReactAgent(AgentAdapter):
    def __init__(self, complete: Callable[[str], str], template: str = DEFAULT_TEMPLATE):
        self.complete = complete
        self.template = template
        self.steps = 0

    def render(self, query: str, tools: Sequence[PublicTool], transcript: Sequence[Turn]) -> str:
        listing = []
        for t in tools:
            params = ", ".join(t.parameters.get("properties", {})) or "none"
            listing.append(f"- {t.name}: {t.description} Arguments: {params}.")
        pad = []
        for turn in transcript:
            if isinstance(turn, Thought):
                pad.append(f"Thought: {turn.text}")
            elif isinstance(turn, ToolCall):
                args = ", ".join(f"{k}={v}" for k, v in turn.args.items())
                pad.append(f"Action: {turn.name}[{args}]")
            elif isinstance(turn, Observation):
                pad.append(f"Observation: {turn.content}")
        return self.template.format(tools="\n".join(listing), query=query, scratchpad="\n".join(pad))

    def next_step(self, query: str, tools: Sequence[PublicTool], transcript: Sequence[Turn]) -> Step:
        prompt = self.render(query, tools, transcript)
        try:
            text = self.complete(prompt)
        except Exception as exc:  # any completion failure is a transport problem
            raise AdapterError(f"completion failed: {exc}") from exc
        self.steps += 1
        return parse_completion(text, f"react_{self.steps}")
