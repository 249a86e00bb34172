"""Mock tools: one per action, logging the invocation instead of doing anything."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping

from ..common import Mode, clock_label
from ..synthesis import QueryCase
from .protocol import PublicTool

START_TIME_SCHEMA = {
    "type": "object",
    "properties": {"start_time": {"type": "integer",
                                  "description": "Hour of the day (24-hour clock) at which the task starts."}},
    "required": ["start_time"],
}
EMPTY_SCHEMA: Mapping[str, Any] = {"type": "object", "properties": {}}


@dataclass(frozen=True)
class ToolManifest:
    tool_name: str
    description: str
    parameters: Mapping[str, Any]
    action_id: str  # hidden
    phrase: str
    duration: int | None = None  # hidden, extended only

    def public(self) -> PublicTool:
        return PublicTool(self.tool_name, self.description, self.parameters)


class BadArguments(ValueError):
    pass


def build_tools(case: QueryCase) -> list[ToolManifest]:
    extended = case.mode is Mode.EXTENDED
    return [
        ToolManifest(a.tool_name, a.description, START_TIME_SCHEMA if extended else EMPTY_SCHEMA,
                     a.id, a.phrase, case.hidden_durations[a.id] if extended else None)
        for a in case.actions
    ]


def parse_start(args: Mapping[str, Any]) -> int:
    """Whole-hour start time from tool arguments; accepts 10, "10" and "10:00"."""
    if "start_time" not in args:
        raise BadArguments("missing start_time")
    raw = args["start_time"]
    if isinstance(raw, bool):
        raise BadArguments("start_time must be an hour")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, float) and raw.is_integer():
        return int(raw)
    if isinstance(raw, str):
        text = raw.strip()
        if text.endswith(":00"):
            text = text[:-3]
        if text.isdigit():
            return int(text)
    raise BadArguments(f"start_time {raw!r} is not a whole hour")


def invoke(tool: ToolManifest, args: Mapping[str, Any]) -> tuple[str, int | None]:
    """Return (message, start hour) for one invocation; raises BadArguments."""
    if tool.duration is None:
        return f"Done: {tool.phrase} has been completed successfully.", None
    start = parse_start(args)
    end = start + tool.duration
    unit = "hour" if tool.duration == 1 else "hours"
    return (f"Done: {tool.phrase} started at {clock_label(start)}, took {tool.duration} {unit} "
            f"and finished at {clock_label(end)}."), start
