"""Mock tools, agent adapters, execution logs and verdicts."""
from __future__ import annotations

from typing import Callable

from .http_chat import ChatAgent, ChatConfig, RateLimiter, text_completion
from .protocol import (
    AdapterError,
    AgentAdapter,
    AgentFactory,
    FinalAnswer,
    Halt,
    MalformedToolCall,
    Observation,
    PublicTool,
    Step,
    Thought,
    ToolCall,
)
from .react import ReactAgent
from .runner import (
    ErrorType,
    ExecutionLog,
    Limits,
    LogRecord,
    Outcome,
    Status,
    Verdict,
    extract_assignment,
    judge,
    run_case,
)
from .simulated import simulated_factory
from .tools import ToolManifest, build_tools

__all__ = [
    "AdapterError", "AgentAdapter", "AgentFactory", "ChatAgent", "ChatConfig", "ErrorType",
    "ExecutionLog", "FinalAnswer", "Halt", "Limits", "LogRecord", "MalformedToolCall", "Observation",
    "Outcome", "PublicTool", "RateLimiter", "ReactAgent", "Status", "Step", "Thought", "ToolCall",
    "ToolManifest", "Verdict", "build_tools", "extract_assignment", "judge", "make_factory",
    "run_case", "simulated_factory",
]


def make_factory(spec: str, seed: int | str = 0, limiter: RateLimiter | None = None,
                 base_url: str | None = None) -> Callable:
    """Agent factory from ``http:<model>``, ``react:<model>`` or ``sim:<profile>``."""
    kind, _, rest = spec.partition(":")
    if kind == "sim":
        return simulated_factory(rest or "perfect", seed)
    if kind in ("http", "react"):
        if not rest:
            raise ValueError(f"{kind} agents need a model name, e.g. {kind}:gpt-4o-mini")
        extra = {"base_url": base_url} if base_url else {}
        config = ChatConfig.from_env(rest, **extra)
        if kind == "http":
            return lambda case: ChatAgent(config, limiter=limiter)
        return lambda case: ReactAgent(text_completion(config, limiter=limiter))
    raise ValueError(f"unknown agent kind {kind!r}; use http:, react: or sim:")
