"""Agent-facing protocol: steps an adapter may emit and what it gets back."""
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence, Union


@dataclass(frozen=True)
class PublicTool:
    """The only view of a mock tool an agent ever sees."""

    name: str
    description: str
    parameters: Mapping[str, Any]

    def to_openai(self) -> dict[str, Any]:
        return {"type": "function",
                "function": {"name": self.name, "description": self.description,
                             "parameters": dict(self.parameters)}}


@dataclass(frozen=True)
class ToolCall:
    name: str
    args: Mapping[str, Any] = field(default_factory=dict)
    call_id: str | None = None


@dataclass(frozen=True)
class FinalAnswer:
    text: str = ""


@dataclass(frozen=True)
class Halt:
    reason: str = ""


@dataclass(frozen=True)
class Thought:
    """An iteration that neither calls a tool nor ends the run."""

    text: str = ""


Step = Union[ToolCall, FinalAnswer, Halt, Thought]


@dataclass(frozen=True)
class Observation:
    call_id: str | None
    name: str
    content: str
    error: bool = False


Turn = Union[ToolCall, FinalAnswer, Halt, Thought, Observation]


class MalformedToolCall(Exception):
    """The agent tried to call a tool but the call could not be decoded."""

    def __init__(self, detail: str, name: str | None = None, call_id: str | None = None):
        super().__init__(detail)
        self.detail = detail
        self.name = name
        self.call_id = call_id


class AdapterError(Exception):
    """Transport, authentication or protocol failure on the agent side."""


class AgentAdapter(ABC):
    @abstractmethod
    def next_step(self, query: str, tools: Sequence[PublicTool], transcript: Sequence[Turn]) -> Step:
        """Produce the next step given the query, tool views and everything so far."""


AgentFactory = Callable[[Any], AgentAdapter]
