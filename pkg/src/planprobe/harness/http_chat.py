"""OpenAI-compatible chat-completions agent with function calling."""
from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from typing import Any, Sequence

import httpx

from .protocol import (
    AdapterError,
    AgentAdapter,
    FinalAnswer,
    Halt,
    MalformedToolCall,
    Observation,
    PublicTool,
    Step,
    ToolCall,
    Turn,
)

DEFAULT_BASE_URL = "https://api.openai.com/v1"
API_KEY_ENV = "PLANPROBE_API_KEY"
BASE_URL_ENV = "PLANPROBE_BASE_URL"
HALT_PREFIX = "HALT:"


class RateLimiter:
    """Minimum spacing between requests, shared by every adapter holding it."""

    def __init__(self, per_second: float):
        if per_second <= 0:
            raise ValueError("rate must be positive")
        self.interval = 1.0 / per_second
        self._next = 0.0
        self._lock = threading.Lock()

    def acquire(self) -> None:
        with self._lock:
            now = time.monotonic()
            wait = self._next - now
            self._next = max(now, self._next) + self.interval
        if wait > 0:
            time.sleep(wait)


@dataclass(frozen=True)
class ChatConfig:
    model: str
    base_url: str = DEFAULT_BASE_URL
    temperature: float = 0.0
    api_key_env: str = API_KEY_ENV
    request_timeout: float = 60.0
    system_prompt: str | None = None

    @classmethod
    def from_env(cls, model: str, **overrides: Any) -> ChatConfig:
        base = os.environ.get(BASE_URL_ENV, DEFAULT_BASE_URL)
        return cls(model=model, base_url=overrides.pop("base_url", base), **overrides)

    def api_key(self) -> str | None:
        return os.environ.get(self.api_key_env)


def final_step(text: str) -> Step:
    stripped = text.strip()
    if stripped.upper().startswith(HALT_PREFIX):
        return Halt(stripped[len(HALT_PREFIX):].strip())
    return FinalAnswer(stripped)


class ChatAgent(AgentAdapter):
    """Keeps its own message history; tool results are taken from the transcript."""

    def __init__(self, config: ChatConfig, client: httpx.Client | None = None,
                 limiter: RateLimiter | None = None):
        self.config = config
        self.client = client or httpx.Client(timeout=config.request_timeout)
        self.limiter = limiter
        self.messages: list[dict[str, Any]] = []
        self.pending: list[dict[str, Any]] = []
        self.synced = 0

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        key = self.config.api_key()
        if key:
            headers["Authorization"] = f"Bearer {key}"
        return headers

    def _sync(self, transcript: Sequence[Turn]) -> None:
        for turn in transcript[self.synced:]:
            if isinstance(turn, Observation) and turn.call_id is not None:
                self.messages.append({"role": "tool", "tool_call_id": turn.call_id, "content": turn.content})
        self.synced = len(transcript)

    def _request(self, tools: Sequence[PublicTool]) -> dict[str, Any]:
        body: dict[str, Any] = {"model": self.config.model, "messages": self.messages,
                                "temperature": self.config.temperature}
        if tools:
            body["tools"] = [t.to_openai() for t in tools]
        if self.limiter is not None:
            self.limiter.acquire()
        url = self.config.base_url.rstrip("/") + "/chat/completions"
        try:
            resp = self.client.post(url, json=body, headers=self._headers())
        except httpx.HTTPError as exc:
            raise AdapterError(f"transport failure: {exc}") from exc
        if resp.status_code in (401, 403):
            raise AdapterError(f"authentication rejected ({resp.status_code})")
        if resp.status_code != 200:
            raise AdapterError(f"endpoint answered {resp.status_code}: {resp.text[:200]}")
        try:
            message = resp.json()["choices"][0]["message"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise AdapterError(f"unexpected response shape: {exc}") from exc
        return message

    def next_step(self, query: str, tools: Sequence[PublicTool], transcript: Sequence[Turn]) -> Step:
        if not self.messages:
            if self.config.system_prompt:
                self.messages.append({"role": "system", "content": self.config.system_prompt})
            self.messages.append({"role": "user", "content": query})
        self._sync(transcript)
        if not self.pending:
            message = self._request(tools)
            calls = message.get("tool_calls") or []
            kept = {"role": "assistant", "content": message.get("content")}
            if calls:
                kept["tool_calls"] = calls
            self.messages.append(kept)
            if not calls:
                return final_step(message.get("content") or "")
            self.pending = list(calls)
        call = self.pending.pop(0)
        fn = call.get("function") or {}
        name, call_id = fn.get("name"), call.get("id")
        if not name:
            raise MalformedToolCall("tool call without a function name", None, call_id)
        raw = fn.get("arguments") or "{}"
        try:
            args = json.loads(raw) if isinstance(raw, str) else raw
        except json.JSONDecodeError as exc:
            raise MalformedToolCall(f"arguments are not JSON: {exc.msg}", name, call_id) from None
        if not isinstance(args, dict):
            raise MalformedToolCall("arguments must be a JSON object", name, call_id)
        return ToolCall(name, args, call_id)


def text_completion(config: ChatConfig, client: httpx.Client | None = None,
                    limiter: RateLimiter | None = None):
    """A ``prompt -> text`` callable over the same chat endpoint (no tools)."""
    agent = ChatAgent(config, client, limiter)

    def complete(prompt: str) -> str:
        agent.messages = [{"role": "user", "content": prompt}]
        return agent._request(()).get("content") or ""

    return complete
