from __future__ import annotations

from enum import Enum


class Mode(str, Enum):
    BASIC = "basic"
    EXTENDED = "extended"


class GenerationError(RuntimeError):
    """Synthesis could not produce a case within its retry budget."""


def clock_label(hour: int) -> str:
    return f"{hour:02d}:00"
