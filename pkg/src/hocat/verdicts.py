"""Three-valued outcomes shared by the equivalence and completeness checks."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class Verdict(str, Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "Unknown"


class Completeness(str, Enum):
    COMPLETE = "Complete"
    INCOMPLETE = "Incomplete"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Unknown:
    """A bounded search that did not settle; ``reason`` names the cap."""
    reason: str

    def __bool__(self):
        return False


class ResourceLimit(RuntimeError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, message: str, cap: str = ""):
        self.cap = cap
        super().__init__(message)
