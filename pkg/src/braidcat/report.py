"""Machine-readable verification reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from . import __version__

PASS = "pass"
FAIL = "fail"


@dataclass
class VerificationReport:
    command: str
    instance: dict[str, Any]
    verdict: str
    witnesses: Any = None
    bounds: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    elapsed_ms: int = 0
    tool_version: str = __version__

    def __post_init__(self) -> None:
        if self.verdict not in (PASS, FAIL):
            raise ValueError(f"verdict must be {PASS!r} or {FAIL!r}, got {self.verdict!r}")
        if self.verdict == FAIL and not self.witnesses:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> VerificationReport:
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> VerificationReport:
        return cls.from_dict(json.loads(text))


def verdict(ok: bool) -> str:
    return PASS if ok else FAIL
