"""Uniform pass/fail report records for identity checks."""

from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one named identity check.

    A failing report always carries a witness describing the first
    counterexample found; a passing report never does.
    """

    name: str
    config: dict = field(default_factory=dict)
    status: str = "pass"  # "pass" or "fail"
    witness: Optional[str] = None

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"status must be 'pass' or 'fail', got {self.status!r}")
        if self.status == "fail" and not self.witness:
            raise ValueError("a failing report must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {"name": self.name, "config": dict(self.config), "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        return out
