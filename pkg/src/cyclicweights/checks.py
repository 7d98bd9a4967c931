from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Check:
    """One exact identity: ``ok`` is ``lhs == rhs``."""

    name: str
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": str(self.lhs), "rhs": str(self.rhs), "ok": self.ok}
