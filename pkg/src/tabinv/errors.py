from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Error:
    code: str
    message: str
    subject: str

    def line(self) -> str:
        return f"{self.code}:{self.subject}:{self.message}"
