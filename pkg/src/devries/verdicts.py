"""Small verdict containers shared by the verification operations."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class Report:
    checks: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "pass" if c.ok else "fail"
            line = f"{c.name}: {status}"
            if c.detail:
                line += f" ({c.detail})"
            out.append(line)
        return out


def merge(*reports: Report) -> Report:
    checks: list[Check] = []
    for r in reports:
        checks.extend(r.checks)
    return Report(tuple(checks))
