"""Named residual checks with tolerances and pass/fail bookkeeping."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerifyEntry:
    """One named check: passes iff residual <= tolerance."""

    name: str
    residual: float
    tolerance: float
    passed: bool
    context: tuple = ()

    @classmethod
    def make(cls, name: str, residual: float, tolerance: float, **context) -> "VerifyEntry":
        residual = float(residual)
        ctx = tuple(sorted((k, str(v)) for k, v in context.items()))
        return cls(name, residual, float(tolerance), residual <= tolerance, ctx)

    def format_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        ctx = " ".join(f"{k}={v}" for k, v in self.context)
        line = f"{status}  {self.name}: residual={self.residual:.3e} tol={self.tolerance:.1e}"
        return f"{line}  [{ctx}]" if ctx else line


@dataclass
class VerifyReport:
    """Ordered collection of checks; passes iff every entry does."""

    entries: list = field(default_factory=list)

    def add(self, entry: VerifyEntry) -> VerifyEntry:
        self.entries.append(entry)
        return entry

    def check(self, name: str, residual: float, tolerance: float, **context) -> VerifyEntry:
        return self.add(VerifyEntry.make(name, residual, tolerance, **context))

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def format(self) -> str:
        lines = [e.format_line() for e in self.entries]
        n_fail = sum(not e.passed for e in self.entries)
        lines.append(
            f"{'PASS' if self.passed else 'FAIL'}  overall: "
            f"{len(self.entries) - n_fail}/{len(self.entries)} checks passed"
        )
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "entries": [
                {
                    "name": e.name,
                    "residual": e.residual,
                    "tolerance": e.tolerance,
                    "passed": e.passed,
                    "context": dict(e.context),
                }
                for e in self.entries
            ],
        }
