"""Result containers shared by the verification suites and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one named suite run.

    failures holds one human-readable line per failing case, sorted, so two
    runs of the same seed produce identical reports. passes + len(failures)
    must equal cases; the constructor refuses inconsistent counts rather
    than letting a bad tally masquerade as a clean run.
    """

    suite: str
    cases: int
    passes: int
    failures: tuple
    wall_time: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.passes + len(self.failures) != self.cases:
            raise ValueError(
                f"inconsistent tally: {self.passes} passes + "
                f"{len(self.failures)} failures != {self.cases} cases"
            )
        object.__setattr__(self, "failures", tuple(sorted(self.failures)))

    @property
    def ok(self) -> bool:
        return not self.failures
