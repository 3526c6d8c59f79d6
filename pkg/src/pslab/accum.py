"""Compensated accumulation.

One-shot sums use math.fsum (exact, order-independent). The streaming scan
needs something checkpointable, so we carry a Neumaier accumulator: a running
total plus a compensation term. Folding partial sums into it in a fixed order
is the documented merge rule that makes the scan's result independent of how
the partials were produced.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass
class Neumaier:
    """Neumaier (improved Kahan) compensated sum.

    total + comp is the best available estimate; both parts are persisted by
    the scan checkpoint so a resumed run continues bit-identically.
    """

    total: float = 0.0
    comp: float = 0.0

    def add(self, x: float) -> None:
        t = self.total + x
        if abs(self.total) >= abs(x):
            self.comp += (self.total - t) + x
        else:
            self.comp += (x - t) + self.total
        self.total = t

    @property
    def value(self) -> float:
        return self.total + self.comp

    def copy(self) -> "Neumaier":
        return Neumaier(self.total, self.comp)
