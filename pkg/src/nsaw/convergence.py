"""Error tables for limit transitions and their empirical orders."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass
class LimitRow:
    step: int
    parameter: float
    error: float
    order: float | None = None


@dataclass
class LimitReport:
    name: str
    parameter_name: str
    rows: list[LimitRow] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def add(self, step: int, parameter, error) -> None:
        err = float(error)
        order = None
        if self.rows:
            prev = self.rows[-1]
            if prev.error > 0 and err > 0:
                ratio = abs(math.log(float(prev.parameter)) - math.log(float(parameter)))
                if ratio > 0:
                    order = math.log(prev.error / err) / ratio
        self.rows.append(LimitRow(step, float(parameter), err, order))

    @property
    def final_error(self) -> float:
        return self.rows[-1].error

    def monotone_tail(self, count: int) -> bool:
        """Errors strictly decrease over the last ``count`` rows (exact zeros count as decreasing)."""
        tail = [r.error for r in self.rows[-count:]]
        return all(b < a or b == 0 for a, b in zip(tail, tail[1:]))

    def empirical_order(self, count: int = 5) -> float | None:
        orders = [r.order for r in self.rows[-count:] if r.order is not None]
        return sum(orders) / len(orders) if orders else None

    def as_table(self) -> list[dict]:
        return [
            {
                "step": r.step,
                self.parameter_name: r.parameter,
                "error": r.error,
                "order": r.order,
            }
            for r in self.rows
        ]
