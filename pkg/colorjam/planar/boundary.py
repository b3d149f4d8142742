from __future__ import annotations

from collections.abc import Iterable

from pydantic import BaseModel, ConfigDict, field_validator


class CyclicBoundary(BaseModel):
    """Distinct vertex ids read cyclically around the outer face."""

    order: tuple[str, ...] = ()

    model_config = ConfigDict(frozen=True)

    @field_validator('order', mode='after')
    @classmethod
    def check_distinct(cls, order: tuple[str, ...]) -> tuple[str, ...]:
        if len(set(order)) != len(order):
            raise ValueError('boundary ids must be distinct')
        return order

    def __len__(self) -> int:
        return len(self.order)

    def rotated(self, steps: int) -> CyclicBoundary:
        if not self.order:
            return self
        steps %= len(self.order)
        return CyclicBoundary(order=self.order[steps:] + self.order[:steps])

    def reflected(self) -> CyclicBoundary:
        return CyclicBoundary(order=tuple(reversed(self.order)))

    def cycle_edges(self) -> list[tuple[str, str]]:
        """Consecutive pairs, closing the cycle when there are three or more ids."""
        n = len(self.order)
        if n < 2:
            return []
        pairs = [(self.order[i], self.order[i + 1]) for i in range(n - 1)]
        if n > 2:
            pairs.append((self.order[-1], self.order[0]))
        return pairs


def boundary(ids: Iterable[str]) -> CyclicBoundary:
    return CyclicBoundary(order=tuple(ids))
