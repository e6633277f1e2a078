"""Streaming enumeration of weak integer compositions with multinomial weights."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Tuple

from ..errors import ValidationError


@dataclass(frozen=True)
class Composition:
    """One way of writing ``total`` as an ordered sum of nonnegative parts."""

    parts: Tuple[int, ...]
    total: int
    multinomial: int  # exact total!/(k_1! ... k_n!)

    def __post_init__(self):
        if sum(self.parts) != self.total:
            raise ValidationError("parts must sum to total")


def multinomial(parts) -> int:
    """Exact multinomial coefficient (sum parts)!/(prod parts!)."""
    out, rem = 1, sum(parts)
    for k in parts:
        out *= math.comb(rem, k)
        rem -= k
    return out


def composition_count(total: int, parts: int) -> int:
    """Number of weak compositions: C(total + parts - 1, parts - 1)."""
    return math.comb(total + parts - 1, parts - 1)


def compositions(total: int, parts: int) -> Iterator[Composition]:
    """Yield every composition of ``total`` into ``parts`` nonnegative parts,
    first part descending, with its exact multinomial coefficient.

    Lazy: memory stays O(parts) however large the count gets.
    """
    if total < 0 or parts < 1:
        raise ValidationError("need total >= 0 and parts >= 1")

    def rec(remaining: int, slots: int):
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining, -1, -1):
            for rest in rec(remaining - first, slots - 1):
                yield (first,) + rest

    for tup in rec(total, parts):
        yield Composition(tup, total, multinomial(tup))
