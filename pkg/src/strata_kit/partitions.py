"""Integer partitions: conjugation, dominance order, addition, Whittaker support sets.

A partition is a weakly decreasing tuple of positive integers; the empty
partition is allowed.  All values are immutable and all operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import BudgetExceededError, ShapeError, WeightMismatchError

DEFAULT_ENUMERATION_BOUND = 40


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of positive integers."""

    parts: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ShapeError(f"partition parts must be positive, got {p}")
            if i > 0 and parts[i - 1] < p:
                raise ShapeError(f"partition parts must be weakly decreasing: {parts}")

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @classmethod
    def from_counts(cls, counts: Iterable[int]) -> "Partition":
        """Build a partition from an unordered iterable of positive integers."""
        return cls(tuple(sorted(counts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """The i-th part (1-indexed), 0 beyond the length."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def to_json(self) -> list[int]:
        return list(self.parts)

    @classmethod
    def from_json(cls, data: list[int]) -> "Partition":
        return cls(tuple(data))


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram: column lengths become rows."""
    if not lam.parts:
        return Partition()
    cols = [0] * lam.parts[0]
    for p in lam.parts:
        for i in range(p):
            cols[i] += 1
    return Partition(tuple(cols))


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """Prefix-sum comparison: every partial sum of lam is <= that of mu.

    Only partitions of equal weight are comparable; anything else raises.
    """
    if lam.weight != mu.weight:
        raise WeightMismatchError("incomparable weights")
    acc_l = acc_m = 0
    for i in range(1, max(lam.length, mu.length) + 1):
        acc_l += lam.part(i)
        acc_m += mu.part(i)
        if acc_l > acc_m:
            return False
    return True


def add(lam: Partition, mu: Partition) -> Partition:
    """Componentwise sum after zero-padding the shorter partition."""
    n = max(lam.length, mu.length)
    return Partition(tuple(lam.part(i) + mu.part(i) for i in range(1, n + 1)))


def whittaker_support(lam: Partition) -> frozenset[int]:
    """Indices {1,...,n} minus the partial sums of the reversed parts.

    Of weight n = weight(lam); undefined for the empty partition.  The
    result has n - length(lam) elements and never contains n itself.
    """
    n = lam.weight
    if n == 0:
        raise ShapeError("undefined for weight 0")
    removed = set()
    acc = 0
    for p in reversed(lam.parts):
        acc += p
        removed.add(acc)
    return frozenset(range(1, n + 1)) - removed


def enumerate_partitions(n: int, bound: int = DEFAULT_ENUMERATION_BOUND) -> list[Partition]:
    """All partitions of n, in decreasing lexicographic order."""
    if n < 0:
        raise ShapeError("n must be nonnegative")
    if n > bound:
        raise BudgetExceededError(f"partition enumeration bound {bound} exceeded by n={n}")
    out: list[Partition] = []

    def rec(remaining: int, cap: int, prefix: list[int]) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for p in range(min(cap, remaining), 0, -1):
            prefix.append(p)
            rec(remaining - p, p, prefix)
            prefix.pop()

    rec(n, n, [])
    return out
