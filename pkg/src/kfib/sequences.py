"""Exact k-generalized Fibonacci numbers.

The order-k sequence starts with k-1 zeros and a one, and every later term is
the sum of the k preceding terms.  After the first k+2 terms the stream uses
the telescoped identity F(n) = 2*F(n-1) - F(n-k-1), which costs O(1) big-int
operations per term instead of O(k).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterator


@dataclass(frozen=True)
class KIndex:
    """Index pair (k, n): order of the recurrence and position of the term."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"recurrence order must be >= 2, got k={self.k}")
        if self.n < 2 - self.k:
            raise ValueError(f"index n={self.n} below first defined term {2 - self.k} for k={self.k}")


@dataclass(frozen=True)
class SequenceTerm:
    index: KIndex
    value: int


def kfib_values(k: int, n_max: int) -> Iterator[int]:
    """Yield F(1), ..., F(n_max) for order k as plain integers."""
    if k < 2:
        raise ValueError(f"recurrence order must be >= 2, got k={k}")
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    yield 1
    if n_max == 1:
        return
    yield 1
    # window holds F(n-k-1), ..., F(n-1) just before producing F(n); for n=3
    # that is F(2-k), ..., F(2) = 0, ..., 0, 1, 1.
    window = deque([0] * (k - 1) + [1, 1])
    for _ in range(3, n_max + 1):
        value = 2 * window[-1] - window[0]
        yield value
        window.append(value)
        window.popleft()


def kfib_value(k: int, n: int) -> int:
    """F(n) for order k; zero for every n <= 0 down to the first defined index."""
    KIndex(k, n)
    if n <= 0:
        return 0
    value = 0
    for value in kfib_values(k, n):
        pass
    return value


def kfib(idx: KIndex) -> SequenceTerm:
    """Exact term at the given index."""
    return SequenceTerm(idx, kfib_value(idx.k, idx.n))


def kfib_stream(k: int, n_max: int) -> Iterator[SequenceTerm]:
    """Terms F(1), ..., F(n_max) in order."""
    for n, value in enumerate(kfib_values(k, n_max), start=1):
        yield SequenceTerm(KIndex(k, n), value)
