"""Orchestration of the smooth-term search: reduce bounds, stream, factor.

The per-k work units are independent, so the sweep optionally fans out to a
process pool; results are merged and sorted, making the output identical for
any worker count.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import lemma3_n_bound
from .factorization import factor_smooth, is_probable_prime
from .lattice import (
    BoundState,
    DEFAULT_DELTA,
    ReductionRound,
    reduce_large_k_trajectory,
    reduce_small_k,
)
from .sequences import kfib_values

log = logging.getLogger("kfib.pipeline")

FULL_PRIME_BASE = (2, 3, 5, 7)


@dataclass(frozen=True)
class SolutionRecord:
    """A term F(n) of order k equal to 2^a 3^b 5^c 7^d, with its exponents."""

    k: int
    n: int
    exponents: tuple[int, int, int, int]
    value: int

    @property
    def a(self) -> int:
        return self.exponents[0]

    @property
    def b(self) -> int:
        return self.exponents[1]

    @property
    def c(self) -> int:
        return self.exponents[2]

    @property
    def d(self) -> int:
        return self.exponents[3]

    def to_json(self) -> str:
        return json.dumps(
            {
                "k": self.k,
                "n": self.n,
                "a": self.a,
                "b": self.b,
                "c": self.c,
                "d": self.d,
                "value": str(self.value),
            }
        )

    def to_tsv(self) -> str:
        return f"{self.k}\t{self.n}\t{self.a}\t{self.b}\t{self.c}\t{self.d}\t{self.value}"


TSV_HEADER = "k\tn\ta\tb\tc\td\tvalue"


def _record(k: int, n: int, a: int = 0, b: int = 0, c: int = 0, d: int = 0) -> SolutionRecord:
    return SolutionRecord(k, n, (a, b, c, d), 2**a * 3**b * 5**c * 7**d)


# The complete solution table for the prime base {2,3,5,7}, k in [2, 900].
THEOREM2_TABLE: tuple[SolutionRecord, ...] = (
    _record(2, 4, b=1),
    _record(2, 5, c=1),
    _record(2, 6, a=3),
    _record(2, 8, b=1, d=1),
    _record(2, 12, a=4, b=2),
    _record(3, 5, d=1),
    _record(3, 7, a=3, b=1),
    _record(3, 9, b=4),
    _record(3, 12, a=3, b=2, d=1),
    _record(3, 15, a=6, d=2),
    _record(4, 6, b=1, c=1),
    _record(4, 8, a=3, d=1),
    _record(4, 9, a=2, b=3),
    _record(5, 9, a=3, b=1, c=1),
    _record(6, 8, b=2, d=1),
    _record(6, 9, c=3),
    _record(6, 14, a=8, b=1, c=1),
    _record(7, 11, a=3, b=2, d=1),
    _record(7, 13, a=4, c=3),
    _record(8, 16, a=8, b=2, d=1),
)


@dataclass(frozen=True)
class RunConfig:
    """Configuration of a search run; defaults reproduce the full table."""

    k_min: int = 2
    k_max: int = 900
    prime_base: tuple[int, ...] = FULL_PRIME_BASE
    precision_bits: int = 128
    lll_delta: Fraction = DEFAULT_DELTA
    round_cap: int = 8
    output_format: str = "jsonl"
    workers: int = 1
    hard_cap: int = 5000
    include_trivial: bool = False

    def __post_init__(self):
        if not 2 <= self.k_min <= self.k_max:
            raise ValueError("need 2 <= k_min <= k_max")
        if not self.prime_base:
            raise ValueError("prime base must be nonempty")
        if any(p not in FULL_PRIME_BASE for p in self.prime_base):
            raise ValueError("prime base must be a subset of {2, 3, 5, 7}")
        if list(self.prime_base) != sorted(set(self.prime_base)):
            raise ValueError("prime base must be strictly increasing")
        if not all(is_probable_prime(p) for p in self.prime_base):
            raise ValueError("prime base must consist of primes")
        if self.output_format not in ("jsonl", "tsv"):
            raise ValueError("output format must be jsonl or tsv")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.round_cap < 1 or self.hard_cap < 1:
            raise ValueError("round_cap and hard_cap must be >= 1")


@dataclass
class SolveReport:
    records: list[SolutionRecord]
    bounds: dict[int, int] = field(default_factory=dict)
    capped: list[int] = field(default_factory=list)


def _pad_exponents(base: tuple[int, ...], exps: tuple[int, ...]) -> tuple[int, int, int, int]:
    padded = [0, 0, 0, 0]
    for p, e in zip(base, exps):
        padded[FULL_PRIME_BASE.index(p)] = e
    return tuple(padded)  # type: ignore[return-value]


def _reduced_bound(k: int, delta: Fraction, round_cap: int, override: int | None) -> int:
    if override is not None:
        return override
    bound = math.ceil(lemma3_n_bound(k) * (1.0 + 1e-12)) + 1
    bound = reduce_small_k(k, bound, delta)
    for _ in range(round_cap - 1):
        if bound <= k + 2:
            break
        tighter = reduce_small_k(k, bound, delta)
        if tighter >= bound:
            break
        bound = tighter
    return bound


def _solve_one_k(args) -> tuple[int, int, bool, list[tuple]]:
    """Worker: reduce the bound for one k and scan for smooth terms."""
    k, base, delta, round_cap, hard_cap, include_trivial, override = args
    bound = _reduced_bound(k, delta, round_cap, override)
    capped = bound > hard_cap
    search_to = min(bound, hard_cap)
    rows: list[tuple] = []
    start = 1 if include_trivial else k + 2
    if search_to > start:
        values = kfib_values(k, search_to - 1)
        for n in range(1, search_to):
            value = next(values)
            if n < start:
                continue
            fac = factor_smooth(value, base)
            if fac is not None:
                rows.append((k, n, _pad_exponents(base, fac.exponents), value))
    return k, bound, capped, rows


def solve_smooth_detailed(cfg: RunConfig, _bound_override: dict[int, int] | None = None) -> SolveReport:
    """Search every k in range exhaustively below its certified reduced bound.

    ``_bound_override`` is a test hook that forcibly truncates the bound for
    selected k (fault injection for the verifier); it must never be used for
    real runs.
    """
    override = _bound_override or {}
    tasks = [
        (
            k,
            tuple(cfg.prime_base),
            cfg.lll_delta,
            cfg.round_cap,
            cfg.hard_cap,
            cfg.include_trivial,
            override.get(k),
        )
        for k in range(cfg.k_min, cfg.k_max + 1)
    ]
    report = SolveReport(records=[])
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_solve_one_k, tasks, chunksize=8))
    else:
        results = [_solve_one_k(t) for t in tasks]
    for k, bound, capped, rows in results:
        report.bounds[k] = bound
        if capped:
            log.warning("certified bound %d for k=%d exceeds hard cap; search truncated", bound, k)
            report.capped.append(k)
        for row in rows:
            report.records.append(SolutionRecord(row[0], row[1], row[2], row[3]))
    report.records.sort(key=lambda r: (r.k, r.n))
    return report


def solve_smooth(cfg: RunConfig) -> list[SolutionRecord]:
    """All terms F(n), n >= k+2, smooth over the base, sorted by (k, n)."""
    return solve_smooth_detailed(cfg).records


@dataclass
class Theorem2Verdict:
    passed: bool
    matched: int
    missing: tuple[SolutionRecord, ...]
    extra: tuple[SolutionRecord, ...]
    degenerate: bool
    capped: tuple[int, ...] = ()


def verify_theorem2(cfg: RunConfig, _bound_override: dict[int, int] | None = None) -> Theorem2Verdict:
    """Compare a solve run against the embedded solution table."""
    report = solve_smooth_detailed(cfg, _bound_override)
    expected = {r for r in THEOREM2_TABLE if cfg.k_min <= r.k <= cfg.k_max}
    got = {r for r in report.records if not cfg.include_trivial or r.n >= r.k + 2}
    missing = tuple(sorted(expected - got, key=lambda r: (r.k, r.n)))
    extra = tuple(sorted(got - expected, key=lambda r: (r.k, r.n)))
    return Theorem2Verdict(
        passed=not missing and not extra and not report.capped,
        matched=len(expected & got),
        missing=missing,
        extra=extra,
        degenerate=not expected,
        capped=tuple(report.capped),
    )


@dataclass
class ReductionReport:
    rounds: list[ReductionRound]
    final: BoundState

    @property
    def converged(self) -> bool:
        return self.final.k_max <= 900


def run_reduction_report(
    delta: Fraction = DEFAULT_DELTA, round_cap: int = 8, initial: BoundState | None = None
) -> ReductionReport:
    """Execute the large-k reduction from the absolute bounds and report rounds."""
    state, rounds = reduce_large_k_trajectory(initial, delta, round_cap)
    return ReductionReport(rounds=rounds, final=state)


def serialize_records(records: list[SolutionRecord], fmt: str) -> str:
    if fmt == "jsonl":
        return "\n".join(r.to_json() for r in records)
    if fmt == "tsv":
        return "\n".join([TSV_HEADER] + [r.to_tsv() for r in records])
    raise ValueError(f"unknown output format {fmt!r}")
