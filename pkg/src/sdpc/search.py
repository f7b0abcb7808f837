"""Constellation search over a CRT progression.

Candidates are x = t + k*q for k = 0, 1, 2, ... A segmented sieve knocks
out candidates where some prime p <= sieve_limit divides x + d for an
offset d, except when |x + d| equals p itself: that value IS the prime p
and must not be discarded. Survivors then face real primality tests.
The scan is strictly ordered by k, so the witness returned is the
smallest member of the progression that works, independent of the
segment size and of how many worker threads sieve segments.
"""

from __future__ import annotations

from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .admissible import InadmissibleSystemError, TupleSystem, is_admissible
from .primes import CERTIFIED_LIMIT, is_prime_exact, is_probable_prime, primes_up_to


class PrimalityStatus(Enum):
    CERTIFIED = "certified-prime"
    PROBABLE = "probable-prime"
    COMPOSITE = "composite"
    UNIT_OR_SMALL = "unit-or-small"


@dataclass(frozen=True)
class PrimalityVerdict:
    value: int
    status: PrimalityStatus
    rounds: int | None = None

    @property
    def accepted(self) -> bool:
        return self.status in (PrimalityStatus.CERTIFIED, PrimalityStatus.PROBABLE)


def is_prime(n: int, rounds: int = 24) -> PrimalityVerdict:
    """Primality verdict for a signed integer; the sign is ignored.

    |n| below 2**64 gets a deterministic (certified) answer; above that
    the verdict is probable-prime with the given round count.
    """
    v = abs(n)
    if v <= 1:
        return PrimalityVerdict(n, PrimalityStatus.UNIT_OR_SMALL)
    if v < CERTIFIED_LIMIT:
        ok = is_prime_exact(v)
        return PrimalityVerdict(
            n, PrimalityStatus.CERTIFIED if ok else PrimalityStatus.COMPOSITE
        )
    if is_probable_prime(v, rounds):
        return PrimalityVerdict(n, PrimalityStatus.PROBABLE, rounds=rounds)
    return PrimalityVerdict(n, PrimalityStatus.COMPOSITE)


@dataclass(frozen=True)
class ConstellationTask:
    """What to search: the system, where to start, and the budgets."""

    system: TupleSystem
    start: int = 0
    budget: int = 10**8
    sieve_limit: int = 100_000
    exclusions: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.start < 0:
            raise ValueError("start must be nonnegative")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.sieve_limit < 2:
            raise ValueError("sieve_limit must be at least 2")
        object.__setattr__(self, "exclusions", frozenset(self.exclusions))


class SearchExhausted(RuntimeError):
    """The candidate budget ran out before a witness appeared.

    Says nothing about existence: a witness may lie beyond the budget.
    """

    def __init__(self, examined: int):
        super().__init__(f"search exhausted after examining {examined} candidates")
        self.examined = examined


def _sieve_entries(task: ConstellationTask) -> list[tuple[int, int, tuple[int, ...]]]:
    """Per (prime, offset): the hit class k0 mod p and any forgiven k values.

    k hits when t + k*q + d = 0 (mod p). Forgiven k are those where
    x + d = +-p exactly, precomputed here so segments only range-check.
    """
    q = task.system.crt.modulus
    t = task.system.crt.residue
    entries = []
    for p in primes_up_to(task.sieve_limit):
        if q % p == 0:
            continue
        q_inv = pow(q % p, -1, p)
        t_mod = t % p
        for d in task.system.offsets:
            k0 = (-(t_mod + d) % p) * q_inv % p
            forgiven = []
            for value in (p - d, -p - d):
                num = value - t
                if num % q == 0 and num // q >= 0:
                    forgiven.append(num // q)
            entries.append((p, k0, tuple(forgiven)))
    return entries


def _sieve_window(entries, q: int, t: int, lo: int, hi: int) -> list[int]:
    n = hi - lo
    if n <= 0:
        return []
    alive = np.ones(n, dtype=bool)
    for p, k0, forgiven in entries:
        first = (k0 - lo) % p
        if first >= n:
            continue
        saves = [(fk - lo, alive[fk - lo]) for fk in forgiven if lo <= fk < hi]
        alive[first::p] = False
        for j, val in saves:
            alive[j] = val
    return [t + (lo + int(k)) * q for k in np.flatnonzero(alive)]


def sieve_segment(task: ConstellationTask, lo: int, hi: int) -> list[int]:
    """Surviving x = t + k*q for k in [lo, hi), ascending.

    Sound: a candidate is only discarded when some sieving prime p
    properly divides one of its offset values (|x + d| != p), so every x
    whose offset values are all primes above 3 survives.
    """
    if lo < 0 or hi < lo:
        raise ValueError("bad segment bounds")
    q = task.system.crt.modulus
    t = task.system.crt.residue
    return _sieve_window(_sieve_entries(task), q, t, lo, hi)


def _witness_ok(task: ConstellationTask, x: int, rounds: int) -> bool:
    for d in task.system.offsets:
        value = x + d
        if abs(value) <= 3:
            return False
        if not is_prime(value, rounds).accepted:
            return False
    return True


def search_with_count(
    task: ConstellationTask,
    segment_size: int = 1 << 16,
    workers: int = 1,
    rounds: int = 24,
) -> tuple[int | None, int]:
    """Core scan. Returns (witness, candidates examined) or (None, budget).

    The candidate count is the number of progression members considered,
    counted before sieving, so exhaustion means exactly `budget` of them
    were covered. Workers only parallelize segment sieving; results are
    consumed strictly in segment order, keeping the answer bit-identical
    to a single-threaded scan.
    """
    if segment_size < 1:
        raise ValueError("segment_size must be positive")
    obstruction = is_admissible(task.system)
    if obstruction is not None:
        raise InadmissibleSystemError(obstruction)
    q = task.system.crt.modulus
    t = task.system.crt.residue
    k_start = max(0, -((t - task.start) // q))
    k_end = k_start + task.budget
    entries = _sieve_entries(task)

    def finish(survivors: list[int]) -> int | None:
        for x in survivors:
            if x in task.exclusions:
                continue
            if _witness_ok(task, x, rounds):
                return x
        return None

    def windows():
        lo = k_start
        while lo < k_end:
            hi = min(lo + segment_size, k_end)
            yield lo, hi
            lo = hi

    if workers <= 1:
        for lo, hi in windows():
            x = finish(_sieve_window(entries, q, t, lo, hi))
            if x is not None:
                return x, (x - t) // q - k_start + 1
        return None, task.budget

    with ThreadPoolExecutor(max_workers=workers) as pool:
        pending: deque = deque()
        gen = windows()
        exhausted_gen = False
        while True:
            while not exhausted_gen and len(pending) <= workers:
                try:
                    lo, hi = next(gen)
                except StopIteration:
                    exhausted_gen = True
                    break
                pending.append(pool.submit(_sieve_window, entries, q, t, lo, hi))
            if not pending:
                return None, task.budget
            x = finish(pending.popleft().result())
            if x is not None:
                return x, (x - t) // q - k_start + 1


def next_constellation(
    task: ConstellationTask,
    segment_size: int = 1 << 16,
    workers: int = 1,
    rounds: int = 24,
) -> int:
    """Smallest x >= start in the class with every |x + d| prime and > 3.

    Raises InadmissibleSystemError for a doomed system and SearchExhausted
    once `budget` candidates have been examined without a witness.
    """
    x, examined = search_with_count(task, segment_size, workers, rounds)
    if x is None:
        raise SearchExhausted(examined)
    return x
