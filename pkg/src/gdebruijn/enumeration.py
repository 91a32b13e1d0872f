"""Exhaustive searches over necklaces: generalized de Bruijn counts and sc maxima.

Necklaces are produced by the Fredricksen-Kessler-Maiorana recursion, which
visits prenecklaces in lexicographic order, so each rotation class is met once
through its least rotation.
"""

from __future__ import annotations

import itertools
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator

from gdebruijn.automata import UniformLanguage, state_complexity
from gdebruijn.words import CircularWord, canonical_rotation, ilog, relabel

ENV_MAX_NODES = "GDB_MAX_NODES"
ENV_MAX_SECONDS = "GDB_MAX_SECONDS"

_CLOCK_STRIDE = 4096


@dataclass(frozen=True)
class Budget:
    """Search limits. ``None`` means unlimited."""

    max_nodes: int | None = None
    max_seconds: float | None = None

    @classmethod
    def from_env(cls) -> Budget:
        nodes = os.environ.get(ENV_MAX_NODES)
        seconds = os.environ.get(ENV_MAX_SECONDS)
        return cls(
            max_nodes=int(nodes) if nodes else None,
            max_seconds=float(seconds) if seconds else None,
        )


@dataclass(frozen=True)
class CountResult:
    N: int
    k: int
    count: int
    least: CircularWord | None
    elapsed: float
    nodes: int
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "count": self.count,
            "least": None if self.least is None else str(self.least),
            "elapsed": self.elapsed,
            "nodes": self.nodes,
            "complete": self.complete,
        }


@dataclass(frozen=True)
class MaxScResult:
    N: int
    k: int
    max_sc: int
    words: tuple[str, ...]
    elapsed: float
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "max_sc": self.max_sc,
            "words": list(self.words),
            "elapsed": self.elapsed,
            "complete": self.complete,
        }


class BudgetExceeded(RuntimeError):
    """Raised when a search runs out of budget; ``partial`` holds what was found."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class _Stop(Exception):
    pass


@dataclass
class _Meter:
    budget: Budget
    started: float = field(default_factory=time.monotonic)
    nodes: int = 0

    def tick(self) -> None:
        self.nodes += 1
        limit = self.budget.max_nodes
        if limit is not None and self.nodes > limit:
            raise BudgetExceeded(f"node budget of {limit} exhausted")
        if self.nodes % _CLOCK_STRIDE == 0 and self.budget.max_seconds is not None:
            if time.monotonic() - self.started > self.budget.max_seconds:
                raise BudgetExceeded(f"time budget of {self.budget.max_seconds}s exhausted")


def _check_args(N: int, k: int) -> None:
    if k < 2:
        raise ValueError(f"alphabet size must be >= 2, got {k}")
    if N < 1:
        raise ValueError(f"length must be >= 1, got {N}")


class _GdbSearch:
    """Necklace recursion with two prunes.

    A prefix is abandoned when a complete length-(r+1) window repeats, or when
    the distinct length-r windows seen so far plus the windows still to be
    completed cannot reach k^r.
    """

    def __init__(self, N: int, k: int, meter: _Meter, on_word: Callable[[tuple[int, ...]], None]):
        self.N, self.k = N, k
        self.r = ilog(N, k)
        self.width = self.r + 1
        self.mod = k**self.width
        self.target_r = k**self.r
        self.meter = meter
        self.on_word = on_word
        self.a = [0] * (N + 1)  # 1-based; a[0] is a sentinel
        self.code = [0] * (N + 1)
        self.seen = bytearray(self.mod) if self.mod <= 1 << 22 else None
        self.seen_set: set[int] = set()
        # multiplicities of linear length-r windows, for the coverage bound
        self.short_mod = k**self.r
        self.short_seen = [0] * self.short_mod
        self.short_distinct = 0

    def _is_seen(self, c: int) -> bool:
        return self.seen[c] if self.seen is not None else c in self.seen_set

    def _mark(self, c: int, on: bool) -> None:
        if self.seen is not None:
            self.seen[c] = on
        elif on:
            self.seen_set.add(c)
        else:
            self.seen_set.discard(c)

    def load_prefix(self, prefix: tuple[int, ...]) -> None:
        k, mod, width = self.k, self.mod, self.width
        for t, letter in enumerate(prefix, start=1):
            self.a[t] = letter
            c = (self.code[t - 1] * k + letter) % mod
            self.code[t] = c
            if t >= width:
                if self._is_seen(c):
                    raise ValueError("shard prefix repeats a window")
                self._mark(c, True)
            if t >= self.r:
                self._add_short(c % self.short_mod)

    def run(self, t: int = 1, p: int = 1, stop_depth: int | None = None, on_prefix=None) -> None:
        N, k, mod, width = self.N, self.k, self.mod, self.width
        a, code = self.a, self.code
        if t > N:
            if N % p == 0:
                self._leaf()
            return
        if stop_depth is not None and t > stop_depth:
            on_prefix(tuple(a[1:t]), p)
            return
        base = a[t - p]
        r, short_mod, short_seen = self.r, self.short_mod, self.short_seen
        # circular length-r windows still to be completed after position t
        still_open = max(0, N - (t - r + 1)) if t >= r else N
        for j in range(base, k):
            self.meter.tick()
            c = (code[t - 1] * k + j) % mod
            if t >= width and self._is_seen(c):
                continue
            if t >= r:
                s = c % short_mod
                fresh = short_seen[s] == 0
                if self.short_distinct + fresh + still_open < self.target_r:
                    continue
                short_seen[s] += 1
                self.short_distinct += fresh
            if t >= width:
                self._mark(c, True)
            a[t] = j
            code[t] = c
            self.run(t + 1, p if j == base else t, stop_depth, on_prefix)
            if t >= width:
                self._mark(c, False)
            if t >= r:
                short_seen[s] -= 1
                self.short_distinct -= fresh

    def _add_short(self, s: int) -> None:
        if self.short_seen[s] == 0:
            self.short_distinct += 1
        self.short_seen[s] += 1

    def _leaf(self) -> None:
        N, k, mod, width = self.N, self.k, self.mod, self.width
        a = self.a
        windows = [self.code[t] for t in range(width, N + 1)]
        c = self.code[N]
        for i in range(1, width):
            c = (c * k + a[i]) % mod
            windows.append(c)
        if len(set(windows)) != N:
            return
        if len({c // k for c in windows}) != self.target_r:
            return
        self.on_word(tuple(a[1:]))


@dataclass
class _Collector:
    limit: int | None = None
    count: int = 0
    least: tuple[int, ...] | None = None
    words: list[tuple[int, ...]] = field(default_factory=list)
    keep_words: bool = False

    def __call__(self, word: tuple[int, ...]) -> None:
        self.count += 1
        if self.least is None:
            self.least = word
        if self.keep_words:
            self.words.append(word)
            if self.limit is not None and len(self.words) >= self.limit:
                raise _Stop


def _shard_prefixes(N: int, k: int, depth: int, meter: _Meter) -> list[tuple[tuple[int, ...], int]]:
    """Surviving prefixes of length ``depth`` (< N) with their FKM period."""
    shards: list[tuple[tuple[int, ...], int]] = []
    search = _GdbSearch(N, k, meter, lambda word: None)
    search.run(stop_depth=depth, on_prefix=lambda prefix, p: shards.append((prefix, p)))
    return shards


def _run_shard(args) -> tuple[int, tuple[int, ...] | None, list, int, str | None]:
    N, k, prefix, p, budget, keep_words, limit = args
    meter = _Meter(budget)
    collector = _Collector(limit=limit, keep_words=keep_words)
    search = _GdbSearch(N, k, meter, collector)
    search.load_prefix(prefix)
    error = None
    try:
        search.run(len(prefix) + 1, p)
    except _Stop:
        pass
    except BudgetExceeded as exc:
        error = str(exc)
    return collector.count, collector.least, collector.words, meter.nodes, error


def _search_gdb(N: int, k: int, budget: Budget, jobs: int, keep_words: bool, limit: int | None):
    _check_args(N, k)
    meter = _Meter(budget)
    started = meter.started

    def partial(collector_count, least):
        return CountResult(
            N, k, collector_count,
            None if least is None else CircularWord(least, k),
            time.monotonic() - started, meter.nodes, complete=False,
        )

    if jobs <= 1 or N <= ilog(N, k) + 2:
        collector = _Collector(limit=limit, keep_words=keep_words)
        try:
            _GdbSearch(N, k, meter, collector).run()
        except _Stop:
            pass
        except BudgetExceeded as exc:
            raise BudgetExceeded(str(exc), partial(collector.count, collector.least)) from None
        return collector, meter.nodes, time.monotonic() - started

    depth = min(N - 1, ilog(N, k) + 1 + max(1, math.ceil(math.log(4 * jobs, k))))
    try:
        shards = _shard_prefixes(N, k, depth, meter)
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc), partial(0, None)) from None
    remaining_nodes = None if budget.max_nodes is None else budget.max_nodes - meter.nodes
    remaining_time = None
    if budget.max_seconds is not None:
        remaining_time = budget.max_seconds - (time.monotonic() - started)
    shard_budget = Budget(remaining_nodes, remaining_time)
    tasks = [(N, k, prefix, p, shard_budget, keep_words, limit) for prefix, p in shards]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(_run_shard, tasks))

    merged = _Collector(limit=limit, keep_words=keep_words)
    total_nodes = meter.nodes
    failure = None
    for count, least, words, nodes, error in results:
        merged.count += count
        total_nodes += nodes
        if merged.least is None:
            merged.least = least
        merged.words.extend(words)
        failure = failure or error
    if budget.max_nodes is not None and total_nodes > budget.max_nodes:
        failure = failure or f"node budget of {budget.max_nodes} exhausted"
    elapsed = time.monotonic() - started
    if failure:
        raise BudgetExceeded(failure, CountResult(
            N, k, merged.count,
            None if merged.least is None else CircularWord(merged.least, k),
            elapsed, total_nodes, complete=False,
        ))
    if limit is not None:
        merged.words = merged.words[:limit]
    return merged, total_nodes, elapsed


def count_gdb(N: int, k: int = 2, budget: Budget | None = None, jobs: int = 1) -> CountResult:
    """Number of generalized de Bruijn words of length N up to rotation.

    Letter permutations are not identified. Raises :class:`BudgetExceeded`
    carrying an incomplete result when the budget runs out.
    """
    budget = budget if budget is not None else Budget.from_env()
    collector, nodes, elapsed = _search_gdb(N, k, budget, jobs, keep_words=False, limit=None)
    least = None if collector.least is None else CircularWord(collector.least, k)
    return CountResult(N, k, collector.count, least, elapsed, nodes)


def list_gdb(
    N: int, k: int = 2, limit: int | None = None, budget: Budget | None = None, jobs: int = 1
) -> list[CircularWord]:
    """Least rotations of generalized de Bruijn words of length N, in lexicographic order."""
    budget = budget if budget is not None else Budget.from_env()
    collector, _, _ = _search_gdb(N, k, budget, jobs, keep_words=True, limit=limit)
    return [CircularWord(w, k) for w in collector.words]


def debruijn_count_formula(n: int, k: int = 2) -> int:
    """(k!)^(k^(n-1)) / k^n, the number of de Bruijn words of length k^n up to rotation."""
    if n < 1 or k < 2:
        raise ValueError("need n >= 1 and k >= 2")
    return math.factorial(k) ** (k ** (n - 1)) // k**n


def necklaces(N: int, k: int) -> Iterator[tuple[int, ...]]:
    """All least rotations of words of length N over k letters, in lexicographic order."""
    _check_args(N, k)
    a = [0] * (N + 1)

    def gen(t: int, p: int) -> Iterator[tuple[int, ...]]:
        if t > N:
            if N % p == 0:
                yield tuple(a[1:])
            return
        base = a[t - p]
        for j in range(base, k):
            a[t] = j
            yield from gen(t + 1, p if j == base else t)

    yield from gen(1, 1)


def naive_gdb_classes(N: int, k: int, predicate: Callable[[CircularWord], bool]) -> list[CircularWord]:
    """Every word of length N, canonicalized; used as an oracle for the pruned search."""
    classes = set()
    for letters in itertools.product(range(k), repeat=N):
        w = CircularWord(letters, k)
        if predicate(w):
            classes.add(canonical_rotation(w).letters)
    return [CircularWord(w, k) for w in sorted(classes)]


def normalize_up_to_letters(w: CircularWord) -> CircularWord:
    """Least word among all rotations of all letter permutations of ``w``."""
    return min(
        (canonical_rotation(relabel(w, perm)) for perm in itertools.permutations(range(w.k))),
        key=lambda x: x.letters,
    )


def _sc_chunk(args) -> list[int]:
    k, words = args
    return [state_complexity(UniformLanguage.conjugates_of(CircularWord(w, k))) for w in words]


def max_sc_search(N: int, k: int = 2, budget: Budget | None = None, jobs: int = 1) -> MaxScResult:
    """Maximum of sc(C(w)) over all w of length N, with the maximizing words.

    Words are reported once per class under rotation and exchange of letters.
    """
    _check_args(N, k)
    budget = budget if budget is not None else Budget.from_env()
    meter = _Meter(budget)
    candidates = []
    try:
        for w in necklaces(N, k):
            meter.tick()
            candidates.append(w)
    except BudgetExceeded as exc:
        raise BudgetExceeded(str(exc)) from None

    if jobs > 1 and len(candidates) > 1:
        size = math.ceil(len(candidates) / jobs)
        chunks = [(k, candidates[i : i + size]) for i in range(0, len(candidates), size)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            scores = [s for part in pool.map(_sc_chunk, chunks) for s in part]
    else:
        scores = []
        try:
            for w in candidates:
                meter.tick()
                scores.append(state_complexity(UniformLanguage.conjugates_of(CircularWord(w, k))))
        except BudgetExceeded as exc:
            elapsed = time.monotonic() - meter.started
            raise BudgetExceeded(
                str(exc), MaxScResult(N, k, max(scores, default=0), (), elapsed, complete=False)
            ) from None

    best = max(scores)
    winners = {
        normalize_up_to_letters(CircularWord(w, k)).letters
        for w, s in zip(candidates, scores)
        if s == best
    }
    words = tuple(str(CircularWord(w, k)) for w in sorted(winners))
    return MaxScResult(N, k, best, words, time.monotonic() - meter.started)


TERNARY_COUNTS = {8: 36, 9: 24, 10: 108}


def ternary_spot_checks(budget: Budget | None = None, jobs: int = 1) -> dict[int, tuple[int, int]]:
    """N -> (computed, expected) ternary class counts at the three published lengths."""
    return {n: (count_gdb(n, 3, budget=budget, jobs=jobs).count, want) for n, want in TERNARY_COUNTS.items()}
