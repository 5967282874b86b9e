"""Exact hairpin deletion / completion distances.

Distances are unit-weight shortest paths in the deletion graph whose
vertices are substrings ``host[i..j]``.  The search is breadth first, so
the first target state discovered is at minimum distance; which of several
equally short witnesses is returned is unspecified.

With a :class:`PruneWindow` the search runs on a dense table over the
rectangle ``i <= i_max, j >= j_min``; without one it keeps a hash map of
every state reached from the source.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from hairpin import _kernels as K
from hairpin.hairpin_ops import (
    DeletionPath,
    DeletionStep,
    Semantics,
    Side,
    SubstringState,
    apply_deletion,
    valid_deletion_lengths,
)
from hairpin.strand import Strand, find_occurrences

DEFAULT_MAX_STATES = 200_000_000
BUDGET_ENV = "HAIRPIN_MAX_STATES"
_CHUNK = 2_000_000
_TIMED_CHUNK = 100_000  # smaller slices so a wall-clock ceiling is checked often

__all__ = [
    "BudgetExceeded",
    "DeletionPath",
    "PruneWindow",
    "SearchResult",
    "SubstringState",
    "brute_force_hdd",
    "default_max_states",
    "hcd",
    "hdd",
    "state_distance",
]


def default_max_states() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_MAX_STATES


@dataclass(frozen=True)
class PruneWindow:
    """Restrict the search to states with ``i <= i_max`` and ``j >= j_min``."""

    i_max: int
    j_min: int


@dataclass
class SearchResult:
    distance: int | None
    witness: DeletionPath | None
    states_expanded: int
    frontier_peak: int
    wall_time_ms: float = 0.0
    arm_histogram: dict[int, int] = field(default_factory=dict)

    @property
    def reachable(self) -> bool:
        return self.distance is not None

    def to_json(self) -> dict:
        return {
            "distance": self.distance,
            "witness": [str(s) for s in self.witness.steps] if self.witness else [],
            "states_expanded": self.states_expanded,
            "frontier_peak": self.frontier_peak,
            "wall_time_ms": round(self.wall_time_ms, 3),
        }


class BudgetExceeded(RuntimeError):
    """The search hit its state or time budget; ``partial`` holds the statistics so far."""

    def __init__(self, message: str, partial: SearchResult):
        super().__init__(message)
        self.partial = partial


def _histogram(counts: np.ndarray) -> dict[int, int]:
    nz = np.flatnonzero(counts)
    return {int(k): int(counts[k]) for k in nz}


def _steps_from_arrays(sides: np.ndarray, lengths: np.ndarray) -> tuple[DeletionStep, ...]:
    return tuple(
        DeletionStep(Side.LEFT if s == 0 else Side.RIGHT, int(n)) for s, n in zip(sides, lengths)
    )


def _search(
    host: Strand,
    source: SubstringState,
    target_starts: list[int],
    target_len: int,
    sem: Semantics,
    window: PruneWindow | None,
    max_states: int | None,
    timeout_s: float | None,
) -> SearchResult:
    t0 = time.perf_counter()
    source.check(host)
    if max_states is None:
        max_states = default_max_states()
    h = host.as_array()
    inv = host.alphabet.inv_array()
    original = sem is Semantics.ORIGINAL
    n = len(host)
    is_start = np.zeros(n, np.uint8)
    for s in target_starts:
        is_start[s - 1] = 1
    si, sj = source.i - 1, source.j - 1
    arm_hist = np.zeros(n // 2 + 2, np.int64)
    st = np.zeros(K.ST_SIZE, np.int64)
    st[K.PEAK] = 1

    def result(distance, witness):
        return SearchResult(
            distance,
            witness,
            int(st[K.EXPANDED]),
            int(st[K.PEAK]),
            (time.perf_counter() - t0) * 1000.0,
            _histogram(arm_hist),
        )

    if sj - si + 1 == target_len and is_start[si]:
        return result(0, DeletionPath(source, ()))

    if window is not None:
        ihi = min(window.i_max - 1, sj)
        jlo = max(window.j_min - 1, si)
        if ihi < si or jlo > sj:
            return result(None, None)
        width = sj - jlo + 1
        area = (ihi - si + 1) * width
        dist = np.full(area, -1, np.int32)
        queue = np.empty(area, np.int32 if area < 2**31 else np.int64)
        dist[sj - jlo] = 0
        queue[0] = sj - jlo
        st[K.TAIL] = 1

        def step(chunk):
            return K.dense_search(h, inv, original, si, ihi, jlo, sj, target_len, is_start,
                                  dist, queue, st, arm_hist, chunk)

        def backtrack(ti, tj):
            return K.dense_backtrack(h, inv, original, si, jlo, sj, dist, ti, tj)
    else:
        stride = n + 1
        dist, queue = K.new_sparse_tables()
        dist[si * stride + sj] = 0
        queue.append(si * stride + sj)
        st[K.TAIL] = 1

        def step(chunk):
            return K.sparse_search(h, inv, original, stride, target_len, is_start,
                                   dist, queue, st, arm_hist, chunk)

        def backtrack(ti, tj):
            return K.sparse_backtrack(h, inv, original, stride, si, sj, dist, ti, tj)

    chunk = _CHUNK if timeout_s is None else _TIMED_CHUNK
    while True:
        remaining = max_states - int(st[K.EXPANDED])
        if remaining <= 0:
            raise BudgetExceeded(f"expanded {st[K.EXPANDED]} states (budget {max_states})",
                                 result(None, None))
        status = step(min(chunk, remaining))
        if status == K.FOUND:
            ti, tj = int(st[K.FOUND_I]), int(st[K.FOUND_J])
            sides, lengths = backtrack(ti, tj)
            return result(len(lengths), DeletionPath(source, _steps_from_arrays(sides, lengths)))
        if status == K.EXHAUSTED:
            return result(None, None)
        if timeout_s is not None and time.perf_counter() - t0 > timeout_s:
            raise BudgetExceeded(f"wall-clock ceiling of {timeout_s:g}s reached", result(None, None))


def state_distance(
    host: Strand,
    source: SubstringState,
    target: SubstringState,
    sem: Semantics = Semantics.MODIFIED,
    prune_window: PruneWindow | None = None,
    max_states: int | None = None,
    timeout_s: float | None = None,
) -> SearchResult:
    """Fewest deletions turning the view ``host[source]`` into ``host[target]``."""
    target.check(host)
    return _search(host, source, [target.i], target.length, sem, prune_window, max_states, timeout_s)


def hdd(
    x: Strand,
    y: Strand,
    sem: Semantics = Semantics.MODIFIED,
    prune_window: PruneWindow | None = None,
    max_states: int | None = None,
    timeout_s: float | None = None,
) -> SearchResult:
    """Hairpin deletion distance from ``x`` to any occurrence of ``y`` in it."""
    t0 = time.perf_counter()
    starts = find_occurrences(x, y) if len(y) else []
    if not x.data or not starts:
        return SearchResult(None, None, 0, 0, (time.perf_counter() - t0) * 1000.0)
    return _search(x, SubstringState(1, len(x)), starts, len(y), sem, prune_window, max_states, timeout_s)


def hcd(
    y: Strand,
    x: Strand,
    sem: Semantics = Semantics.MODIFIED,
    prune_window: PruneWindow | None = None,
    max_states: int | None = None,
    timeout_s: float | None = None,
) -> SearchResult:
    """Hairpin completion distance from ``y`` to ``x``.

    Equal to ``hdd(x, y)``; ``result.witness.as_completions()`` lists the
    completions that grow ``y`` back into ``x``.
    """
    return hdd(x, y, sem, prune_window, max_states, timeout_s)


def _children(s: Strand, sem: Semantics) -> Iterator[Strand]:
    for side in (Side.LEFT, Side.RIGHT):
        for length in valid_deletion_lengths(s, side, sem):
            yield apply_deletion(s, DeletionStep(side, length), sem)


def brute_force_hdd(x: Strand, y: Strand, sem: Semantics, depth_cap: int) -> int | None:
    """Iterative-deepening enumeration of deletion sequences; ``None`` if ``y`` is not reached.

    Works on literal strings through :mod:`hairpin.hairpin_ops`, independently
    of the index-based search.  Meant for hosts of at most ~16 symbols.
    """

    # strands already shown unable to reach y within the stored depth
    failed: dict[bytes, int] = {}

    def reach(s: Strand, depth: int) -> bool:
        if s == y:
            return True
        if depth == 0 or len(s) <= len(y) or y.data not in s.data:
            return False
        if failed.get(s.data, -1) >= depth:
            return False
        if any(reach(c, depth - 1) for c in _children(s, sem)):
            return True
        failed[s.data] = depth
        return False

    if x.alphabet != y.alphabet:
        return None
    for depth in range(depth_cap + 1):
        if reach(x, depth):
            return depth
    return None
