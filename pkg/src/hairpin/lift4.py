"""Lift binary strands to the 4-symbol alphabet.

Every symbol left of (and including) the midpoint ``mid`` of the unique
``1100`` becomes the pair ``2 s``; every symbol right of it becomes
``s 3`` (``3`` being the complement of ``2``).  On the lifted strings the
constrained (original) deletion distance equals the unconstrained distance
on the binary strings, and states map as ``(i, j) -> (2i-1, 2j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from hairpin.fibtools import MID
from hairpin.hairpin_ops import DeletionPath, DeletionStep, SubstringState
from hairpin.solver import PruneWindow
from hairpin.strand import BINARY, QUAD, Strand, find_occurrences

TWO, TWO_BAR = 2, 3


class MidNotFound(ValueError):
    pass


class MidNotUnique(ValueError):
    pass


@dataclass(frozen=True)
class LiftResult:
    lifted: Strand
    mid: int


def find_mid(s: Strand) -> int:
    """The index ``m`` with ``s[m-1..m+2] = 1100``; it must be unique."""
    if s.alphabet is not BINARY:
        raise ValueError("find_mid expects a binary strand")
    hits = find_occurrences(s, MID)
    if not hits:
        raise MidNotFound(f"{s!r} contains no 1100")
    if len(hits) > 1:
        raise MidNotUnique(f"{s!r} contains 1100 at {hits}")
    return hits[0] + 1


def lift(s: Strand) -> LiftResult:
    mid = find_mid(s)
    out = bytearray()
    for k, sym in enumerate(s.data, 1):
        out += bytes((TWO, sym)) if k <= mid else bytes((sym, TWO_BAR))
    return LiftResult(Strand(QUAD, bytes(out)), mid)


def lift_state(state: SubstringState) -> SubstringState:
    return SubstringState(2 * state.i - 1, 2 * state.j)


def lift_step(step: DeletionStep) -> DeletionStep:
    return DeletionStep(step.side, 2 * step.length)


def lift_path(path: DeletionPath) -> DeletionPath:
    return DeletionPath(lift_state(path.start), tuple(lift_step(s) for s in path.steps))


def lift_window(window: PruneWindow) -> PruneWindow:
    return PruneWindow(2 * window.i_max - 1, 2 * window.j_min)


def has_parity(state: SubstringState) -> bool:
    """Odd start and even end, the shape of every lifted state."""
    return state.i % 2 == 1 and state.j % 2 == 0


def transport_hypothesis(x: Strand, y: Strand) -> bool:
    """Whether distances between ``x`` and ``y`` survive lifting.

    Both strands must contain ``1100`` exactly once, ``y`` must occur in
    ``x`` around that occurrence, ``x`` must hold no ``11`` left of ``y`` and
    no ``00`` right of it.  The last two conditions keep every deletion arm
    on its own side of the midpoint, which the reduction strings satisfy by
    construction.
    """
    try:
        mid = find_mid(x)
        find_mid(y)
    except ValueError:
        return False
    starts = [s for s in find_occurrences(x, y) if s <= mid - 1 and s + len(y) - 1 >= mid + 2]
    if len(starts) != 1:
        return False
    left, right = x.data[: starts[0] - 1], x.data[starts[0] - 1 + len(y) :]
    return b"\x01\x01" not in left and b"\x00\x00" not in right
