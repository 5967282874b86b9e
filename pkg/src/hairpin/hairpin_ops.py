"""Hairpin completion and deletion on strands.

Two semantics are supported.  ``MODIFIED`` is the unconstrained operation
used throughout the reduction; ``ORIGINAL`` additionally requires the
symbol just past the copied arm to pair with the far boundary symbol.
Deletion validity under ``ORIGINAL`` is decided by re-completion: a
deletion is allowed exactly when the constrained completion of the same
length rebuilds the input.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Sequence

from hairpin.strand import Strand, reverse_complement


class Semantics(enum.Enum):
    ORIGINAL = "original"
    MODIFIED = "modified"


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"

    @property
    def opposite(self) -> Side:
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class InvalidStep(ValueError):
    """A deletion or completion whose preconditions fail.

    ``step_index`` is the 1-based position of the failing step when raised
    while replaying a path.
    """

    def __init__(self, message: str, step_index: int | None = None):
        if step_index is not None:
            message = f"step {step_index}: {message}"
        super().__init__(message)
        self.step_index = step_index


@dataclass(frozen=True)
class DeletionStep:
    side: Side
    length: int

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError(f"deletion length must be >= 1, got {self.length}")

    def __str__(self) -> str:
        return f"{self.side.value} {self.length}"


class SubstringState(NamedTuple):
    """The vertex ``host[i..j]`` of the deletion graph (1-based, inclusive)."""

    i: int
    j: int

    @property
    def length(self) -> int:
        return self.j - self.i + 1

    def check(self, host: Strand) -> None:
        if not 1 <= self.i <= self.j <= len(host):
            raise ValueError(f"({self.i},{self.j}) is not a state of a host of length {len(host)}")


@dataclass(frozen=True)
class DeletionPath:
    """A replayable witness: a start state and the deletions applied to it."""

    start: SubstringState
    steps: tuple[DeletionStep, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.steps)

    def as_completions(self) -> list[DeletionStep]:
        """The same operations read backwards as completions (end state to start)."""
        return list(reversed(self.steps))


def max_arm(s: Strand) -> int:
    """Longest ``m <= |s| // 2`` with ``s[k] = inv(s[|s|-k+1])`` for every ``k <= m``."""
    data, inv = s.data, s.alphabet.inv
    n = len(data)
    m = 0
    while m < n // 2 and data[m] == inv[data[n - 1 - m]]:
        m += 1
    return m


def _arm_at_least(s: Strand, length: int) -> bool:
    n = len(s)
    if length < 1 or length > n // 2:
        return False
    return s.data[:length] == reverse_complement(s.sub(n - length + 1, n)).data


@dataclass(frozen=True)
class DeletionLengths:
    """Valid deletion lengths: the range ``1..max_arm`` under a semantics filter.

    Kept as a range plus predicate instead of a materialised set.
    """

    source: Strand
    side: Side
    semantics: Semantics
    max_arm: int

    def __contains__(self, length: object) -> bool:
        if not isinstance(length, int) or not 1 <= length <= self.max_arm:
            return False
        if self.semantics is Semantics.MODIFIED:
            return True
        return _recompletes(self.source, self.side, length)

    def __iter__(self) -> Iterator[int]:
        return (k for k in range(1, self.max_arm + 1) if k in self)

    def __len__(self) -> int:
        return sum(1 for _ in self)

    def as_set(self) -> set[int]:
        return set(self)


def _truncate(s: Strand, side: Side, length: int) -> Strand:
    n = len(s)
    return s.sub(length + 1, n) if side is Side.LEFT else s.sub(1, n - length)


def _recompletes(s: Strand, side: Side, length: int) -> bool:
    rest = _truncate(s, side, length)
    try:
        return apply_completion(rest, side, length, Semantics.ORIGINAL) == s
    except InvalidStep:
        return False


def valid_deletion_lengths(s: Strand, side: Side, sem: Semantics) -> DeletionLengths:
    return DeletionLengths(s, side, sem, max_arm(s))


def is_valid_deletion(s: Strand, step: DeletionStep, sem: Semantics) -> bool:
    if not _arm_at_least(s, step.length):
        return False
    if sem is Semantics.MODIFIED:
        return True
    return _recompletes(s, step.side, step.length)


def apply_deletion(s: Strand, step: DeletionStep, sem: Semantics) -> Strand:
    """Remove ``step.length`` symbols from ``step.side``; the removed arm must pair up."""
    if not is_valid_deletion(s, step, sem):
        raise InvalidStep(f"{step} is not a valid {sem.value} deletion on a strand of length {len(s)}")
    return _truncate(s, step.side, step.length)


def apply_completion(s: Strand, side: Side, length: int, sem: Semantics) -> Strand:
    """Right: ``s + rc(s[1..length])``; left: ``rc(s[n-length+1..n]) + s``.

    ``ORIGINAL`` requires ``s[length+1] = inv(s[n])`` (right) or
    ``s[n-length] = inv(s[1])`` (left), so ``length = n`` never qualifies.
    """
    n = len(s)
    if not 1 <= length <= n:
        raise InvalidStep(f"completion length {length} outside [1..{n}]")
    inv = s.alphabet.inv
    if sem is Semantics.ORIGINAL:
        if length == n:
            raise InvalidStep("constrained completion needs a symbol past the arm")
        if side is Side.RIGHT:
            ok = s.at(length + 1) == inv[s.at(n)]
        else:
            ok = s.at(n - length) == inv[s.at(1)]
        if not ok:
            raise InvalidStep(f"boundary constraint fails for {side.value} completion of length {length}")
    if side is Side.RIGHT:
        return s + reverse_complement(s.sub(1, length))
    return reverse_complement(s.sub(n - length + 1, n)) + s


def replay_path(
    host: Strand,
    start: SubstringState,
    steps: Sequence[DeletionStep],
    sem: Semantics,
    visit: list[SubstringState] | None = None,
) -> SubstringState:
    """Apply ``steps`` to the view ``host[start]``, validating each one.

    Visited states (including ``start``) are appended to ``visit`` if given.
    """
    start.check(host)
    i, j = start
    if visit is not None:
        visit.append(SubstringState(i, j))
    for k, step in enumerate(steps, 1):
        view = host.sub(i, j)
        if not is_valid_deletion(view, step, sem):
            raise InvalidStep(f"{step} invalid on state ({i},{j})", step_index=k)
        if step.side is Side.LEFT:
            i += step.length
        else:
            j -= step.length
        if visit is not None:
            visit.append(SubstringState(i, j))
    return SubstringState(i, j)


def format_steps(steps: Sequence[DeletionStep]) -> str:
    return "".join(f"{step}\n" for step in steps)


def parse_steps(text: str) -> list[DeletionStep]:
    """Parse the one-step-per-line ``L <len>`` / ``R <len>`` witness format."""
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("L", "R") or not parts[1].isdigit():
            raise ValueError(f"line {lineno}: expected 'L <len>' or 'R <len>', got {raw!r}")
        steps.append(DeletionStep(Side(parts[0]), int(parts[1])))
    return steps
