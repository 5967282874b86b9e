"""Fibonacci arithmetic and synchronized-deletion costs.

``fib`` uses the indexing ``fib(0) = fib(1) = 1``.  ``fib_inverse`` takes an
exact rational (an ``int`` or :class:`fractions.Fraction`) and never touches
floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from hairpin.hairpin_ops import DeletionStep, Semantics, Side, apply_completion
from hairpin.strand import BINARY, Strand, find_occurrences, reverse_complement

FibQuery = Fraction


class PreconditionViolated(ValueError):
    """The closed form is only proven for Fibonacci-regular multiplicities."""


class PatternViolation(ValueError):
    """A core string falls outside the pattern class the cost lemmas assume."""


SYNC_L = Strand.from_text("01")
SYNC_R = Strand.from_text("101")
MID = Strand.from_text("1100")


@lru_cache(maxsize=None)
def fib(n: int) -> int:
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"fib needs a nonnegative integer, got {n!r}")
    a, b = 1, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fib_inverse(q: int | Fraction) -> int:
    """Least ``y`` with ``fib(y) >= q``, compared exactly as ``fib(y) * den >= num``."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError(f"fib_inverse needs a positive argument, got {q}")
    num, den = q.numerator, q.denominator
    y = 0
    while fib(y) * den < num:
        y += 1
    return y


def is_fibonacci_regular(a: int) -> bool:
    """Whether ``fib_inverse(a) <= fib_inverse(a / k) + k - 1`` for all ``2 <= k <= a``."""
    if a < 1:
        raise ValueError(f"a must be positive, got {a}")
    target = fib_inverse(a)
    for k in range(2, a + 1):
        if k - 1 >= target:
            break  # the right-hand side only grows from here on
        if target > fib_inverse(Fraction(a, k)) + k - 1:
            return False
    return True


@dataclass(frozen=True)
class SyncCostSpec:
    ext: int
    int_: int
    a: int

    def __post_init__(self) -> None:
        if min(self.ext, self.int_) < 3:
            raise ValueError(f"ext and int must be >= 3, got ({self.ext}, {self.int_})")
        if self.ext == self.int_:
            raise ValueError("ext and int must differ")
        if self.a < 1:
            raise ValueError(f"a must be positive, got {self.a}")

    @property
    def per(self) -> Strand:
        return period(self.ext)


def period(zeros: int) -> Strand:
    """The period ``0 1 0^zeros``."""
    return Strand(BINARY, b"\x00\x01" + b"\x00" * zeros)


def sync_deletion_cost(spec: SyncCostSpec) -> int:
    if not is_fibonacci_regular(spec.a):
        raise PreconditionViolated(f"a = {spec.a} is not Fibonacci-regular")
    return fib_inverse(spec.a) + max(spec.ext - spec.int_ - 1, 0) + 3


def _core_regex(int_: int) -> re.Pattern:
    return re.compile(f"010{{{int_}}}01[01]*1100[01]*011{{{int_}}}01")


def check_core(q: Strand, int_: int) -> None:
    """Raise :class:`PatternViolation` unless ``q`` is an admissible core for ``int_``.

    Admissible means ``q`` matches ``0 1 0^int 0 1 * 1 1 0 0 * 0 1 1^int 0 1``
    and contains ``1100`` exactly once.
    """
    if q.alphabet is not BINARY:
        raise PatternViolation("core must be a binary strand")
    if not _core_regex(int_).fullmatch(str(q)):
        raise PatternViolation(f"core {q!r} is outside the pattern class for int={int_}")
    if len(find_occurrences(q, MID)) != 1:
        raise PatternViolation("core must contain exactly one occurrence of 1100")


def make_core(int_: int, filler_left: Strand | None = None, filler_right: Strand | None = None) -> Strand:
    empty = Strand(BINARY, b"")
    head = Strand(BINARY, b"\x00\x01" + b"\x00" * int_ + b"\x00\x01")
    q = head + (filler_left or empty) + MID + (filler_right or empty) + reverse_complement(head)
    check_core(q, int_)
    return q


def build_fib_test_instance(
    spec: SyncCostSpec,
    filler_left: Strand | None = None,
    filler_right: Strand | None = None,
) -> tuple[Strand, Strand]:
    """Return ``(per^a . SyncL . q . SyncR . rc(per)^a, q)`` with ``per = 0 1 0^ext``."""
    q = make_core(spec.int_, filler_left, filler_right)
    per = spec.per
    host = per * spec.a + SYNC_L + q + SYNC_R + reverse_complement(per) * spec.a
    if len(find_occurrences(host, MID)) != 1:
        raise PatternViolation("fillers create a second 1100 in the host")
    return host, q


def greedy_multiplicities(k: int, a: int) -> list[tuple[Side, int]]:
    """Greedy growth schedule from ``(k, k)`` to ``(a, a)``.

    Each entry is the side completed and how many periods it gains.
    """
    if not 1 <= k <= a:
        raise ValueError(f"need 1 <= k <= a, got k={k}, a={a}")
    c = d = k
    out = []
    while (c, d) != (a, a):
        if c >= d:
            gain = min(c + d, a) - d
            d += gain
            out.append((Side.RIGHT, gain))
        else:
            gain = min(c + d, a) - c
            c += gain
            out.append((Side.LEFT, gain))
    return out


def periodic_host(per: Strand, q: Strand, c: int, d: int) -> Strand:
    return per * c + q + reverse_complement(per) * d


def parse_periodic(per: Strand, q: Strand, s: Strand) -> tuple[int, int] | None:
    """``(c, d)`` if ``s == per^c . q . rc(per)^d``, else ``None``."""
    hits = find_occurrences(s, q)
    rper = reverse_complement(per)
    p = len(per)
    for start in hits:
        left, right = s.data[: start - 1], s.data[start - 1 + len(q) :]
        if len(left) % p or len(right) % p:
            continue
        c, d = len(left) // p, len(right) // p
        if left == per.data * c and right == rper.data * d:
            return c, d
    return None


def check_c1_core(q: Strand) -> None:
    """Core class for the periodic-completion bounds: ``0101 * 1100 * 01101``."""
    if not re.fullmatch("0101[01]*1100[01]*01101", str(q)) or len(find_occurrences(q, MID)) != 1:
        raise PatternViolation(f"{q!r} is outside the class 0101*1100*01101")


def greedy_completion_trace(per: Strand, q: Strand, k: int, a: int) -> list[DeletionStep]:
    """Greedy completions turning ``per^k q rc(per)^k`` into ``per^a q rc(per)^a``.

    The trace has ``fib_inverse(a / k)`` steps; each is replayed with
    :func:`~hairpin.hairpin_ops.apply_completion` before being returned.
    """
    if not re.fullmatch("010{3,}", str(per)):
        raise PatternViolation(f"period {per!r} is not of the form 0 1 0^ext with ext >= 3")
    check_c1_core(q)
    steps = []
    s = periodic_host(per, q, k, k)
    for side, gain in greedy_multiplicities(k, a):
        step = DeletionStep(side, gain * len(per))
        s = apply_completion(s, side, step.length, Semantics.MODIFIED)
        steps.append(step)
    if s != periodic_host(per, q, a, a):
        raise AssertionError("greedy trace did not reach the target")
    return steps


def growth_bound_holds(k: int, x: int, c: int, d: int) -> bool:
    """After ``x`` completions from ``(k, k)``: ``min <= k fib(x)`` and ``max <= k fib(x+1)``."""
    return min(c, d) <= k * fib(x) and max(c, d) <= k * fib(x + 1)


def monitor_growth(per: Strand, q: Strand, k: int, completions: Iterable[DeletionStep]) -> list[tuple[int, int] | None]:
    """Replay completions from ``per^k q rc(per)^k`` and check the growth bound.

    Returns the parsed multiplicities after every step (``None`` when the
    string left the periodic shape).  Raises ``AssertionError`` on the first
    violation.
    """
    s = periodic_host(per, q, k, k)
    seen: list[tuple[int, int] | None] = [(k, k)]
    for x, step in enumerate(completions, 1):
        s = apply_completion(s, step.side, step.length, Semantics.MODIFIED)
        mult = parse_periodic(per, q, s)
        if mult is not None and min(mult) >= k and not growth_bound_holds(k, x, *mult):
            raise AssertionError(f"growth bound violated after {x} steps at {mult}")
        seen.append(mult)
    return seen


def fib_distance_path(spec: SyncCostSpec) -> list[DeletionStep]:
    """A deletion path of length ``sync_deletion_cost(spec)`` from the host to ``q``.

    Shrinks both periodic arms to one period along the reversed greedy
    schedule, then removes ``SyncR . rc(per)`` in one step, peels the left
    period down to ``SyncL . q`` and finally deletes ``SyncL``.
    """
    p = spec.ext + 2
    steps = [
        DeletionStep(side, gain * p) for side, gain in reversed(greedy_multiplicities(1, spec.a))
    ]
    steps.append(DeletionStep(Side.RIGHT, p + len(SYNC_R)))
    steps.append(DeletionStep(Side.LEFT, min(spec.ext, spec.int_ + 1) + 2))
    steps.extend(DeletionStep(Side.LEFT, 1) for _ in range(max(spec.ext - spec.int_ - 1, 0)))
    steps.append(DeletionStep(Side.LEFT, len(SYNC_L)))
    return steps
