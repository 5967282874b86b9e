"""Gadget construction mapping an LCS instance to a hairpin deletion instance.

For ternary strings ``S`` and ``T`` the builder produces binary strings
``x`` and ``y`` with

    hdd(x, y) = sum_a D(a) (#a(S) + #a(T)) - lcs(S, T) * B

together with the index tables locating every protector and information
gadget inside ``x``, an explicit optimal deletion path and a checker for the
corner-to-corner path structure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from hairpin import fibtools
from hairpin.fibtools import SYNC_L, SYNC_R, SyncCostSpec, period
from hairpin.hairpin_ops import (
    DeletionPath,
    DeletionStep,
    InvalidStep,
    Semantics,
    Side,
    SubstringState,
    replay_path,
)
from hairpin.lcs import LcsWitness, lcs
from hairpin.solver import PruneWindow, state_distance
from hairpin.strand import Strand, concat, find_occurrences, reverse_complement

TERNARY = (0, 1, 2)


class NonIntegralResult(ValueError):
    """A distance value that is inconsistent with the closed form."""


class WitnessInvalid(ValueError):
    """An LCS matching that is not a valid witness for the instance."""


class ReplayFailed(ValueError):
    """A path that does not replay from ``x`` to ``y``."""


@dataclass(frozen=True)
class GadgetConstants:
    iota: Mapping[int, int] = field(default_factory=lambda: MappingProxyType({0: 55, 1: 54, 2: 53}))
    p: int = 144
    D: Mapping[int, int] = field(default_factory=lambda: MappingProxyType({0: 57, 1: 56, 2: 55}))
    D_sync: Mapping[int, int] = field(default_factory=lambda: MappingProxyType({0: 31, 1: 29, 2: 27}))
    B: int = 83

    def identity_failures(self) -> list[str]:
        """Every violated constant identity; empty when all hold."""
        bad = []
        for a in TERNARY:
            if 2 * self.D[a] - self.D_sync[a] != self.B:
                bad.append(f"2D({a}) - D_sync({a}) != B")
            if self.D[a] != self.iota[a] + 2:
                bad.append(f"D({a}) != iota({a}) + 2")
            if self.D_sync[a] != 31 - 2 * a:
                bad.append(f"D_sync({a}) != 31 - 2*{a}")
        for value in (*self.iota.values(), self.p):
            if not fibtools.is_fibonacci_regular(value):
                bad.append(f"{value} is not Fibonacci-regular")
        return bad

    def to_json(self) -> dict:
        return {
            "iota": [self.iota[a] for a in TERNARY],
            "p": self.p,
            "D": [self.D[a] for a in TERNARY],
            "D_sync": [self.D_sync[a] for a in TERNARY],
            "B": self.B,
        }


CONSTANTS = GadgetConstants()
assert not CONSTANTS.identity_failures(), CONSTANTS.identity_failures()

INFO_ZEROS = {a: 3 + 2 * a for a in TERNARY}
PROTECTOR_ZEROS = 9

GADGET_NAMES = ("IL", "IR", "PL", "PR", "SyncL", "SyncR", "EL", "ER", "y_core")


@lru_cache(maxsize=None)
def gadget(name: str, alpha: int | None = None) -> Strand:
    """The named gadget string; ``alpha`` selects the information symbol where relevant."""
    needs_alpha = name in ("IL", "IR", "EL", "ER")
    if needs_alpha and alpha not in TERNARY:
        raise ValueError(f"gadget {name} needs alpha in {{0,1,2}}, got {alpha!r}")
    if not needs_alpha and alpha is not None:
        raise ValueError(f"gadget {name} takes no alpha")
    if name == "IL":
        return period(INFO_ZEROS[alpha]) * CONSTANTS.iota[alpha]
    if name == "IR":
        return reverse_complement(gadget("IL", alpha))
    if name == "PL":
        return period(PROTECTOR_ZEROS) * CONSTANTS.p
    if name == "PR":
        return reverse_complement(gadget("PL"))
    if name == "SyncL":
        return SYNC_L
    if name == "SyncR":
        return SYNC_R
    if name == "EL":
        return concat([gadget("PL"), SYNC_L, gadget("IL", alpha), SYNC_L])
    if name == "ER":
        return concat([SYNC_R, gadget("IR", alpha), SYNC_R, gadget("PR")])
    if name == "y_core":
        # 01 . 11 1̄1̄ . 1̄0̄ in bits
        centre = Strand.from_text("01" "1100" "01")
        return concat([gadget("PL"), SYNC_L, centre, SYNC_R, gadget("PR")])
    raise ValueError(f"unknown gadget {name!r}; expected one of {GADGET_NAMES}")


def _ternary(s: Sequence[int] | str) -> tuple[int, ...]:
    out = tuple(int(c) for c in s) if isinstance(s, str) else tuple(s)
    if any(c not in TERNARY for c in out):
        raise ValueError(f"input {s!r} is not over {{0,1,2}}")
    return out


def ternary_text(s: Sequence[int]) -> str:
    return "".join(str(c) for c in s)


@dataclass(frozen=True)
class ReductionInstance:
    """Output of :func:`build_reduction`.

    The tables are 1-based: ``left_p[l]`` for ``l`` in ``1..|S|+1``,
    ``right_p[r]`` for ``r`` in ``1..|T|+1``, ``left_i[l]`` for ``l`` in
    ``1..|S|`` and ``right_i[r]`` for ``r`` in ``1..|T|``.  Index 0 of each
    list is unused.
    """

    S: tuple[int, ...]
    T: tuple[int, ...]
    x: Strand
    y: Strand
    left_p: tuple[int, ...]
    right_p: tuple[int, ...]
    left_i: tuple[int, ...]
    right_i: tuple[int, ...]
    constants: GadgetConstants = CONSTANTS

    def corner(self, l: int, r: int) -> SubstringState:
        return SubstringState(self.left_p[l], self.right_p[r])

    @property
    def y_state(self) -> SubstringState:
        return self.corner(len(self.S) + 1, len(self.T) + 1)

    def prune_window(self) -> PruneWindow:
        y = self.y_state
        return PruneWindow(y.i, y.j)

    def window_area(self) -> int:
        y = self.y_state
        return y.i * (len(self.x) - y.j + 1)

    def sidecar(self) -> dict:
        return {
            "S": ternary_text(self.S),
            "T": ternary_text(self.T),
            "len_x": len(self.x),
            "len_y": len(self.y),
            "left_p": list(self.left_p[1:]),
            "right_p": list(self.right_p[1:]),
            "left_i": list(self.left_i[1:]),
            "right_i": list(self.right_i[1:]),
            "y_start": self.y_state.i,
            "y_end": self.y_state.j,
            "predicted_hdd": predicted_hdd(self.S, self.T),
            "constants": self.constants.to_json(),
        }

    def sidecar_json(self) -> str:
        return json.dumps(self.sidecar(), indent=2, sort_keys=True) + "\n"


def build_reduction(S: Sequence[int] | str, T: Sequence[int] | str) -> ReductionInstance:
    S, T = _ternary(S), _ternary(T)
    y = gadget("y_core")
    right_parts = [gadget("ER", c) for c in reversed(T)]
    x = concat([gadget("EL", c) for c in S] + [y] + right_parts)
    n = len(x)
    pl, sl = len(gadget("PL")), len(SYNC_L)
    pr, sr = len(gadget("PR")), len(SYNC_R)

    left_p = [0, 1]
    for c in S:
        left_p.append(left_p[-1] + len(gadget("EL", c)))
    right_p = [0, n]
    for c in T:
        right_p.append(right_p[-1] - len(gadget("ER", c)))
    left_i = [0] + [left_p[l] + pl + sl for l in range(1, len(S) + 1)]
    right_i = [0] + [right_p[r] - pr - sr for r in range(1, len(T) + 1)]

    inst = ReductionInstance(S, T, x, y, tuple(left_p), tuple(right_p), tuple(left_i), tuple(right_i))
    _check_instance(inst)
    return inst


def _check_instance(inst: ReductionInstance) -> None:
    ys = inst.y_state
    if len(inst.y) != len(gadget("y_core")):
        raise AssertionError("y has the wrong length")
    if find_occurrences(inst.x, inst.y) != [ys.i]:
        raise AssertionError("y must occur exactly once in x, at the sentinel corner")
    if inst.x.sub(ys.i, ys.j) != inst.y:
        raise AssertionError("sentinel corner does not delimit y")
    if len(find_occurrences(inst.x, fibtools.MID)) != 1:
        raise AssertionError("x must contain exactly one occurrence of 1100")


def symbol_weight(S: Sequence[int], T: Sequence[int]) -> int:
    """``sum_a D(a) (#a(S) + #a(T))``."""
    S, T = _ternary(S), _ternary(T)
    return sum(CONSTANTS.D[a] * (S.count(a) + T.count(a)) for a in TERNARY)


def predicted_hdd(S: Sequence[int] | str, T: Sequence[int] | str) -> int:
    S, T = _ternary(S), _ternary(T)
    return symbol_weight(S, T) - lcs(S, T).length * CONSTANTS.B


def lcs_from_hdd(S: Sequence[int] | str, T: Sequence[int] | str, hdd_value: int) -> int:
    S, T = _ternary(S), _ternary(T)
    q, rem = divmod(symbol_weight(S, T) - hdd_value, CONSTANTS.B)
    if rem or q < 0:
        raise NonIntegralResult(f"hdd value {hdd_value} does not fit the closed form for S={S}, T={T}")
    return q


# -- constructive optimal path -------------------------------------------------


def _left_phase(alpha: int) -> list[DeletionStep]:
    L = Side.LEFT
    per = INFO_ZEROS[alpha] + 2
    return (
        [DeletionStep(L, len(gadget("PL")) + len(SYNC_L))]
        + [DeletionStep(L, per)] * CONSTANTS.iota[alpha]
        + [DeletionStep(L, len(SYNC_L))]
    )


def _right_phase(alpha: int) -> list[DeletionStep]:
    R = Side.RIGHT
    per = INFO_ZEROS[alpha] + 2
    return (
        [DeletionStep(R, len(gadget("PR")) + len(SYNC_R))]
        + [DeletionStep(R, per)] * CONSTANTS.iota[alpha]
        + [DeletionStep(R, len(SYNC_R))]
    )


def _match_phase(alpha: int) -> tuple[list[DeletionStep], list[DeletionStep]]:
    """Two synchronized deletions: the protector pair, then the information pair."""
    outer = SyncCostSpec(PROTECTOR_ZEROS, INFO_ZEROS[alpha], CONSTANTS.p)
    inner = SyncCostSpec(INFO_ZEROS[alpha], PROTECTOR_ZEROS, CONSTANTS.iota[alpha])
    first, second = fibtools.fib_distance_path(outer), fibtools.fib_distance_path(inner)
    for spec, part in ((outer, first), (inner, second)):
        if len(part) != fibtools.sync_deletion_cost(spec):
            raise AssertionError(f"constructed subpath for {spec} has the wrong length")
    return first, second


@dataclass(frozen=True)
class WitnessPhase:
    kind: str  # "left", "right", "match-outer" or "match-inner"
    start: SubstringState
    end: SubstringState
    steps: tuple[DeletionStep, ...]
    constructed: bool = True  # False when the solver supplied the subpath


def _check_lcs_witness(inst: ReductionInstance, w: LcsWitness) -> None:
    try:
        w.validate(inst.S, inst.T)
    except ValueError as exc:
        raise WitnessInvalid(str(exc)) from None


def witness_phases(inst: ReductionInstance, w: LcsWitness) -> list[WitnessPhase]:
    """Phase decomposition of the constructive path for matching ``w``.

    Each phase is replayed against ``x``; a phase that fails to land on its
    target state is replaced by a solver-found shortest subpath.
    """
    _check_lcs_witness(inst, w)
    S, T = inst.S, inst.T
    pending = list(w.pairs)
    l = r = 1
    phases: list[WitnessPhase] = []

    def emit(kind: str, start: SubstringState, end: SubstringState, steps: list[DeletionStep], cost: int) -> None:
        steps, constructed = _validated(inst, start, end, steps, cost)
        phases.append(WitnessPhase(kind, start, end, tuple(steps), constructed))

    while l <= len(S) or r <= len(T):
        here = inst.corner(l, r)
        nxt = pending[0] if pending else (len(S) + 1, len(T) + 1)
        if l < nxt[0]:
            a = S[l - 1]
            emit("left", here, inst.corner(l + 1, r), _left_phase(a), CONSTANTS.D[a])
            l += 1
        elif r < nxt[1]:
            a = T[r - 1]
            emit("right", here, inst.corner(l, r + 1), _right_phase(a), CONSTANTS.D[a])
            r += 1
        else:
            a = S[l - 1]
            first, second = _match_phase(a)
            mid = SubstringState(inst.left_i[l], inst.right_i[r])
            emit("match-outer", here, mid, first, len(first))
            emit("match-inner", mid, inst.corner(l + 1, r + 1), second, len(second))
            pending.pop(0)
            l += 1
            r += 1
    return phases


def _validated(
    inst: ReductionInstance,
    start: SubstringState,
    end: SubstringState,
    steps: list[DeletionStep],
    cost: int,
) -> tuple[list[DeletionStep], bool]:
    try:
        landed = replay_path(inst.x, start, steps, Semantics.MODIFIED)
    except InvalidStep:
        landed = None
    if landed == end and len(steps) == cost:
        return steps, True
    res = state_distance(inst.x, start, end, Semantics.MODIFIED, inst.prune_window())
    if res.distance is None:
        raise AssertionError(f"no path between corner states {start} and {end}")
    return list(res.witness.steps), False


def build_well_behaved_witness(inst: ReductionInstance, w: LcsWitness | None = None) -> DeletionPath:
    """Corner-to-corner deletion path from ``x`` to ``y``; defaults to an optimal LCS matching."""
    if w is None:
        w = lcs(inst.S, inst.T)
    phases = witness_phases(inst, w)
    steps = tuple(s for ph in phases for s in ph.steps)
    return DeletionPath(SubstringState(1, len(inst.x)), steps)


def check_well_behaved(inst: ReductionInstance, path: DeletionPath) -> bool:
    """Whether every visited corner state is followed by one of its successors."""
    visited: list[SubstringState] = []
    try:
        end = replay_path(inst.x, path.start, path.steps, Semantics.MODIFIED, visit=visited)
    except InvalidStep as exc:
        raise ReplayFailed(str(exc)) from exc
    if path.start != SubstringState(1, len(inst.x)) or end != inst.y_state:
        raise ReplayFailed(f"path runs from {path.start} to {end}, not from x to y")
    return corner_condition_holds(inst, visited)


def corner_condition_holds(inst: ReductionInstance, visited: Iterable[SubstringState]) -> bool:
    """The corner successor condition on a set of visited states.

    Successors whose index runs past ``|S|+1`` or ``|T|+1`` are dropped; a
    corner with no defined successor is satisfied vacuously.
    """
    seen = set(visited)
    nS, nT = len(inst.S) + 1, len(inst.T) + 1
    for l in range(1, nS + 1):
        for r in range(1, nT + 1):
            if inst.corner(l, r) not in seen:
                continue
            succ = []
            if l < nS:
                succ.append(inst.corner(l + 1, r))
            if r < nT:
                succ.append(inst.corner(l, r + 1))
            if l < nS and r < nT:
                succ.append(inst.corner(l + 1, r + 1))
            if succ and not any(s in seen for s in succ):
                return False
    return True
