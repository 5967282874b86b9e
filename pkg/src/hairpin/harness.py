"""Batch verification, lemma checks and benchmarking on reduction instances."""

from __future__ import annotations

import csv
import io
import itertools
import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence

from hairpin import fibtools
from hairpin.fibtools import SyncCostSpec, fib_inverse, is_fibonacci_regular
from hairpin.hairpin_ops import Semantics, replay_path
from hairpin.reduction import (
    CONSTANTS,
    TERNARY,
    build_reduction,
    build_well_behaved_witness,
    check_well_behaved,
    predicted_hdd,
    ternary_text,
)
from hairpin.solver import BudgetExceeded, hcd, hdd, state_distance
from hairpin.strand import Strand

Pair = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass
class VerificationRecord:
    index: int
    S: str
    T: str
    predicted: int
    solved: int | None
    witness_len: int
    well_behaved_witness_ok: bool
    states_expanded: int
    wall_time_ms: float
    status: str  # "ok", "mismatch" or "budget"
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "ok"

    def to_json(self, timing: bool = True) -> str:
        data = asdict(self)
        if timing:
            data["wall_time_ms"] = round(self.wall_time_ms, 3)
        else:
            del data["wall_time_ms"]
        return json.dumps(data, sort_keys=True)


def exhaustive_grid(max_s: int, max_t: int) -> list[Pair]:
    def strings(n: int) -> list[tuple[int, ...]]:
        return [w for k in range(n + 1) for w in itertools.product(TERNARY, repeat=k)]

    return [(S, T) for S in strings(max_s) for T in strings(max_t)]


def random_grid(count: int, max_len: int, seed: int, min_len: int = 0) -> list[Pair]:
    rng = random.Random(seed)

    def word() -> tuple[int, ...]:
        return tuple(rng.choice(TERNARY) for _ in range(rng.randint(min_len, max_len)))

    return [(word(), word()) for _ in range(count)]


def verify_instance(
    S: Sequence[int],
    T: Sequence[int],
    index: int = 0,
    max_states: int | None = None,
    timeout_s: float | None = None,
    seed: int | None = None,
) -> VerificationRecord:
    """Solve one instance with the pruning window and compare with the closed form."""
    inst = build_reduction(S, T)
    predicted = predicted_hdd(inst.S, inst.T)
    path = build_well_behaved_witness(inst)
    wb_ok = len(path) == predicted and check_well_behaved(inst, path)
    base = dict(index=index, S=ternary_text(inst.S), T=ternary_text(inst.T), predicted=predicted, seed=seed)
    try:
        res = hdd(inst.x, inst.y, Semantics.MODIFIED, inst.prune_window(), max_states, timeout_s)
    except BudgetExceeded as exc:
        p = exc.partial
        return VerificationRecord(
            **base, solved=None, witness_len=0, well_behaved_witness_ok=wb_ok,
            states_expanded=p.states_expanded, wall_time_ms=p.wall_time_ms, status="budget",
        )
    witness_len = len(res.witness) if res.witness else 0
    replay_ok = res.witness is not None and (
        replay_path(inst.x, res.witness.start, res.witness.steps, Semantics.MODIFIED) == inst.y_state
    )
    good = res.distance == predicted and witness_len == res.distance and replay_ok and wb_ok
    return VerificationRecord(
        **base, solved=res.distance, witness_len=witness_len, well_behaved_witness_ok=wb_ok,
        states_expanded=res.states_expanded, wall_time_ms=res.wall_time_ms,
        status="ok" if good else "mismatch",
    )


def _verify_job(args: tuple) -> VerificationRecord:
    (S, T), index, max_states, timeout_s, seed = args
    return verify_instance(S, T, index, max_states, timeout_s, seed)


def run_verification(
    pairs: Sequence[Pair],
    max_states: int | None = None,
    timeout_s: float | None = None,
    seed: int | None = None,
    workers: int = 1,
) -> Iterator[VerificationRecord]:
    """Yield one record per pair, in input order regardless of ``workers``."""
    jobs = [(pair, k, max_states, timeout_s, seed) for k, pair in enumerate(pairs)]
    if workers <= 1:
        yield from map(_verify_job, jobs)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(_verify_job, jobs)


# -- lemma checks --------------------------------------------------------------


@dataclass(frozen=True)
class LemmaCheck:
    name: str
    expected: object
    observed: object

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"{mark}  {self.name}: expected {self.expected}, observed {self.observed}"


def _corner(S: str, T: str, frm: tuple[int, int], to: tuple[int, int], max_states: int | None) -> int | None:
    inst = build_reduction(S, T)
    res = state_distance(inst.x, inst.corner(*frm), inst.corner(*to), Semantics.MODIFIED,
                         inst.prune_window(), max_states)
    return res.distance


def constant_checks() -> list[LemmaCheck]:
    c = CONSTANTS
    checks = []
    for a in TERNARY:
        checks.append(LemmaCheck(f"2D({a}) - D_sync({a}) = B", c.B, 2 * c.D[a] - c.D_sync[a]))
        checks.append(LemmaCheck(f"D({a}) = iota({a}) + 2", c.iota[a] + 2, c.D[a]))
        checks.append(LemmaCheck(f"D_sync({a}) = 31 - 2*{a}", 31 - 2 * a, c.D_sync[a]))
    return checks


def regularity_checks() -> list[LemmaCheck]:
    out = [LemmaCheck(f"{a} is Fibonacci-regular", True, is_fibonacci_regular(a)) for a in (53, 54, 55, 144)]
    out += [LemmaCheck(f"{a} is not Fibonacci-regular", False, is_fibonacci_regular(a)) for a in (2, 3)]
    out.append(LemmaCheck("1 is Fibonacci-regular", True, is_fibonacci_regular(1)))
    return out


def corner_checks(max_states: int | None = None) -> list[LemmaCheck]:
    out = []
    for a in TERNARY:
        s = str(a)
        out.append(LemmaCheck(f"single mega-gadget deletion, alpha={a}", CONSTANTS.iota[a] + 2,
                              _corner(s, s, (1, 1), (2, 1), max_states)))
    for a, b in ((0, 1), (0, 2), (1, 2)):
        out.append(LemmaCheck(f"disagreeing pair ({a},{b})", CONSTANTS.iota[a] + CONSTANTS.iota[b] + 4,
                              _corner(str(a), str(b), (1, 1), (2, 2), max_states)))
    for a in TERNARY:
        expected = fib_inverse(CONSTANTS.p) + fib_inverse(CONSTANTS.iota[a]) + 11 - 2 * a
        out.append(LemmaCheck(f"agreeing pair ({a},{a})", expected,
                              _corner(str(a), str(a), (1, 1), (2, 2), max_states)))
    return out


FIB_PAIRS = ((9, 3), (9, 5), (9, 7), (3, 9), (5, 9), (7, 9))


def fib_distance_checks_for(ext: int, int_: int, a: int) -> list[LemmaCheck]:
    """One synchronized-deletion check, or none if ``a`` is not Fibonacci-regular."""
    if not is_fibonacci_regular(a):
        return []
    spec = SyncCostSpec(ext, int_, a)
    host, q = fibtools.build_fib_test_instance(spec)
    return [LemmaCheck(f"synchronized deletion ext={ext} int={int_} a={a}",
                       fibtools.sync_deletion_cost(spec), hdd(host, q).distance)]


def fib_distance_checks(max_a: int = 20) -> list[LemmaCheck]:
    return [c for ext, int_ in FIB_PAIRS for a in range(1, max_a + 1)
            for c in fib_distance_checks_for(ext, int_, a)]


def c2_core(int_: int = 3) -> Strand:
    """A core matching both periodic patterns: ``SyncL . q . SyncR``."""
    return fibtools.SYNC_L + fibtools.make_core(int_) + fibtools.SYNC_R


def periodic_hcd_checks(max_a: int = 10, ext: int = 9) -> list[LemmaCheck]:
    per, q = fibtools.period(ext), c2_core()
    out = []
    for k in (1, 2):
        for a in range(k, max_a + 1):
            src = fibtools.periodic_host(per, q, k, k)
            dst = fibtools.periodic_host(per, q, a, a)
            out.append(LemmaCheck(f"periodic completion k={k} a={a}", fib_inverse(Fraction(a, k)),
                                  hcd(src, dst).distance))
    return out


def all_lemma_checks(max_states: int | None = None) -> Iterator[tuple[str, list[LemmaCheck]]]:
    yield "constant identities", constant_checks()
    yield "Fibonacci-regular constants", regularity_checks()
    yield "corner distances", corner_checks(max_states)
    yield "synchronized deletion cost", fib_distance_checks()
    yield "periodic completion distance", periodic_hcd_checks()


# -- benchmarking --------------------------------------------------------------


@dataclass
class BenchRecord:
    S: str
    T: str
    instance_size: int
    window_area: int
    distance: int | None
    states_expanded: int
    frontier_peak: int
    wall_time_ms: float
    arm_histogram: dict[int, int] = field(default_factory=dict)


BENCH_FIELDS = ("S", "T", "instance_size", "window_area", "distance", "states_expanded",
                "frontier_peak", "wall_time_ms", "arm_histogram")


def bench_instances(sizes: Iterable[tuple[int, int]], repetitions: int, seed: int) -> list[Pair]:
    rng = random.Random(seed)
    out = []
    for ls, lt in sizes:
        for _ in range(repetitions):
            out.append((tuple(rng.choice(TERNARY) for _ in range(ls)),
                        tuple(rng.choice(TERNARY) for _ in range(lt))))
    return out


def run_bench(pairs: Iterable[Pair], max_states: int | None = None,
              on_record: Callable[[BenchRecord], None] | None = None) -> list[BenchRecord]:
    out = []
    for S, T in pairs:
        inst = build_reduction(S, T)
        t0 = time.perf_counter()
        res = hdd(inst.x, inst.y, Semantics.MODIFIED, inst.prune_window(), max_states)
        rec = BenchRecord(ternary_text(inst.S), ternary_text(inst.T), len(inst.x), inst.window_area(),
                          res.distance, res.states_expanded, res.frontier_peak,
                          (time.perf_counter() - t0) * 1000.0, res.arm_histogram)
        out.append(rec)
        if on_record:
            on_record(rec)
    return out


def bench_csv(records: Iterable[BenchRecord], timing: bool = True) -> str:
    fields = [f for f in BENCH_FIELDS if timing or f != "wall_time_ms"]
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = asdict(r)
        row["arm_histogram"] = json.dumps({str(k): v for k, v in sorted(r.arm_histogram.items())},
                                          separators=(",", ":"))
        row["wall_time_ms"] = f"{r.wall_time_ms:.3f}"
        w.writerow({f: row[f] for f in fields})
    return buf.getvalue()
