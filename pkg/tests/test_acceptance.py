"""Acceptance criteria 1-10, each reported as one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` (or execute this
file directly); the verdicts are also repeated in the terminal summary.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from conftest import random_transport_pair
from hairpin import harness
from hairpin.fibtools import greedy_completion_trace, growth_bound_holds, monitor_growth, period
from hairpin.hairpin_ops import Semantics, replay_path
from hairpin.lift4 import has_parity, lift, lift_path, lift_window
from hairpin.reduction import build_reduction, predicted_hdd
from hairpin.solver import brute_force_hdd, hdd, state_distance
from hairpin.strand import BINARY, Strand

M, O = Semantics.MODIFIED, Semantics.ORIGINAL
GRID_SEED = 2024


def failures(checks):
    return [c.line() for c in checks if not c.passed]


@pytest.fixture(scope="module")
def grid_records():
    pairs = harness.exhaustive_grid(2, 2) + harness.random_grid(30, 3, GRID_SEED, min_len=2)
    t0 = time.perf_counter()
    records = list(harness.run_verification(pairs, seed=GRID_SEED))
    return records, time.perf_counter() - t0


def test_criterion_01_constant_identities(criterion):
    checks = harness.constant_checks()
    bad = failures(checks)
    criterion(1, not bad, f"{len(checks) - len(bad)}/{len(checks)} gadget constant identities")
    assert not bad, bad


def test_criterion_02_fibonacci_regular(criterion):
    checks = harness.regularity_checks()
    bad = failures(checks)
    criterion(2, not bad, "53, 54, 55, 144 and 1 accepted; 2 and 3 rejected" if not bad else "; ".join(bad))
    assert not bad, bad


def test_criterion_03_corner_distances(criterion):
    cases = [("0", "0", (1, 1), (2, 1), 57), ("0", "0", (1, 1), (2, 2), 31), ("0", "1", (1, 1), (2, 2), 113)]
    observed, slowest = [], 0.0
    for S, T, frm, to, expected in cases:
        inst = build_reduction(S, T)
        t0 = time.perf_counter()
        res = state_distance(inst.x, inst.corner(*frm), inst.corner(*to), M, inst.prune_window())
        slowest = max(slowest, time.perf_counter() - t0)
        observed.append((res.distance, expected))
    ok = all(d == e for d, e in observed) and slowest < 60
    criterion(3, ok, f"distances {[d for d, _ in observed]} (expected 57, 31, 113), slowest solve {slowest:.2f}s")
    assert ok


def test_criterion_04_reduction_end_to_end(criterion, grid_records):
    records, elapsed = grid_records
    small = [r for r in records[:169] if len(r.S) <= 1 and len(r.T) <= 1]
    exact = [r for r in records if r.solved == r.predicted]
    ok = len(small) == 16 and len(records) >= 169 + 25 and len(exact) == len(records)
    criterion(4, ok, f"{len(exact)}/{len(records)} instances solved == predicted "
                     f"(169 exhaustive + {len(records) - 169} random), {elapsed:.0f}s total")
    assert ok, [r.to_json() for r in records if r.solved != r.predicted]


def test_criterion_05_well_behaved_witness(criterion, grid_records):
    records, _ = grid_records
    good = [r for r in records if r.well_behaved_witness_ok]
    criterion(5, len(good) == len(records), f"{len(good)}/{len(records)} constructive witnesses replay and check")
    assert len(good) == len(records)


def test_criterion_06_synchronized_deletion(criterion):
    bad, slowest, count = [], 0.0, 0
    for ext, int_ in harness.FIB_PAIRS:
        for a in range(1, 21):
            t0 = time.perf_counter()
            checks = harness.fib_distance_checks_for(ext, int_, a)
            slowest = max(slowest, time.perf_counter() - t0)
            count += len(checks)
            bad += failures(checks)
    ok = not bad and count > 0 and slowest < 10
    criterion(6, ok, f"{count - len(bad)}/{count} instances exact, slowest {slowest:.2f}s")
    assert ok, bad


def test_criterion_07_periodic_completion(criterion):
    checks = harness.periodic_hcd_checks(max_a=10)
    bad = failures(checks)
    per, q = period(9), harness.c2_core()
    traces = 0
    for k in (1, 2):
        for a in range(k, 11):
            trace = greedy_completion_trace(per, q, k, a)
            seen = monitor_growth(per, q, k, trace)
            traces += 1
            if not all(s is not None and growth_bound_holds(k, x, *s) for x, s in enumerate(seen)):
                bad.append(f"growth bound broken k={k} a={a}")
    ok = not bad
    criterion(7, ok, f"{len(checks)} completion distances exact, {traces} greedy traces within bounds")
    assert ok, bad


def test_criterion_08_oracle_equivalence(criterion):
    rng = random.Random(8)
    hosts = comparisons = 0
    bad = []
    while hosts < 1000:
        n = rng.randint(1, 12)
        x = Strand.from_symbols([rng.randint(0, 1) for _ in range(n)], BINARY)
        hosts += 1
        targets = {x.sub(i, j) for i in range(1, n + 1) for j in range(i, n + 1)}
        for y in sorted(targets, key=lambda s: (len(s), s.data)):
            for sem in (M, O):
                comparisons += 1
                if hdd(x, y, sem).distance != brute_force_hdd(x, y, sem, n):
                    bad.append((str(x), str(y), sem.name))
    criterion(8, not bad, f"{comparisons - len(bad)}/{comparisons} comparisons over {hosts} hosts")
    assert not bad, bad[:10]


def _lifted_consistent(x, y, window=None, lifted_window=None) -> tuple[bool, bool]:
    mod = hdd(x, y, M, window)
    lx, ly = lift(x).lifted, lift(y).lifted
    orig = hdd(lx, ly, O, lifted_window)
    equal = mod.distance == orig.distance
    parity = True
    if orig.witness is not None:
        seen = []
        replay_path(lx, orig.witness.start, orig.witness.steps, O, visit=seen)
        moved = lift_path(mod.witness)
        parity = all(has_parity(s) for s in seen) and lx.sub(*replay_path(lx, moved.start, moved.steps, O)) == ly
    return equal, parity


def test_criterion_09_lift_bridge(criterion):
    rng = random.Random(9)
    random_bad, grid_bad, parity_bad = 0, 0, 0
    for _ in range(120):
        equal, parity = _lifted_consistent(*random_transport_pair(rng))
        random_bad += not equal
        parity_bad += not parity
    grid = harness.exhaustive_grid(1, 1)
    for S, T in grid:
        inst = build_reduction(S, T)
        w = inst.prune_window()
        equal, parity = _lifted_consistent(inst.x, inst.y, w, lift_window(w))
        grid_bad += not equal
        parity_bad += not parity
    ok = not (random_bad or grid_bad or parity_bad)
    criterion(9, ok, f"random pairs {120 - random_bad}/120, reduction grid {len(grid) - grid_bad}/{len(grid)}, "
                     f"parity violations {parity_bad}")
    assert ok


def test_criterion_10_bench_report(criterion, capsys):
    pairs = harness.bench_instances([(0, 0), (1, 1), (2, 2)], repetitions=1, seed=10)
    records = harness.run_bench(pairs)
    sane = all(0 <= r.states_expanded <= r.window_area and r.wall_time_ms >= 0 for r in records)
    sane = sane and all(r.distance == predicted_hdd(r.S, r.T) for r in records)
    with capsys.disabled():
        sys.stdout.write("\n" + harness.bench_csv(records))
    summary = ", ".join(f"|x|={r.instance_size}: {r.states_expanded} states" for r in records)
    criterion(10, sane, f"bench recorded (no slope asserted): {summary}")
    assert sane


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v", "-s"]))
