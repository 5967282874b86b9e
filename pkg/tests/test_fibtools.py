import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import B
from hairpin.fibtools import (
    PatternViolation,
    PreconditionViolated,
    SyncCostSpec,
    build_fib_test_instance,
    check_core,
    fib,
    fib_distance_path,
    fib_inverse,
    greedy_completion_trace,
    growth_bound_holds,
    is_fibonacci_regular,
    make_core,
    monitor_growth,
    parse_periodic,
    period,
    periodic_host,
    sync_deletion_cost,
)
from hairpin.hairpin_ops import DeletionStep, Semantics, Side, SubstringState, replay_path
from hairpin.harness import c2_core
from hairpin.solver import hdd
from hairpin.strand import find_occurrences


class TestFib:
    @pytest.mark.parametrize("n, v", [(0, 1), (1, 1), (4, 5), (11, 144), (12, 233)])
    def test_values(self, n, v):
        assert fib(n) == v

    def test_large_is_exact(self):
        assert fib(200) == fib(199) + fib(198)

    def test_negative(self):
        with pytest.raises(ValueError):
            fib(-1)

    @pytest.mark.parametrize("q, y", [(144, 11), (55, 9), (54, 9), (53, 9), (1, 0), (Fraction(8, 2), 4),
                                      (Fraction(3, 2), 2), (Fraction(1, 3), 0), (5, 4)])
    def test_inverse(self, q, y):
        assert fib_inverse(q) == y

    def test_inverse_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            fib_inverse(0)

    def test_inverse_exact_at_boundary(self):
        # 233/2 = 116.5 sits strictly between fib(10)=89 and fib(11)=144
        assert fib_inverse(Fraction(233, 2)) == 11
        assert fib_inverse(Fraction(288, 2)) == 11
        assert fib_inverse(Fraction(289, 2)) == 12


@given(st.integers(1, 10**6), st.integers(1, 500))
def test_inverse_is_least(num, den):
    y = fib_inverse(Fraction(num, den))
    assert fib(y) * den >= num
    assert y == 0 or fib(y - 1) * den < num


class TestRegular:
    @pytest.mark.parametrize("a", [1, 53, 54, 55, 144, 5])
    def test_regular(self, a):
        assert is_fibonacci_regular(a)

    @pytest.mark.parametrize("a", [2, 3, 4, 6])
    def test_not_regular(self, a):
        assert not is_fibonacci_regular(a)

    def test_matches_naive_definition(self):
        for a in range(1, 80):
            naive = all(fib_inverse(a) <= fib_inverse(Fraction(a, k)) + k - 1 for k in range(2, a + 1))
            assert is_fibonacci_regular(a) == naive


class TestSyncCost:
    @pytest.mark.parametrize("ext, int_, a, cost", [(9, 3, 144, 19), (3, 9, 55, 12), (9, 3, 5, 12)])
    def test_values(self, ext, int_, a, cost):
        assert sync_deletion_cost(SyncCostSpec(ext, int_, a)) == cost

    def test_rejects_irregular(self):
        with pytest.raises(PreconditionViolated):
            sync_deletion_cost(SyncCostSpec(9, 3, 2))

    @pytest.mark.parametrize("ext, int_, a", [(2, 5, 1), (5, 5, 1), (9, 3, 0)])
    def test_spec_invariants(self, ext, int_, a):
        with pytest.raises(ValueError):
            SyncCostSpec(ext, int_, a)

    def test_small_instance_matches_solver(self):
        spec = SyncCostSpec(9, 3, 5)
        host, q = build_fib_test_instance(spec)
        assert hdd(host, q).distance == 12


class TestInstance:
    def test_lengths(self):
        host, q = build_fib_test_instance(SyncCostSpec(9, 3, 1))
        assert str(q) == "0100001" + "1100" + "0111101"
        assert len(host) == 11 + 2 + len(q) + 3 + 11

    def test_swapped_parameters_accepted(self):
        host, q = build_fib_test_instance(SyncCostSpec(3, 9, 5))
        assert find_occurrences(host, q) and len(host) == 5 * 5 * 2 + 5 + len(q)

    def test_fillers(self):
        host, q = build_fib_test_instance(SyncCostSpec(9, 3, 1), B("0"), B("1"))
        assert str(q) == "0100001" + "0" + "1100" + "1" + "0111101"

    def test_filler_creating_second_centre_rejected(self):
        with pytest.raises(PatternViolation):
            build_fib_test_instance(SyncCostSpec(9, 3, 1), B("1100"))

    def test_check_core(self):
        check_core(make_core(5), 5)
        with pytest.raises(PatternViolation):
            check_core(make_core(5), 3)


class TestGreedy:
    per = period(9)
    q = c2_core()

    @pytest.mark.parametrize("k, a", [(1, 1), (1, 5), (2, 8), (1, 144), (3, 10)])
    def test_length(self, k, a):
        trace = greedy_completion_trace(self.per, self.q, k, a)
        assert len(trace) == fib_inverse(Fraction(a, k))

    def test_growth_bound_on_greedy(self):
        for k in (1, 2, 3):
            for a in range(k, 40):
                seen = monitor_growth(self.per, self.q, k, greedy_completion_trace(self.per, self.q, k, a))
                assert all(m is not None for m in seen) and seen[-1] == (a, a)

    def test_growth_bound_on_random_sequences(self):
        rng = random.Random(7)
        p = len(self.per)
        for _ in range(300):
            k = rng.randint(1, 2)
            c = d = k
            steps = []
            for _ in range(rng.randint(1, 6)):
                side = rng.choice([Side.LEFT, Side.RIGHT])
                gain = rng.randint(1, d if side is Side.LEFT else c)
                steps.append(DeletionStep(side, gain * p))
                if side is Side.LEFT:
                    c += gain
                else:
                    d += gain
            seen = monitor_growth(self.per, self.q, k, steps)
            assert seen[-1] == (c, d)

    def test_bound_predicate(self):
        assert growth_bound_holds(1, 1, 1, 2)
        assert not growth_bound_holds(1, 1, 1, 3)
        assert not growth_bound_holds(2, 2, 5, 5)
        assert growth_bound_holds(2, 3, 6, 10)

    def test_parse_periodic(self):
        s = periodic_host(self.per, self.q, 3, 2)
        assert parse_periodic(self.per, self.q, s) == (3, 2)
        assert parse_periodic(self.per, self.q, s + B("1")) is None

    def test_rejects_bad_period(self):
        with pytest.raises(PatternViolation):
            greedy_completion_trace(period(2), self.q, 1, 2)
        with pytest.raises(PatternViolation):
            greedy_completion_trace(self.per, B("0101"), 1, 2)


@pytest.mark.parametrize("ext, int_", [(9, 3), (9, 5), (9, 7), (3, 9), (5, 9), (7, 9)])
def test_constructive_path_is_optimal(ext, int_):
    for a in (1, 5, 7, 8, 11, 13):
        spec = SyncCostSpec(ext, int_, a)
        host, q = build_fib_test_instance(spec)
        path = fib_distance_path(spec)
        (start,) = find_occurrences(host, q)
        end = replay_path(host, SubstringState(1, len(host)), path, Semantics.MODIFIED)
        assert end == SubstringState(start, start + len(q) - 1)
        assert len(path) == sync_deletion_cost(spec)
