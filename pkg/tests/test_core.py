import threading

import pytest
from hypothesis import given, strategies as st

from collatz2.core import (U64_MAX, StoppingCache, f_step, odd_step, stopping_steps,
                           trajectory, two_adic_valuation)
from collatz2.errors import BudgetExceeded, NotOdd, Overflow

from oracles import naive_odd_exponent, naive_orbit, naive_steps


@pytest.mark.parametrize("v, expected", [(3, 10), (2, 1), (20, 10), (1, 4)])
def test_f_step(v, expected):
    assert f_step(v) == expected


def test_f_step_rejects_zero_and_overflow():
    with pytest.raises(ValueError):
        f_step(0)
    largest_ok = (U64_MAX - 1) // 3
    if not largest_ok & 1:
        largest_ok -= 1
    assert f_step(largest_ok) <= U64_MAX
    with pytest.raises(Overflow):
        f_step(largest_ok + 2)
    # even values near the top halve without trouble
    assert f_step(U64_MAX - 1) == (U64_MAX - 1) // 2


@pytest.mark.parametrize("v, expected", [(7, (11, 1)), (17, (13, 2)), (5, (1, 4)), (1, (1, 2))])
def test_odd_step(v, expected):
    assert odd_step(v) == expected


def test_odd_step_rejects_even():
    with pytest.raises(NotOdd):
        odd_step(4)


@given(st.integers(min_value=0, max_value=50_000))
def test_odd_step_matches_division_oracle(i):
    v = 2 * i + 1
    assert odd_step(v) == naive_odd_exponent(v)


def test_odd_step_matches_first_odd_successor():
    for v in range(1, 100_001, 2):
        w, k = f_step(v), 0
        while not w & 1:
            w >>= 1
            k += 1
        assert odd_step(v) == (w, k)


def test_two_adic_valuation():
    assert [two_adic_valuation(n) for n in (1, 2, 12, 40, 2**40)] == [0, 1, 2, 3, 40]


def test_trajectory_examples():
    assert trajectory(1, 10) == [1]
    assert trajectory(7, 100) == [7, 22, 11, 34, 17, 52, 26, 13, 40, 20, 10, 5, 16, 8, 4, 2, 1]
    assert trajectory(6, 100) == [6, 3, 10, 5, 16, 8, 4, 2, 1]


def test_trajectory_budget():
    assert len(trajectory(27, 111)) == 112
    with pytest.raises(BudgetExceeded):
        trajectory(27, 110)


def test_stopping_steps_examples():
    cache = StoppingCache()
    assert stopping_steps(1, cache) == 0
    assert stopping_steps(3, cache) == 7
    assert stopping_steps(27, cache) == 111
    assert stopping_steps(4) == 2


def test_stopping_steps_budget():
    with pytest.raises(BudgetExceeded):
        stopping_steps(27, budget=50)
    with pytest.raises(BudgetExceeded):
        stopping_steps(27, StoppingCache(), budget=50)


def test_cache_is_transparent():
    cache = StoppingCache()
    for v in range(1, 100_001):
        assert stopping_steps(v, cache) == stopping_steps(v)


def test_cache_matches_oracle_spot():
    cache = StoppingCache()
    for v in (1, 2, 3, 27, 97, 871, 77_031, 837_799):
        assert stopping_steps(v, cache) == naive_steps(v)
        assert cache.get(v) == naive_steps(v)


def test_cache_capacity_and_append_only():
    cache = StoppingCache(capacity=10)
    assert stopping_steps(27, cache) == 111
    assert len(cache) <= 10
    snapshot = dict(cache._table)
    for v in range(1, 500):
        stopping_steps(v, cache)
    assert all(cache.get(k) == s for k, s in snapshot.items())
    assert stopping_steps(27, cache) == 111


def test_cache_concurrent_readers():
    cache = StoppingCache()
    errors = []

    def work(lo):
        for v in range(lo, lo + 5000):
            if stopping_steps(v, cache) != stopping_steps(v):
                errors.append(v)

    threads = [threading.Thread(target=work, args=(1 + 2500 * i,)) for i in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors


def test_decreasing_along_orbit():
    cache = StoppingCache()
    for v in range(2, 100_001):
        assert stopping_steps(v, cache) == stopping_steps(f_step(v), cache) + 1


def test_power_of_two_shift():
    cache = StoppingCache()
    for k in range(1, 1001):
        base = stopping_steps(k, cache)
        for n in range(1, 21):
            assert stopping_steps(k << n, cache) == base + n


@given(st.integers(min_value=1, max_value=10**12))
def test_trajectory_matches_naive(v):
    assert trajectory(v, 10**5) == naive_orbit(v)
