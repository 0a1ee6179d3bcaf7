import itertools
import math

import pytest
from hypothesis import given, strategies as st

from collatz2.cycles import (EVEN, ODD, Parity, all_parity_cases, classify_parity,
                             cycle_bound_report, cycle_divisor_bound, is_cyclic_pair,
                             log_exponent, pq_bounds, product_identity_holds,
                             search_cyclic_pairs)
from collatz2.core import odd_step
from collatz2.errors import NotRetained, ParityError
from collatz2.levels import build_levels

from oracles import exact_pq, exact_sum_k_min


def feasible_patterns():
    """Parity quadruples reachable when f^k(x) = f^E(x), k < E.

    (a, b) is a feasible (predecessor, successor) parity pair under f: an odd
    value always maps to an even one. Both pairs share the successor value.
    """
    pairs = {(ODD, EVEN), (EVEN, EVEN), (EVEN, ODD)}
    return {(a, b, c, d) for (a, b), (c, d) in itertools.product(pairs, pairs) if b == d}


def test_table_examples():
    c = classify_parity(("odd", "even", "even", "even"))
    assert c.possibility_id == 1 and not c.refuted
    c = classify_parity([EVEN] * 4)
    assert c.possibility_id == 3 and c.refuted and c.refutation_reason == "d = e"
    c = classify_parity([ODD] * 4)
    assert c.possibility_id is None


def test_table_completeness():
    cases = all_parity_cases()
    assert len(cases) == 16
    with_id = [c for c in cases if c.possibility_id is not None]
    assert len(with_id) == 5
    assert sorted(c.possibility_id for c in cases if c.survives) == [1, 4]
    assert {c.parities for c in with_id} == feasible_patterns()


def test_surviving_relations_match_the_map():
    # possibility 1: d odd, E-1 element even: f(d) = 3d+1 = e/2
    assert "e/2 = 3d+1" in classify_parity((ODD, EVEN, EVEN, EVEN)).refutation_reason
    assert "d/2 = 3e+1" in classify_parity((EVEN, EVEN, ODD, EVEN)).refutation_reason


@pytest.mark.parametrize("o, e, expected", [(1, 8, True), (3, 20, True), (3, 10, False)])
def test_is_cyclic_pair(o, e, expected):
    assert is_cyclic_pair(o, e) is expected


def test_is_cyclic_pair_parity():
    with pytest.raises(ParityError):
        is_cyclic_pair(2, 8)
    with pytest.raises(ParityError):
        is_cyclic_pair(3, 9)


@pytest.mark.parametrize("n", [1, 7, 10_000])
def test_search_cyclic_pairs_empty(n):
    assert search_cyclic_pairs(build_levels(n, retain_elements=True), n) == []


def test_search_needs_retained():
    with pytest.raises(NotRetained):
        search_cyclic_pairs(build_levels(7), 7)


def test_search_finds_planted_pair():
    t = build_levels(7, retain_elements=True)
    t.elements[3] = t.elements[3] + [20]
    assert search_cyclic_pairs(t, 7) == [(3, 3, 20)]


@pytest.mark.parametrize("n, k", [(1, 2), (2, 4), (5, 8)])
def test_cycle_divisor_bound(n, k):
    assert cycle_divisor_bound(n) == k


def test_cycle_divisor_bound_coherence():
    log23 = math.log2(3)
    for n in range(1, 10_001):
        k = cycle_divisor_bound(n)
        assert k / n > log23 and (k - 1) / n <= log23
        assert 2**k > 3**n >= 2 ** (k - 1)
    for n in range(1, 300):
        assert cycle_divisor_bound(n) == exact_sum_k_min(n)


@pytest.mark.parametrize("e_m, expected", [(100, (38, 62)), (2, (0, 2)), (259, (100, 159))])
def test_pq_bounds(e_m, expected):
    assert pq_bounds(e_m) == expected
    assert exact_pq(e_m) == expected


def test_pq_coherence():
    r = 1 + math.log(3) / math.log(2)
    s = 1 + math.log(2) / math.log(3)
    for e_m in range(2, 10_001):
        p, q = pq_bounds(e_m)
        assert p + q in (e_m, e_m + 1)
        assert p < e_m / r and q > e_m / s
        # exact: 6**p < 2**e_m <= 6**(p+1) and 6**(q-1) <= 3**e_m < 6**q
        if e_m <= 600:
            assert 6**p < 2**e_m <= 6 ** (p + 1)
            assert 6 ** (q - 1) <= 3**e_m < 6**q


def test_guard_band_exact_path(monkeypatch):
    import collatz2.cycles as cyc
    monkeypatch.setattr(cyc, "GUARD", 1.0)
    for n in range(1, 200):
        assert cyc.cycle_divisor_bound(n) == exact_sum_k_min(n)
    for e_m in range(2, 200):
        assert cyc.pq_bounds(e_m) == exact_pq(e_m)


def test_cycle_bound_report():
    r = cycle_bound_report(5, 100)
    assert (r.n_odd, r.sum_k_min, r.e_m, r.p_max, r.q_min) == (5, 8, 100, 38, 62)
    assert cycle_bound_report(1).e_m is None


def test_product_identity():
    assert product_identity_holds([1])
    assert not product_identity_holds([3])
    assert not product_identity_holds([7, 11, 17, 13])
    with pytest.raises(ParityError):
        product_identity_holds([2])


@given(st.integers(min_value=0, max_value=10**9))
def test_log_exponent_matches_integer_k(i):
    o = 2 * i + 1
    nxt, k = odd_step(o)
    assert abs(log_exponent(o, nxt) - k) < 1e-9
