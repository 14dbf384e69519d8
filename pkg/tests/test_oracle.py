import random

import pytest

from ccenum.errors import OracleCapError
from ccenum.graph import SignedGraph
from ccenum.neighborhood import cons
from ccenum.oracle import (OracleLimit, bell_number, cons_bruteforce,
                           enumerate_partitions, oracle_optima)
from ccenum.partition import Membership, imbalance, imbalance_labels

from conftest import (balanced_two_modules, brute_optima, frustrated_triangle,
                      random_signed_graph)

BELL = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975]


def test_bell_numbers():
    assert [bell_number(n) for n in range(11)] == BELL


def test_enumerate_partitions_small():
    assert [p.labels for p in enumerate_partitions(3)] == [
        (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]
    assert [p.labels for p in enumerate_partitions(1)] == [(0,)]
    assert sum(1 for _ in enumerate_partitions(5)) == 52


def test_enumerate_partitions_counts_and_canonicality():
    for n in range(1, 9):
        seen = set()
        prev = None
        for p in enumerate_partitions(n):
            assert p.is_canonical()
            assert p.labels not in seen
            seen.add(p.labels)
            if prev is not None:
                assert prev < p.labels  # lexicographic stream
            prev = p.labels
        assert len(seen) == BELL[n]


def test_enumeration_cap():
    limit = OracleLimit(max_n=5)
    with pytest.raises(OracleCapError):
        list(enumerate_partitions(6, limit))
    with pytest.raises(OracleCapError):
        oracle_optima(SignedGraph(6, []), limit)
    with pytest.raises(OracleCapError):
        list(enumerate_partitions(0))


def test_oracle_optima_examples():
    g = frustrated_triangle()
    sols = oracle_optima(g)
    assert sols.istar == 1
    assert sols.label_tuples() == {(0, 0, 0), (0, 0, 1), (0, 1, 0)}
    b = balanced_two_modules(3)
    sols_b = oracle_optima(b)
    assert sols_b.istar == 0 and len(sols_b) == 1
    empty = SignedGraph(3, [])
    sols_e = oracle_optima(empty)
    assert sols_e.istar == 0 and len(sols_e) == 5


def test_oracle_optima_matches_full_scan():
    rng = random.Random(19)
    for _ in range(30):
        n = rng.randint(2, 8)
        g = random_signed_graph(rng, n, 0.6, 0.5)
        best, optima = brute_optima(g)
        sols = oracle_optima(g)
        assert sols.istar == best
        assert sols.label_tuples() == optima
        # every non-member partition is strictly worse
        from conftest import all_partitions
        for labs in all_partitions(n):
            if labs not in optima:
                assert imbalance_labels(g, labs) > best


def test_cons_bruteforce_equals_cons():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(4, 7)
        g = random_signed_graph(rng, n, 0.7, 0.5)
        sols = oracle_optima(g)
        ps = Membership(sols.sorted_tuples()[0])
        for r in (1, 2, 3):
            assert cons(g, ps, r) == cons_bruteforce(g, ps, r)


def test_cons_bruteforce_triangle():
    g = frustrated_triangle()
    out = cons_bruteforce(g, Membership((0, 0, 0)), 1)
    assert {m.labels for m in out} == {(0, 0, 1), (0, 1, 0)}
    b = balanced_two_modules(2)
    assert cons_bruteforce(b, Membership((0, 0, 1, 1)), 2) == set()
