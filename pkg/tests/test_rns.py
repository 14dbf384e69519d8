import random
import time

import pytest

from ccenum.errors import InputError
from ccenum.graph import SignedGraph
from ccenum.neighborhood import cons
from ccenum.oracle import oracle_optima
from ccenum.partition import Membership, SolutionSet
from ccenum.rns import rns

from conftest import balanced_two_modules, frustrated_triangle, random_signed_graph


def test_rns_triangle_reaches_all_optima():
    g = frustrated_triangle()
    result = rns(g, Membership((0, 0, 0)), 1)
    assert result.discovered.label_tuples() == {(0, 0, 0), (0, 0, 1), (0, 1, 0)}
    assert result.stats.cons_invocations >= 1
    assert not result.stats.capped


def test_rns_unique_optimum():
    b = balanced_two_modules(3)
    p = Membership([0] * 3 + [1] * 3)
    result = rns(b, p, 3)
    assert result.discovered.label_tuples() == {p.labels}


def test_rns_validates_rmax():
    with pytest.raises(InputError):
        rns(frustrated_triangle(), Membership((0, 0, 0)), 0)


def test_rns_output_within_oracle_optima():
    rng = random.Random(41)
    for _ in range(15):
        n = rng.randint(4, 8)
        g = random_signed_graph(rng, n, 0.6, 0.5)
        sols = oracle_optima(g)
        seed = Membership(sols.sorted_tuples()[0])
        result = rns(g, seed, 2)
        assert result.discovered.label_tuples() <= sols.label_tuples()
        assert seed.labels in result.discovered.label_tuples()


def test_rns_closed_under_cons():
    rng = random.Random(43)
    for _ in range(10):
        n = rng.randint(4, 7)
        g = random_signed_graph(rng, n, 0.7, 0.5)
        sols = oracle_optima(g)
        seed = Membership(sols.sorted_tuples()[0])
        r_max = 2
        result = rns(g, seed, r_max)
        members = result.discovered.label_tuples()
        for labs in members:
            for r in range(1, r_max + 1):
                for q in cons(g, Membership(labs), r):
                    assert q.labels in members


def test_rns_monotone_in_rmax():
    rng = random.Random(47)
    for _ in range(10):
        n = rng.randint(4, 7)
        g = random_signed_graph(rng, n, 0.7, 0.5)
        sols = oracle_optima(g)
        seed = Membership(sols.sorted_tuples()[0])
        sets = [rns(g, seed, r).discovered.label_tuples() for r in (1, 2, 3)]
        assert sets[0] <= sets[1] <= sets[2]


def test_rns_order_independence():
    # the fixed point must not depend on which optimum seeds the search or on
    # the worklist order; seed from every optimum and compare reachable sets
    # starting at the seed's own component
    rng = random.Random(53)
    for _ in range(8):
        n = rng.randint(4, 7)
        g = random_signed_graph(rng, n, 0.8, 0.5)
        sols = oracle_optima(g)
        tuples = sols.sorted_tuples()
        seed = Membership(tuples[0])
        reference = rns(g, seed, 3).discovered.label_tuples()
        for other in tuples:
            if other in reference:
                again = rns(g, Membership(other), 3).discovered.label_tuples()
                assert again == reference


def test_rns_solution_cap_stops_cleanly():
    g = frustrated_triangle()
    result = rns(g, Membership((0, 0, 0)), 1, max_solutions=1)
    assert result.stats.capped
    assert len(result.discovered) >= 1


def test_rns_deadline_stops_cleanly():
    g = frustrated_triangle()
    result = rns(g, Membership((0, 0, 0)), 1, deadline=time.monotonic() - 1)
    assert result.stats.capped
    assert (0, 0, 0) in result.discovered.label_tuples()


def test_rns_shared_discovered_set_dedups_across_calls():
    g = frustrated_triangle()
    shared = SolutionSet(1)
    r1 = rns(g, Membership((0, 0, 0)), 1, discovered=shared)
    size_after_first = len(shared)
    r2 = rns(g, Membership((0, 0, 1)), 1, discovered=shared)
    assert len(shared) == size_after_first == 3
    assert r2.discovered is shared
