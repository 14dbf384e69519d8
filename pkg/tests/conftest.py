"""Shared helpers: tiny canned instances and independent brute-force baselines.

The baselines here deliberately re-derive everything from first principles
(full partition scans, exhaustive label injections, realization
enumeration) so the fast paths in the package are checked against code that
shares none of their logic.
"""

import itertools
import random

import pytest

from ccenum.graph import SignedGraph
from ccenum.partition import canonical_labels, imbalance_labels


def frustrated_triangle() -> SignedGraph:
    """Two positive edges and one negative: minimum imbalance 1, three optima."""
    return SignedGraph(3, [(0, 1, 1), (0, 2, 1), (1, 2, -1)])


def balanced_two_modules(k: int = 3) -> SignedGraph:
    """Complete graph on 2k vertices, positive inside {0..k-1} and {k..2k-1},
    negative between: perfectly balanced, unique optimum."""
    edges = []
    for u in range(2 * k):
        for v in range(u + 1, 2 * k):
            same = (u < k) == (v < k)
            edges.append((u, v, 1 if same else -1))
    return SignedGraph(2 * k, edges)


def all_partitions(n: int):
    """All canonical label tuples of n items (restricted growth)."""
    labels = [0] * n

    def rec(i, maxg):
        if i == n:
            yield tuple(labels)
            return
        for g in range(maxg + 2):
            labels[i] = g
            yield from rec(i + 1, max(maxg, g))

    yield from rec(1, 0)


def brute_optima(g: SignedGraph) -> tuple[int, set[tuple[int, ...]]]:
    """Exact optimum value and all canonical optima, by full scan."""
    best = None
    found: set[tuple[int, ...]] = set()
    for labs in all_partitions(g.n):
        i = imbalance_labels(g, labs)
        if best is None or i < best:
            best = i
            found = {labs}
        elif i == best:
            found.add(labs)
    return best, found


def brute_edit_distance(a, b) -> int:
    """Distance by exhaustive search over label injections."""
    a = tuple(a)
    b = tuple(b)
    la, lb = max(a) + 1, max(b) + 1
    if la > lb:
        a, b, la, lb = b, a, lb, la
    best = 0
    for image in itertools.permutations(range(lb), la):
        matches = sum(1 for x, y in zip(a, b) if image[x] == y)
        best = max(best, matches)
    return len(a) - best


def naive_cons(g: SignedGraph, ps_labels, r: int) -> set[tuple[int, ...]]:
    """Independent neighbor semantics: canonical partitions Q with the same
    imbalance as ps, edit distance exactly r, and at least one r-mover
    realization of Q whose strict sub-moves all change the imbalance."""
    from ccenum.editdist import edit_distance

    n = g.n
    base = imbalance_labels(g, ps_labels)
    ls = max(ps_labels) + 1
    out = set()
    for q in all_partitions(n):
        if imbalance_labels(g, q) != base or edit_distance(ps_labels, q) != r:
            continue
        lq = max(q) + 1
        pool = range(ls + r)  # enough labels for any realization, up to renaming
        hit = False
        for image in itertools.permutations(pool, lq):
            v = tuple(image[x] for x in q)
            movers = [u for u in range(n) if v[u] != ps_labels[u]]
            if len(movers) != r:
                continue
            atomic = True
            for size in range(1, r):
                for sub in itertools.combinations(movers, size):
                    w = list(ps_labels)
                    for u in sub:
                        w[u] = v[u]
                    if imbalance_labels(g, w) == base:
                        atomic = False
                        break
                if not atomic:
                    break
            if atomic:
                hit = True
                break
        if hit:
            out.add(canonical_labels(q))
    return out


def random_signed_graph(rng: random.Random, n: int, density: float,
                        q_neg: float) -> SignedGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < density:
                edges.append((u, v, -1 if rng.random() < q_neg else 1))
    return SignedGraph(n, edges)


@pytest.fixture
def rng():
    return random.Random(20240817)
