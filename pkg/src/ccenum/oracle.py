"""Ground-truth brute force for small instances.

Enumerates every partition of the vertex set (restricted-growth order,
streamed), scans for the exact optimum set, and exposes the pruning-free
variant of the neighborhood search.  Everything here is the baseline that
the fast paths are tested against.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OracleCapError
from .graph import SignedGraph
from .neighborhood import ConsStats, PruningConfig, cons
from .partition import Membership, SolutionSet


def bell_number(n: int) -> int:
    """Number of partitions of an n-element set."""
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


@dataclass(frozen=True)
class OracleLimit:
    """Caps on brute-force enumeration size."""

    max_n: int = 12
    max_partitions: int = 4_213_597  # Bell(12)

    def check(self, n: int) -> None:
        if n > self.max_n:
            raise OracleCapError(f"n={n} exceeds oracle cap max_n={self.max_n}")
        if bell_number(n) > self.max_partitions:
            raise OracleCapError(
                f"Bell({n})={bell_number(n)} exceeds cap {self.max_partitions}")


DEFAULT_LIMIT = OracleLimit()


def enumerate_partitions(n: int, limit: OracleLimit = DEFAULT_LIMIT):
    """All canonical membership vectors of ``n`` vertices, lexicographically,
    as a stream (no Bell-sized list is materialized)."""
    if n < 1:
        raise OracleCapError(f"need n >= 1, got {n}")
    limit.check(n)
    labels = [0] * n

    def rec(i: int, max_used: int):
        if i == n:
            yield Membership(labels)
            return
        for lab in range(max_used + 2):
            labels[i] = lab
            yield from rec(i + 1, max(max_used, lab))

    yield from rec(1, 0)


def oracle_optima(g: SignedGraph, limit: OracleLimit = DEFAULT_LIMIT) -> SolutionSet:
    """Every partition attaining the minimum imbalance, by exhaustive scan.

    The scan walks the restricted-growth tree with incremental imbalance and
    prunes branches whose partial count already exceeds the incumbent, which
    keeps n = 12 tractable; the result is still exact.
    """
    limit.check(g.n)
    n = g.n
    # edges to earlier vertices, per vertex, for incremental counting
    back = [[] for _ in range(n)]
    for u, v, s in g.edges:
        back[v].append((u, s))

    labels = [0] * n
    best: list[int] = [g.m + 1]
    found: list[tuple[int, ...]] = []

    def rec(i: int, max_used: int, acc: int):
        if acc > best[0]:
            return
        if i == n:
            if acc < best[0]:
                best[0] = acc
                found.clear()
            found.append(tuple(labels))
            return
        for lab in range(max_used + 2):
            add = 0
            for u, s in back[i]:
                if s > 0:
                    if labels[u] != lab:
                        add += 1
                elif labels[u] == lab:
                    add += 1
            if acc + add > best[0]:
                continue
            labels[i] = lab
            rec(i + 1, max(max_used, lab), acc + add)

    if n == 1:
        return SolutionSet(0, [Membership((0,))])
    rec(1, 0, 0)
    out = SolutionSet(best[0])
    for labs in found:
        out.add_labels(labs)
    return out


def cons_bruteforce(g: SignedGraph, ps: Membership, r: int,
                    stats: ConsStats | None = None) -> set[Membership]:
    """Neighborhood search with every pruning rule forced to pass; the
    acceptance tests (imbalance equality, exact edit distance, atomicity) are
    the same as the pruned search."""
    return cons(g, ps, r, pruning=PruningConfig.none(), stats=stats)
