"""Exact optimum finder and jump step.

`solve_first` finds a provably minimum-imbalance partition by depth-first
branch and bound over vertex assignments: vertices are ordered by descending
absolute signed degree, each new vertex may only join an already-used module
or open the next fresh one (restricted-growth symmetry breaking, so no two
leaves encode the same partition), and nodes are pruned with an admissible
bound: imbalance of the assigned prefix plus a packing of vertex-disjoint
conflicting triangles (odd number of negative edges) lying entirely in the
unassigned suffix, each of which forces at least one frustrated edge in any
completion.

`jump` reuses the same tree to find an optimal partition outside an already
discovered set, pruning only when the bound exceeds the known optimum; the
tree is rebuilt on every call.

The module also provides checkers on 0/1 same-module relation vectors: the
clustering objective, triangle (transitivity) violations, and the two
classic valid-inequality families, kept as exact predicates.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError, SolveTimeout
from .graph import SignedGraph
from .partition import Membership, SolutionSet, canonical_labels


# ---------------------------------------------------------------------------
# 0/1 relation vectors
# ---------------------------------------------------------------------------

def pair_index(n: int, u: int, v: int) -> int:
    """Index of unordered pair (u, v), u < v, in lexicographic pair order."""
    if u > v:
        u, v = v, u
    if u == v or not 0 <= u < n or not v < n:
        raise InputError(f"invalid pair ({u},{v}) for n={n}")
    return u * n - (u * (u + 1)) // 2 + (v - u - 1)


class RelationVector:
    """Binary same-module indicators x_uv over all vertex pairs u < v."""

    __slots__ = ("n", "x")

    def __init__(self, n: int, x: Sequence[int]):
        if len(x) != n * (n - 1) // 2:
            raise InputError(f"expected {n*(n-1)//2} pair entries, got {len(x)}")
        if any(v not in (0, 1) for v in x):
            raise InputError("relation entries must be 0 or 1")
        self.n = n
        self.x = tuple(int(v) for v in x)

    def __getitem__(self, pair: tuple[int, int]) -> int:
        return self.x[pair_index(self.n, *pair)]

    @classmethod
    def from_membership(cls, p: Membership) -> "RelationVector":
        n = len(p)
        vals = [1 if p[u] == p[v] else 0
                for u in range(n) for v in range(u + 1, n)]
        return cls(n, vals)

    def to_membership(self) -> Membership:
        """Decode into a membership vector; requires transitive consistency."""
        bad = check_triangle(self)
        if bad:
            raise InputError(f"relation vector is not transitive, e.g. triple {bad[0]}")
        n = self.n
        labels = [-1] * n
        nxt = 0
        for u in range(n):
            if labels[u] >= 0:
                continue
            labels[u] = nxt
            for v in range(u + 1, n):
                if self[(u, v)]:
                    labels[v] = nxt
            nxt += 1
        return Membership(labels)


def eval_objective(g: SignedGraph, x: RelationVector) -> int:
    """Clustering objective of a consistent relation vector: negative pairs
    kept together plus positive pairs split; equals the imbalance of the
    encoded partition."""
    if g.n != x.n:
        raise InputError("relation vector size != graph order")
    bad = check_triangle(x)
    if bad:
        raise InputError(f"relation vector is not transitive, e.g. triple {bad[0]}")
    total = 0
    for u, v, s in g.edges:
        same = x[(u, v)]
        if s < 0:
            total += same
        else:
            total += 1 - same
    return total


def check_triangle(x: RelationVector) -> list[tuple[int, int, int]]:
    """Triples violating transitivity (two pairs joined, the third not)."""
    n = x.n
    out = []
    for u in range(n):
        for v in range(u + 1, n):
            xuv = x[(u, v)]
            for w in range(v + 1, n):
                xvw = x[(v, w)]
                xuw = x[(u, w)]
                if xuv + xvw - xuw > 1 or xuv - xvw + xuw > 1 or -xuv + xvw + xuw > 1:
                    out.append((u, v, w))
    return out


def check_two_partition(x: RelationVector, s: Iterable[int], t: Iterable[int]) -> bool:
    """2-partition inequality: cross-pair sum minus both internal-pair sums
    is at most min(|S|, |T|)."""
    ss = list(s)
    tt = list(t)
    if not ss or not tt:
        raise InputError("2-partition sets must be non-empty")
    if set(ss) & set(tt):
        raise InputError("2-partition sets must be disjoint")
    cross = sum(x[(u, v)] for u in ss for v in tt)
    within_s = sum(x[(u, v)] for i, u in enumerate(ss) for v in ss[i + 1:])
    within_t = sum(x[(u, v)] for i, u in enumerate(tt) for v in tt[i + 1:])
    return cross - within_s - within_t <= min(len(ss), len(tt))


def check_two_chorded_cycle(x: RelationVector, cycle: Sequence[int]) -> bool:
    """2-chorded odd-cycle inequality: cycle-pair sum minus 2-chord sum is at
    most floor(|C| / 2)."""
    k = len(cycle)
    if k < 5 or k % 2 == 0:
        raise InputError("2-chorded cycle inequality needs an odd cycle of length >= 5")
    if len(set(cycle)) != k:
        raise InputError("cycle repeats a vertex")
    csum = sum(x[(cycle[i], cycle[(i + 1) % k])] for i in range(k))
    chords = sum(x[(cycle[i], cycle[(i + 2) % k])] for i in range(k))
    return csum - chords <= k // 2


# ---------------------------------------------------------------------------
# Branch and bound
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SolveBudget:
    """Wall-clock plus node-count budget for one search-tree traversal."""

    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


UNLIMITED = SolveBudget()


def _branch_order(g: SignedGraph) -> list[int]:
    """Assignment order: descending |deg+ - deg-|, ties by vertex id."""
    score = []
    for u in range(g.n):
        pos = sum(1 for _, s in g.neighbors(u) if s > 0)
        neg = g.degree(u) - pos
        score.append((-abs(pos - neg), u))
    return [u for _, u in sorted(score)]


def _suffix_triangle_bounds(g: SignedGraph, order: Sequence[int]) -> list[int]:
    """bound[k] = number of vertex-disjoint conflicting triangles fully inside
    order[k:], packed greedily by earliest position.

    A triangle with exactly one negative edge cannot be partitioned without
    frustrating one of its edges (keeping both positive edges internal forces
    the negative one internal too), so disjoint such triangles each add one
    to any completion's imbalance.  Triangles with three negative edges are
    NOT conflicting: splitting all three vertices satisfies them.
    """
    n = g.n
    pos_of = {u: i for i, u in enumerate(order)}
    used = [False] * n
    starts = []  # earliest position of each packed triangle
    for i in range(n):
        u = order[i]
        if used[i]:
            continue
        found = False
        nb = [(pos_of[v], v, s) for v, s in g.neighbors(u) if pos_of[v] > i and not used[pos_of[v]]]
        nb.sort()
        for a in range(len(nb)):
            ja, va, sa = nb[a]
            for b in range(a + 1, len(nb)):
                jb, vb, sb = nb[b]
                sc = g.sign(va, vb)
                if sc == 0:
                    continue
                if (sa < 0) + (sb < 0) + (sc < 0) == 1:
                    used[i] = used[ja] = used[jb] = True
                    starts.append(i)
                    found = True
                    break
            if found:
                break
    bounds = [0] * (n + 1)
    for k in range(n, -1, -1):
        bounds[k] = sum(1 for s in starts if s >= k)
    return bounds


class _Search:
    """Shared DFS machinery of `solve_first` and `jump`."""

    def __init__(self, g: SignedGraph, budget: SolveBudget):
        self.g = g
        self.order = _branch_order(g)
        self.bounds = _suffix_triangle_bounds(g, self.order)
        self.budget = budget
        self.nodes = 0
        self.t0 = time.monotonic()
        # edges from each ordered vertex to earlier ordered vertices
        pos_of = {u: i for i, u in enumerate(self.order)}
        self.back: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
        for u, v, s in g.edges:
            iu, iv = pos_of[u], pos_of[v]
            if iu > iv:
                iu, iv = iv, iu
            self.back[iv].append((iu, s))

    def _tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            raise SolveTimeout("node budget exhausted", nodes=self.nodes)
        if b.max_seconds is not None and (self.nodes & 0x3FF) == 0 \
                and time.monotonic() - self.t0 > b.max_seconds:
            raise SolveTimeout("time budget exhausted", nodes=self.nodes)

    def membership_from_assignment(self, assign: Sequence[int]) -> Membership:
        labels = [0] * self.g.n
        for i, u in enumerate(self.order):
            labels[u] = assign[i]
        return Membership(canonical_labels(labels))


def solve_first(g: SignedGraph, budget: SolveBudget = UNLIMITED) -> tuple[Membership, int]:
    """One provably optimal partition and its imbalance, deterministically.

    Raises :class:`SolveTimeout` (carrying the incumbent) when the budget is
    exhausted before optimality is proven.
    """
    if g.n < 1:
        raise InputError("graph must have at least one vertex")
    if g.n == 1:
        return Membership((0,)), 0
    search = _Search(g, budget)
    n = g.n
    assign = [0] * n
    best_value = g.m + 1
    best_assign: Optional[list[int]] = None

    def rec(i: int, max_used: int, acc: int):
        nonlocal best_value, best_assign
        search._tick()
        if acc + search.bounds[i] >= best_value:
            return
        if i == n:
            best_value = acc
            best_assign = assign[:]
            return
        for lab in range(max_used + 2):
            add = 0
            for j, s in search.back[i]:
                if s > 0:
                    if assign[j] != lab:
                        add += 1
                elif assign[j] == lab:
                    add += 1
            if acc + add + search.bounds[i + 1] >= best_value:
                continue
            assign[i] = lab
            rec(i + 1, max(max_used, lab), acc + add)

    try:
        rec(1, 0, 0)
    except SolveTimeout as exc:
        exc.incumbent = (search.membership_from_assignment(best_assign)
                         if best_assign is not None else None)
        exc.best_value = best_value if best_assign is not None else None
        raise
    assert best_assign is not None
    return search.membership_from_assignment(best_assign), best_value


def jump(g: SignedGraph, s: SolutionSet, istar: int,
         budget: SolveBudget = UNLIMITED) -> Optional[Membership]:
    """A canonical partition of imbalance exactly ``istar`` outside ``s``, or
    None when the space is exhausted.

    Prunes at bound strictly above ``istar`` (equality may still complete to
    an optimum), skips leaves already discovered, rebuilds the tree per call.
    """
    if g.n < 1:
        raise InputError("graph must have at least one vertex")
    search = _Search(g, budget)
    n = g.n
    assign = [0] * n
    known = s.label_tuples()

    def rec(i: int, max_used: int, acc: int) -> Optional[Membership]:
        search._tick()
        if acc + search.bounds[i] > istar:
            return None
        if i == n:
            p = search.membership_from_assignment(assign)
            if acc == istar and p.labels not in known:
                return p
            return None
        for lab in range(max_used + 2):
            add = 0
            for j, s_ in search.back[i]:
                if s_ > 0:
                    if assign[j] != lab:
                        add += 1
                elif assign[j] == lab:
                    add += 1
            if acc + add + search.bounds[i + 1] > istar:
                continue
            assign[i] = lab
            hit = rec(i + 1, max(max_used, lab), acc + add)
            if hit is not None:
                return hit
        return None

    if n == 1:
        p = Membership((0,))
        return None if p.labels in known or istar != 0 else p
    return rec(1, 0, 0)
