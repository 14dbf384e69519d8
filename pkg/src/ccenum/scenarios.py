"""Relational move patterns for two and three movers, with sign-margin tables.

A *pattern* abstracts a small edit operation down to what matters for the
per-vertex optimality margins: each mover's source label and target label,
where targets may be other movers' source modules or fresh "outside" modules
(identified only up to sharing).  For a pattern plus concrete edge signs
among the movers, the margin of mover ``i`` is::

    margin_i = gamma_left_i - gamma_right_i
    gamma_left_i  = sum(a_ij : s_j == s_i) - sum(a_ij : s_j == t_i)
    gamma_right_i = -sum(a_ij : t_j == t_i) + sum(a_ij : t_j == s_i)

On unweighted graphs every mover of an atomic equal-imbalance edit between
two optimal partitions must satisfy ``margin_i >= 2``; additionally the
interaction graph (edges between movers that share a source/target module
relation) must be connected, and so must the plain induced subgraph on the
movers.  ``admissible`` bundles these three necessary conditions.

The module ships two kinds of tables:

* a decision table (built at import) answering "given the movers' source
  pattern and their pairwise edge signs, can *any* target completion be
  admissible?" -- the source-side pruning test for 2 and 3 movers;
* the 17 classic three-move scenarios (letters ``a..r``) with their
  admissible sign vectors on complete graphs, kept as explicit literal data
  so tests can re-derive them from the margin conditions entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product

from .partition import canonical_labels

# Pair order for sign vectors over k movers: (0,1), (0,2), (1,2), ...
def pair_indices(k: int) -> list[tuple[int, int]]:
    return list(combinations(range(k), 2))


def pattern_margins(sources: tuple[int, ...], targets: tuple[int, ...],
                    signs: dict[tuple[int, int], int]) -> list[int]:
    """Per-mover margin ``gamma_left - gamma_right`` for a fully assigned
    pattern under the given pairwise signs (0 = no edge)."""
    k = len(sources)
    margins = []
    for i in range(k):
        gl = 0
        gr = 0
        for j in range(k):
            if j == i:
                continue
            a = signs[(i, j) if i < j else (j, i)]
            if sources[j] == sources[i]:
                gl += a
            if sources[j] == targets[i]:
                gl -= a
            if targets[j] == targets[i]:
                gr -= a
            if targets[j] == sources[i]:
                gr += a
        margins.append(gl - gr)
    return margins


def pattern_relations(sources: tuple[int, ...], targets: tuple[int, ...]) -> set[tuple[int, int]]:
    """Mover pairs sharing a source/target module relation."""
    k = len(sources)
    rel = set()
    for i, j in pair_indices(k):
        if (sources[i] == sources[j] or sources[i] == targets[j]
                or targets[i] == sources[j] or targets[i] == targets[j]):
            rel.add((i, j))
    return rel


def _pairs_connected(k: int, pairs: set[tuple[int, int]]) -> bool:
    if k <= 1:
        return True
    seen = {0}
    stack = [0]
    adj = {i: set() for i in range(k)}
    for i, j in pairs:
        adj[i].add(j)
        adj[j].add(i)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == k


def admissible(sources: tuple[int, ...], targets: tuple[int, ...],
               signs: dict[tuple[int, int], int]) -> bool:
    """Necessary conditions for an atomic equal-imbalance edit between optima
    realizing this pattern: margins >= 2 for every mover, interaction edges
    connected, induced mover subgraph connected."""
    k = len(sources)
    if any(m < 2 for m in pattern_margins(sources, targets, signs)):
        return False
    edges = {p for p in pair_indices(k) if signs[p] != 0}
    if not _pairs_connected(k, edges):
        return False
    relations = pattern_relations(sources, targets)
    interaction = edges & relations
    return _pairs_connected(k, interaction)


def target_completions(sources: tuple[int, ...]):
    """All target assignments for the given sources, up to renaming of the
    fresh outside modules (fresh labels appear in first-use order).

    Targets range over the movers' distinct source labels plus fresh labels;
    a mover never targets its own source.  Fresh labels start at
    ``max(sources) + 1``.
    """
    k = len(sources)
    base = sorted(set(sources))
    fresh0 = max(sources) + 1
    fresh_pool = [fresh0 + i for i in range(k)]
    for raw in product(base + fresh_pool, repeat=k):
        if any(raw[i] == sources[i] for i in range(k)):
            continue
        # fresh labels must appear in first-use order to avoid renamings
        nxt = fresh0
        ok = True
        for t in raw:
            if t >= fresh0:
                if t > nxt:
                    ok = False
                    break
                if t == nxt:
                    nxt += 1
        if ok:
            yield tuple(raw)


def feasible_signs(sources: tuple[int, ...], targets: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Admissible sign vectors (pair order from :func:`pair_indices`) over
    complete-graph signs ``{-1, +1}``."""
    k = len(sources)
    pis = pair_indices(k)
    out = set()
    for vec in product((-1, 1), repeat=len(pis)):
        signs = dict(zip(pis, vec))
        if admissible(sources, targets, signs):
            out.add(vec)
    return frozenset(out)


def _build_decision_table() -> dict:
    """(canonical sources, signs) -> does any completion pass `admissible`?

    Covers 2 and 3 movers with signs in {-1, 0, +1} so absent edges are
    handled; the answer is what source-side pruning needs.
    """
    table = {}
    source_patterns = {2: [(0, 0), (0, 1)],
                       3: [(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1), (0, 1, 2)]}
    for k, patterns in source_patterns.items():
        pis = pair_indices(k)
        for src in patterns:
            for vec in product((-1, 0, 1), repeat=len(pis)):
                signs = dict(zip(pis, vec))
                ok = any(admissible(src, tgt, signs) for tgt in target_completions(src))
                table[(src, vec)] = ok
    return table


_DECISION = _build_decision_table()


def movers_admissible(sources, signs_vec) -> bool:
    """Source-side satisfiability: can the movers, given only their source
    modules and mutual edge signs, still realize an admissible pattern?

    ``sources`` may use arbitrary labels; ``signs_vec`` follows
    :func:`pair_indices` order.  Only 2 or 3 movers are supported.
    """
    key = (canonical_labels(sources), tuple(signs_vec))
    return _DECISION[key]


@dataclass(frozen=True)
class Scenario:
    """One classic three-move scenario: letter, pattern, and the admissible
    sign vectors ``(a_uv, a_uz, a_vz)`` on complete unweighted graphs."""

    letter: str
    sources: tuple[int, int, int]
    targets: tuple[int, int, int]
    signs: frozenset[tuple[int, int, int]]


# The 17 scenarios over movers (u, v, z).  Labels: movers' source modules
# first (restricted growth), fresh outside modules after them.  Sign sets
# are frozen literals; tests re-derive them via `feasible_signs`.
# Scenarios k, m, o admit no sign vector at the unweighted margin (they can
# only satisfy the weaker weighted-graph inequality), hence empty sets.
PAPER_3EDIT_SCENARIOS: tuple[Scenario, ...] = (
    # all three movers share one source module
    Scenario("a", (0, 0, 0), (1, 1, 1), frozenset({(1, 1, 1)})),
    Scenario("b", (0, 0, 0), (1, 2, 2), frozenset({(1, 1, 1)})),
    Scenario("c", (0, 0, 0), (1, 2, 3), frozenset({(1, 1, 1)})),
    # movers u, v share a source; z sits in a second module
    Scenario("d", (0, 0, 1), (2, 2, 2), frozenset({(1, 1, 1)})),
    Scenario("e", (0, 0, 1), (1, 1, 0), frozenset({(1, -1, -1)})),
    Scenario("f", (0, 0, 1), (1, 1, 2), frozenset({(1, -1, -1)})),
    Scenario("g", (0, 0, 1), (2, 2, 0), frozenset({(1, -1, -1)})),
    Scenario("h", (0, 0, 1), (2, 3, 0), frozenset({(1, -1, -1)})),
    Scenario("i", (0, 0, 1), (2, 1, 0), frozenset({(1, -1, -1)})),
    Scenario("j", (0, 0, 1), (1, 2, 2), frozenset({(1, -1, 1)})),
    Scenario("k", (0, 0, 1), (1, 2, 3), frozenset()),
    # all three movers in distinct source modules
    Scenario("l", (0, 1, 2), (1, 2, 0), frozenset({(-1, -1, -1)})),
    Scenario("m", (0, 1, 2), (1, 2, 3), frozenset()),
    Scenario("n", (0, 1, 2), (1, 0, 1), frozenset({(-1, 1, -1)})),
    Scenario("o", (0, 1, 2), (1, 3, 3), frozenset()),
    Scenario("p", (0, 1, 2), (1, 3, 1), frozenset({(-1, 1, -1)})),
    Scenario("r", (0, 1, 2), (3, 3, 3), frozenset({(1, 1, 1)})),
)


# Two-mover scenarios (u, v): same five relational cases as the classic
# figure; only the first two admit a sign at the unweighted margin.
PAPER_2EDIT_SCENARIOS: tuple[Scenario, ...] = (
    Scenario("a", (0, 0), (1, 1), frozenset({(1,)})),    # shared source and target
    Scenario("b", (0, 1), (1, 0), frozenset({(-1,)})),   # swap
    Scenario("c", (0, 1), (2, 2), frozenset()),          # shared target only
    Scenario("d", (0, 0), (1, 2), frozenset()),          # shared source only
    Scenario("e", (0, 1), (1, 2), frozenset()),          # one-way crossing
)


def canonical_class(sources: tuple[int, ...], targets: tuple[int, ...]) -> tuple:
    """Canonical key of a pattern under mover permutation and label renaming
    (source labels and fresh labels renamed independently)."""
    k = len(sources)
    best = None
    for perm in permutations(range(k)):
        src = tuple(sources[p] for p in perm)
        tgt = tuple(targets[p] for p in perm)
        smap: dict[int, int] = {}
        for x in src:
            if x not in smap:
                smap[x] = len(smap)
        fresh = {}
        src_labels = set(src)
        out_t = []
        for x in tgt:
            if x in src_labels:
                out_t.append(smap[x])
            else:
                if x not in fresh:
                    fresh[x] = len(smap) + len(fresh)
                out_t.append(fresh[x])
        key = (tuple(smap[x] for x in src), tuple(out_t))
        if best is None or key < best:
            best = key
    return best


def derive_classes(k: int) -> dict[tuple, frozenset]:
    """All pattern classes on ``k`` movers with a connected relation
    structure, mapped to their complete-graph admissible sign sets.

    Used by tests to re-derive the scenario tables independently of the
    frozen literals.
    """
    source_patterns = {2: [(0, 0), (0, 1)],
                       3: [(0, 0, 0), (0, 0, 1), (0, 1, 2)]}[k]
    classes: dict[tuple, frozenset] = {}
    for src in source_patterns:
        for tgt in target_completions(src):
            if not _pairs_connected(k, pattern_relations(src, tgt)):
                continue
            key = canonical_class(src, tgt)
            if key not in classes:
                csrc, ctgt = key
                classes[key] = feasible_signs(csrc, ctgt)
    return classes
