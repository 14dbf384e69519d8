"""Complete neighborhood search: all optimal min-r-edit neighbors.

``cons(g, ps, r)`` returns every partition of equal imbalance reachable from
the optimal partition ``ps`` by an *atomic* minimum edit of exactly ``r``
vertices.  The search enumerates mover sets, then target assignments in
stages (known source-module targets first, then coupling of still-unknown
targets, then remaining/new module labels), pruning along the way:

* ``int_atomic`` — the movers alone: induced subgraph connected, and no
  zero-weight spurious link whose removal splits them (source side);
* ``int_mvmo`` — the movers alone: some relational move pattern is still
  satisfiable given their source modules and mutual edge signs;
* ``is_min_edit`` — module-counting conditions that expose an equivalent
  cheaper edit (a majority of a module moving together);
* ``ext_atomic`` — with (partially) known targets: no strict sub-move
  already preserves the imbalance, no target-side spurious link, and the
  interaction graph can still end up connected;
* ``ext_mvmo`` — per-vertex sign margins: every mover whose relations are
  determined must satisfy ``gamma_left - gamma_right >= 2``.

Every pruning rule is a proven *necessary* condition for a candidate to be
accepted, so disabling any subset of them never changes the result, only
the work done.  Final acceptance is exact and pruning-independent: equal
imbalance, edit distance exactly ``r``, and atomicity verified by direct
enumeration of sub-moves.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterable, Optional, Sequence

from .editdist import edit_distance
from .errors import InputError
from .graph import SignedGraph
from .partition import (Membership, canonical_labels, edit_imbalance,
                        imbalance, imbalance_labels)
from .scenarios import movers_admissible

UNKNOWN = None  # sentinel for a not-yet-assigned target module


@dataclass(frozen=True)
class EditOperation:
    """A (possibly partially specified) vertex-move operation.

    ``moving`` lists the moving vertices; ``sources`` their current modules;
    ``targets`` their destinations, entry-wise either a module label or
    ``None`` while still undecided.  Cost is the number of movers.
    """

    moving: tuple[int, ...]
    sources: tuple[int, ...]
    targets: tuple[Optional[int], ...]

    def __post_init__(self):
        if not (len(self.moving) == len(self.sources) == len(self.targets)):
            raise InputError("moving/sources/targets length mismatch")
        if len(set(self.moving)) != len(self.moving):
            raise InputError("duplicate moving vertex")
        for s, t in zip(self.sources, self.targets):
            if t is not None and t == s:
                raise InputError("assigned target equals source module")

    @property
    def cost(self) -> int:
        return len(self.moving)

    @classmethod
    def from_memberships(cls, ps: Membership, pt: Membership) -> "EditOperation":
        """Operation turning ``ps`` into ``pt`` (vectors compared position-wise)."""
        if len(ps) != len(pt):
            raise InputError("membership length mismatch")
        moving = tuple(u for u in range(len(ps)) if ps[u] != pt[u])
        return cls(moving,
                   tuple(ps[u] for u in moving),
                   tuple(pt[u] for u in moving))

    def partial_vector(self, ps: Membership) -> tuple[Optional[int], ...]:
        """Full-length target vector: non-movers keep their label, movers get
        their target or ``None``."""
        out: list[Optional[int]] = list(ps.labels)
        for u, t in zip(self.moving, self.targets):
            out[u] = t
        return tuple(out)


@dataclass(frozen=True)
class InteractionGraph:
    """Edges of the graph between movers that also share a source/target
    module relation."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def is_connected(self) -> bool:
        return _pairs_connected(len(self.vertices),
                                {(self.vertices.index(u), self.vertices.index(v))
                                 for u, v in self.edges})


@dataclass(frozen=True)
class MvmoTerms:
    """Per-vertex optimality margins of a move between optima, restricted to
    relations with other movers."""

    gamma_left: int
    gamma_right: int

    @property
    def margin(self) -> int:
        return self.gamma_left - self.gamma_right


def _pairs_connected(k: int, pairs: Iterable[tuple[int, int]]) -> bool:
    if k <= 1:
        return True
    adj: list[list[int]] = [[] for _ in range(k)]
    for i, j in pairs:
        adj[i].append(j)
        adj[j].append(i)
    seen = [False] * k
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                stack.append(v)
    return count == k


# ---------------------------------------------------------------------------
# Raw-context helpers.  A "context" is: pair signs among the movers (indexed
# by mover positions), the movers' source labels, and their (partial) target
# labels.  Target labels never collide with source labels unless they *are*
# existing module labels, which is all the relation logic needs.
# ---------------------------------------------------------------------------

def _pair_sign_map(g: SignedGraph, movers: Sequence[int]) -> dict[tuple[int, int], int]:
    k = len(movers)
    return {(i, j): g.sign(movers[i], movers[j])
            for i in range(k) for j in range(i + 1, k)}


def _sign(signs: dict, i: int, j: int) -> int:
    return signs[(i, j) if i < j else (j, i)]


def _relations_known(sources, targets, i: int, j: int) -> bool:
    """Pair relation with partial knowledge; unknown targets relate to
    nothing (they resolve to modules no mover comes from)."""
    if sources[i] == sources[j]:
        return True
    ti, tj = targets[i], targets[j]
    if ti is not None and (ti == sources[j] or (tj is not None and ti == tj)):
        return True
    if tj is not None and tj == sources[i]:
        return True
    return False


def _gamma(signs, sources, targets, i: int) -> tuple[int, int]:
    """(gamma_left, gamma_right) of mover ``i``; unknown targets contribute
    nothing (their resolved module hosts no mover source)."""
    gl = 0
    gr = 0
    k = len(sources)
    ti = targets[i]
    for j in range(k):
        if j == i:
            continue
        a = _sign(signs, i, j)
        if a == 0:
            continue
        if sources[j] == sources[i]:
            gl += a
        if ti is not None and sources[j] == ti:
            gl -= a
        tj = targets[j]
        if tj is not None:
            if ti is not None and tj == ti:
                gr -= a
            if tj == sources[i]:
                gr += a
    return gl, gr


def _margin_upper_bound(signs, sources, targets, i: int) -> int:
    """Largest possible margin of an unknown-target mover ``i`` over all
    completions; exact for movers with assigned targets."""
    gl, gr = _gamma(signs, sources, targets, i)
    if targets[i] is not None:
        return gl - gr
    # i's resolved target can only coincide with other unknown movers'
    # resolved targets; sharing with positively tied ones raises the margin.
    bonus = 0
    for j in range(len(sources)):
        if j != i and targets[j] is None:
            bonus += max(_sign(signs, i, j), 0)
    return gl - (gr - bonus)


def _margins_ok(signs, sources, targets) -> bool:
    """Necessary margin conditions (moves between optima, cost >= 2)."""
    return all(_margin_upper_bound(signs, sources, targets, i) >= 2
               for i in range(len(sources)))


def _nonmin_detected(module_size: Sequence[int], n_modules: int,
                     sources, targets) -> bool:
    """Module-counting conditions proving a cheaper equivalent edit exists."""
    k = len(sources)
    movers_from: dict[int, int] = {}
    for s in sources:
        movers_from[s] = movers_from.get(s, 0) + 1
    group: dict[tuple[int, int], int] = {}
    for s, t in zip(sources, targets):
        if t is not None:
            group[(s, t)] = group.get((s, t), 0) + 1
    for (a, t), va in group.items():
        size_a = module_size[a]
        if va * 2 <= size_a:
            continue  # not the majority of module a
        vbar_a = size_a - movers_from.get(a, 0)
        if t < n_modules:
            vbar_b = module_size[t] - movers_from.get(t, 0)
            vb_to_a = group.get((t, a), 0)
        else:
            vbar_b = 0
            vb_to_a = 0
        if vb_to_a > 0:
            if va + vb_to_a > vbar_a + vbar_b:
                return True
        elif va > vbar_a + vbar_b:
            return True
    return False


def _spurious_split(k: int, signs, grouping: Sequence[int | None]) -> bool:
    """True when some co-grouped subset S is tied to the rest of its group by
    edges of zero total sign whose removal disconnects the movers.

    ``grouping`` assigns movers to co-source (or co-target) groups; ``None``
    entries belong to no group.
    """
    all_edges = {(i, j) for i in range(k) for j in range(i + 1, k)
                 if _sign(signs, i, j) != 0}
    groups: dict[int, list[int]] = {}
    for i, gid in enumerate(grouping):
        if gid is not None:
            groups.setdefault(gid, []).append(i)
    for members in groups.values():
        if len(members) < 2:
            continue
        for size in range(1, len(members)):
            for sub in combinations(members, size):
                sset = set(sub)
                rest = [i for i in members if i not in sset]
                link = [(min(i, j), max(i, j)) for i in sub for j in rest
                        if _sign(signs, i, j) != 0]
                if not link:
                    continue
                if sum(_sign(signs, i, j) for i, j in link) != 0:
                    continue
                if not _pairs_connected(k, all_edges - set(link)):
                    return True
    return False


def _subset_preserves_imbalance(g: SignedGraph, labels, base_imbalance: int,
                                movers, targets, subset_positions) -> bool:
    sub_movers = [movers[i] for i in subset_positions]
    sub_targets = [targets[i] for i in subset_positions]
    return edit_imbalance(g, labels, base_imbalance, sub_movers, sub_targets) == base_imbalance


def _has_equal_sub_edit(g: SignedGraph, labels, base_imbalance: int,
                        movers, targets, positions, strict_in: int) -> bool:
    """Does some non-empty subset of ``positions`` (strictly smaller than
    ``strict_in`` movers) move to its targets with unchanged imbalance?"""
    for size in range(1, len(positions) + 1):
        if size >= strict_in:
            break
        for sub in combinations(positions, size):
            if _subset_preserves_imbalance(g, labels, base_imbalance,
                                           movers, targets, sub):
                return True
    return False


def _interaction_pairs(signs, sources, targets) -> set[tuple[int, int]]:
    k = len(sources)
    return {(i, j) for i in range(k) for j in range(i + 1, k)
            if _sign(signs, i, j) != 0 and _relations_known(sources, targets, i, j)}


def _potential_interaction_connected(signs, sources, targets) -> bool:
    """Connectivity of the interaction graph, counting edges between two
    unknown-target movers optimistically (they may share a target)."""
    k = len(sources)
    pairs = _interaction_pairs(signs, sources, targets)
    for i in range(k):
        for j in range(i + 1, k):
            if targets[i] is None and targets[j] is None and _sign(signs, i, j) != 0:
                pairs.add((i, j))
    return _pairs_connected(k, pairs)


# ---------------------------------------------------------------------------
# Public pruning operations
# ---------------------------------------------------------------------------

def interaction_graph(g: SignedGraph, ps: Membership, op: EditOperation) -> InteractionGraph:
    """Graph on the movers keeping only edges whose endpoints share a
    source/target module relation (unknown targets match nothing)."""
    signs = _pair_sign_map(g, op.moving)
    pairs = _interaction_pairs(signs, op.sources, op.targets)
    edges = tuple(sorted((op.moving[i], op.moving[j]) for i, j in pairs))
    return InteractionGraph(op.moving, edges)


def mvmo_terms(g: SignedGraph, ps: Membership, pt: Optional[Membership],
               op: EditOperation, u: int) -> MvmoTerms:
    """Mover-restricted optimality margins of mover ``u``; unknown targets
    contribute zero."""
    if u not in op.moving:
        raise InputError(f"vertex {u} is not moving")
    if pt is not None:
        op = EditOperation.from_memberships(ps, pt)
        if u not in op.moving:
            raise InputError(f"vertex {u} does not move between ps and pt")
    signs = _pair_sign_map(g, op.moving)
    i = op.moving.index(u)
    gl, gr = _gamma(signs, op.sources, op.targets, i)
    return MvmoTerms(gl, gr)


def is_min_edit(ps: Membership, pt_partial, op: EditOperation) -> bool:
    """False when the module-counting conditions prove a cheaper edit reaches
    the same partition; untestable (unknown-target) movers pass."""
    targets = op.targets if pt_partial is None else tuple(
        pt_partial[u] for u in op.moving)
    sizes = [0] * ps.n_modules
    for lab in ps.labels:
        sizes[lab] += 1
    return not _nonmin_detected(sizes, ps.n_modules, op.sources, targets)


def int_atomic(g: SignedGraph, ps: Membership, moving: Iterable[int]) -> bool:
    """Source-side atomicity: movers form one connected piece of the graph
    and no zero-sum co-source tie is the only thing holding them together."""
    movers = tuple(sorted(moving))
    signs = _pair_sign_map(g, movers)
    k = len(movers)
    if not _pairs_connected(k, {(i, j) for i in range(k) for j in range(i + 1, k)
                                if _sign(signs, i, j) != 0}):
        return False
    sources = tuple(ps[u] for u in movers)
    return not _spurious_split(len(movers), signs, sources)


def int_mvmo(g: SignedGraph, ps: Membership, moving: Iterable[int]) -> bool:
    """Source-side sign screen for 2 or 3 movers: true iff some relational
    move pattern is admissible given their sources and mutual edge signs."""
    movers = tuple(sorted(moving))
    if not 2 <= len(movers) <= 3:
        raise InputError("source-side sign screen supports 2 or 3 movers")
    sources = tuple(ps[u] for u in movers)
    k = len(movers)
    vec = tuple(g.sign(movers[i], movers[j])
                for i in range(k) for j in range(i + 1, k))
    return movers_admissible(sources, vec)


def ext_atomic(g: SignedGraph, ps: Membership, pt_partial,
               op: EditOperation) -> bool:
    """Target-aware atomicity screen: min-edit counting conditions, no
    imbalance-preserving strict sub-move among assigned movers, no target-side
    zero-sum spurious tie, and the interaction graph can still be connected."""
    targets = op.targets if pt_partial is None else tuple(
        pt_partial[u] for u in op.moving)
    if not is_min_edit(ps, None, EditOperation(op.moving, op.sources, targets)):
        return False
    signs = _pair_sign_map(g, op.moving)
    if not _potential_interaction_connected(signs, op.sources, targets):
        return False
    if _spurious_split(len(op.moving), signs, targets):
        return False
    base = imbalance(g, ps)
    known_positions = [i for i, t in enumerate(targets) if t is not None]
    return not _has_equal_sub_edit(g, ps.labels, base, op.moving, targets,
                                   known_positions, strict_in=len(op.moving))


def ext_mvmo(g: SignedGraph, ps: Membership, pt_partial,
             op: EditOperation) -> bool:
    """Margin screen for moves between optima: every mover whose margin is
    already determined (or boundable) must reach the unweighted margin."""
    if len(op.moving) < 2:
        raise InputError("margin screen needs at least 2 movers")
    targets = op.targets if pt_partial is None else tuple(
        pt_partial[u] for u in op.moving)
    signs = _pair_sign_map(g, op.moving)
    return _margins_ok(signs, op.sources, targets)


# ---------------------------------------------------------------------------
# CoNS
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PruningConfig:
    """Independent toggles for the candidate-elimination rules."""

    int_atomic: bool = True
    int_mvmo: bool = True
    min_edit: bool = True
    ext_atomic: bool = True
    ext_mvmo: bool = True

    @classmethod
    def all(cls) -> "PruningConfig":
        return cls()

    @classmethod
    def none(cls) -> "PruningConfig":
        return cls(False, False, False, False, False)

    @classmethod
    def without_mvmo(cls) -> "PruningConfig":
        return cls(int_mvmo=False, ext_mvmo=False)

    @classmethod
    def without_atomic(cls) -> "PruningConfig":
        return cls(int_atomic=False, ext_atomic=False)


@dataclass
class ConsStats:
    """Work counters of one or more `cons` calls."""

    mover_sets: int = 0
    assignments: int = 0
    couplings: int = 0
    candidates: int = 0
    accepted: int = 0
    duplicates: int = 0
    rejected_imbalance: int = 0
    rejected_nonmin: int = 0
    rejected_decomposable: int = 0
    pruned_int_atomic: int = 0
    pruned_int_mvmo: int = 0
    pruned_min_edit: int = 0
    pruned_ext_atomic: int = 0
    pruned_ext_mvmo: int = 0

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _rgs_partitions(k: int):
    """All set partitions of range(k) as restricted-growth group-id tuples."""
    gids = [0] * k

    def rec(i: int, maxg: int):
        if i == k:
            yield tuple(gids)
            return
        for gid in range(maxg + 2):
            gids[i] = gid
            yield from rec(i + 1, max(maxg, gid))

    # the first element is always group 0, so recursion starts at index 1
    if k == 0:
        yield ()
    else:
        yield from rec(1, 0)


def _group_label_choices(t_rem: Sequence[int], b: int, fresh_base: int):
    """Injective label tuples for ``b`` groups over remaining modules plus
    fresh modules; fresh labels appear in first-use order."""
    for fresh_count in range(0, b + 1):
        keep = b - fresh_count
        if keep > len(t_rem):
            continue
        for fresh_positions in combinations(range(b), fresh_count):
            fp = set(fresh_positions)
            rem_slots = [i for i in range(b) if i not in fp]
            for rem_labels in permutations(t_rem, keep):
                out: list[int] = [0] * b
                nxt = fresh_base
                ri = 0
                for i in range(b):
                    if i in fp:
                        out[i] = nxt
                        nxt += 1
                    else:
                        out[i] = rem_labels[ri]
                        ri += 1
                yield tuple(out)


def cons(g: SignedGraph, ps: Membership, r: int,
         pruning: PruningConfig | None = None,
         stats: ConsStats | None = None) -> set[Membership]:
    """All equal-imbalance partitions at atomic min-``r``-edit distance from
    the optimal partition ``ps`` (canonical, deduplicated).

    The caller guarantees that ``ps`` is optimal; the margin-based pruning
    rules are only valid under that assumption.
    """
    if r < 1:
        raise InputError(f"edit cost must be >= 1, got {r}")
    if r >= g.n:
        raise InputError(f"edit cost {r} must be smaller than vertex count {g.n}")
    if len(ps) != g.n:
        raise InputError("membership length != vertex count")
    if pruning is None:
        pruning = PruningConfig.all()
    if stats is None:
        stats = ConsStats()

    labels = ps.labels
    n_modules = ps.n_modules
    base = imbalance_labels(g, labels)
    module_size = [0] * n_modules
    for lab in labels:
        module_size[lab] += 1

    results: set[tuple[int, ...]] = set()
    out: set[Membership] = set()

    def finalize(movers, targets):
        stats.candidates += 1
        if edit_imbalance(g, labels, base, movers, targets) != base:
            stats.rejected_imbalance += 1
            return
        pt = list(labels)
        for u, t in zip(movers, targets):
            pt[u] = t
        if edit_distance(labels, pt) != r:
            stats.rejected_nonmin += 1
            return
        if _has_equal_sub_edit(g, labels, base, movers, targets,
                               range(r), strict_in=r):
            stats.rejected_decomposable += 1
            return
        key = canonical_labels(pt)
        if key in results:
            stats.duplicates += 1
            return
        results.add(key)
        stats.accepted += 1
        out.add(Membership(key))

    for movers in combinations(range(g.n), r):
        stats.mover_sets += 1
        sources = tuple(labels[u] for u in movers)
        signs = _pair_sign_map(g, movers)

        if pruning.int_atomic:
            k = r
            edge_pairs = {(i, j) for i in range(k) for j in range(i + 1, k)
                          if _sign(signs, i, j) != 0}
            if not _pairs_connected(k, edge_pairs) or \
                    _spurious_split(r, signs, sources):
                stats.pruned_int_atomic += 1
                continue
        if pruning.int_mvmo and 2 <= r <= 3:
            vec = tuple(_sign(signs, i, j)
                        for i in range(r) for j in range(i + 1, r))
            if not movers_admissible(sources, vec):
                stats.pruned_int_mvmo += 1
                continue

        t0 = sorted(set(sources))
        t0_set = set(t0)
        per_position = [[t for t in t0 if t != sources[i]] + [UNKNOWN]
                        for i in range(r)]

        for assignment in product(*per_position):
            stats.assignments += 1
            targets = tuple(assignment)

            if pruning.min_edit and _nonmin_detected(module_size, n_modules,
                                                     sources, targets):
                stats.pruned_min_edit += 1
                continue
            if pruning.ext_mvmo and r >= 2 and not _margins_ok(signs, sources, targets):
                stats.pruned_ext_mvmo += 1
                continue
            unknown_positions = [i for i in range(r) if targets[i] is None]
            if pruning.ext_atomic:
                if not _potential_interaction_connected(signs, sources, targets):
                    stats.pruned_ext_atomic += 1
                    continue
                known_positions = [i for i in range(r) if targets[i] is not None]
                if _spurious_split(r, signs, targets):
                    stats.pruned_ext_atomic += 1
                    continue
                if _has_equal_sub_edit(g, labels, base, movers, targets,
                                       known_positions, strict_in=r):
                    stats.pruned_ext_atomic += 1
                    continue

            if not unknown_positions:
                finalize(movers, targets)
                continue

            t_rem = [lab for lab in range(n_modules) if lab not in t0_set]
            for grouping in _rgs_partitions(len(unknown_positions)):
                stats.couplings += 1
                b = max(grouping) + 1
                # group pseudo-labels behave exactly like the final labels
                # for mover-to-mover relations
                pseudo = list(targets)
                for pos, gid in zip(unknown_positions, grouping):
                    pseudo[pos] = n_modules + gid
                pseudo = tuple(pseudo)

                if pruning.ext_mvmo and r >= 2 and not _margins_ok(signs, sources, pseudo):
                    stats.pruned_ext_mvmo += 1
                    continue
                if pruning.ext_atomic:
                    pairs = _interaction_pairs(signs, sources, pseudo)
                    if not _pairs_connected(r, pairs):
                        stats.pruned_ext_atomic += 1
                        continue
                    if _spurious_split(r, signs, pseudo):
                        stats.pruned_ext_atomic += 1
                        continue

                for choice in _group_label_choices(t_rem, b, n_modules):
                    final = list(targets)
                    for pos, gid in zip(unknown_positions, grouping):
                        final[pos] = choice[gid]
                    finalize(movers, tuple(final))

    return out
