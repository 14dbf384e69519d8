"""Membership vectors, canonical form, imbalance, and move deltas.

A partition of the vertex set is represented by a module-label vector of
length ``n``.  The canonical form is the restricted-growth relabeling:
scanning labels left to right, the first occurrence of each module gets the
smallest unused integer.  All public operations are pure; ``Membership``
values are immutable, so concurrent readers are safe.

Hot loops (neighborhood search, solvers) work on plain label tuples via the
``*_labels`` helpers and only wrap results into :class:`Membership`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .graph import SignedGraph


def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    """Restricted-growth relabeling of an arbitrary label sequence."""
    mapping: dict[int, int] = {}
    out = []
    for lab in labels:
        mapped = mapping.get(lab)
        if mapped is None:
            mapped = len(mapping)
            mapping[lab] = mapped
        out.append(mapped)
    return tuple(out)


def imbalance_labels(g: SignedGraph, labels: Sequence[int]) -> int:
    """Frustrated-edge count of a raw label vector (no validation)."""
    total = 0
    for u, v, s in g.edges:
        if s > 0:
            if labels[u] != labels[v]:
                total += 1
        elif labels[u] == labels[v]:
            total += 1
    return total


class Membership:
    """Canonical-formable module-label vector of length ``n``.

    Invariants enforced at construction: labels are ``0..l-1`` with every
    value present (no empty modules).  Vectors that additionally satisfy the
    restricted-growth property are *canonical*; :meth:`canonical` returns the
    canonical representative of the same partition.
    """

    __slots__ = ("labels", "n_modules", "_hash")

    def __init__(self, labels: Iterable[int]):
        labs = tuple(int(x) for x in labels)
        if not labs:
            raise InputError("membership vector must be non-empty")
        lmax = max(labs)
        if min(labs) < 0:
            raise InputError("negative module label")
        used = set(labs)
        if len(used) != lmax + 1:
            missing = next(i for i in range(lmax + 1) if i not in used)
            raise InputError(f"empty module label {missing}")
        self.labels = labs
        self.n_modules = lmax + 1
        self._hash = hash(labs)

    @property
    def n(self) -> int:
        return len(self.labels)

    def __getitem__(self, u: int) -> int:
        return self.labels[u]

    def __iter__(self):
        return iter(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other) -> bool:
        if isinstance(other, Membership):
            return self.labels == other.labels
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self) -> str:
        return f"Membership({list(self.labels)})"

    def is_canonical(self) -> bool:
        return self.labels == canonical_labels(self.labels)

    def canonical(self) -> "Membership":
        if self.is_canonical():
            return self
        return Membership(canonical_labels(self.labels))

    def modules(self) -> list[list[int]]:
        """Members of each module, indexed by label."""
        mods: list[list[int]] = [[] for _ in range(self.n_modules)]
        for u, lab in enumerate(self.labels):
            mods[lab].append(u)
        return mods


def canonicalize(p) -> Membership:
    """Canonical restricted-growth representative of the same partition.

    Accepts a :class:`Membership` or any raw label sequence (labels need not
    be contiguous; only the grouping matters).
    """
    if isinstance(p, Membership):
        return p.canonical()
    return Membership(canonical_labels(tuple(int(x) for x in p)))


def _check_lengths(g: SignedGraph, p: Membership) -> None:
    if len(p) != g.n:
        raise InputError(f"membership length {len(p)} != vertex count {g.n}")


def imbalance(g: SignedGraph, p: Membership) -> int:
    """Number of frustrated edges: positive edges cut plus negative edges kept
    inside a module."""
    _check_lengths(g, p)
    return imbalance_labels(g, p.labels)


@dataclass(frozen=True)
class FrustrationReport:
    """Imbalance value together with the explicit frustrated edges."""

    imbalance: int
    frustrated_edges: tuple[tuple[int, int, int], ...]


def frustration_report(g: SignedGraph, p: Membership) -> FrustrationReport:
    """Imbalance plus the list of edges causing it."""
    _check_lengths(g, p)
    bad = []
    for u, v, s in g.edges:
        same = p.labels[u] == p.labels[v]
        if (s > 0 and not same) or (s < 0 and same):
            bad.append((u, v, s))
    return FrustrationReport(len(bad), tuple(bad))


def move_delta(g: SignedGraph, p: Membership, u: int, target: int) -> int:
    """Imbalance change of moving ``u`` to module ``target``.

    ``target == p.n_modules`` opens a new singleton module.  Computed from
    u's incident edges only, in O(deg(u)).
    """
    _check_lengths(g, p)
    if not 0 <= u < g.n:
        raise InputError(f"vertex {u} out of range")
    src = p.labels[u]
    if target == src:
        raise InputError("move target equals current module")
    if not 0 <= target <= p.n_modules:
        raise InputError(f"target label {target} out of range (max new label {p.n_modules})")
    # Moving u turns its frustrated/satisfied incident edges around:
    # delta = Omega(u, old module) - Omega(u, target module).
    delta = 0
    for v, s in g.neighbors(u):
        lab = p.labels[v]
        if lab == src:
            delta += s
        if lab == target:
            delta -= s
    return delta


def move_delta_labels(g: SignedGraph, labels: Sequence[int], u: int, target: int) -> int:
    """`move_delta` on a raw label vector, without validation."""
    src = labels[u]
    delta = 0
    for v, s in g.neighbors(u):
        lab = labels[v]
        if lab == src:
            delta += s
        if lab == target:
            delta -= s
    return delta


def apply_move(p: Membership, u: int, target: int) -> Membership:
    """Partition after moving ``u`` to ``target`` (canonicalized)."""
    labs = list(p.labels)
    labs[u] = target
    return Membership(canonical_labels(labs))


def _edge_frustrated(sign: int, same: bool) -> int:
    return 1 if ((sign > 0 and not same) or (sign < 0 and same)) else 0


def edit_imbalance(g: SignedGraph, labels: Sequence[int], base_imbalance: int,
                   movers: Sequence[int], targets: Sequence[int]) -> int:
    """Imbalance after relocating ``movers[i]`` to ``targets[i]``.

    Cost O(sum deg(movers) + |movers|^2): per-mover deltas against the
    unmoved partition plus pairwise corrections for edges between movers,
    instead of a full O(m) recount.
    """
    moved = {u: t for u, t in zip(movers, targets)}
    total = base_imbalance
    for u, t in moved.items():
        src = labels[u]
        for v, s in g.neighbors(u):
            lab = labels[v]
            if lab == src:
                total += s
            if lab == t:
                total -= s
    # Each mover-mover edge was counted twice above, both times against the
    # other endpoint's *source* module; replace by its true transition.
    mv = list(moved.items())
    for i in range(len(mv)):
        u, tu = mv[i]
        su = labels[u]
        for j in range(i + 1, len(mv)):
            v, tv = mv[j]
            s = g.sign(u, v)
            if s == 0:
                continue
            sv = labels[v]
            before = _edge_frustrated(s, su == sv)
            after = _edge_frustrated(s, tu == tv)
            # solo-delta view already applied (f(tu,sv)-f(su,sv)) + (f(su,tv)-f(su,sv))
            counted = (_edge_frustrated(s, tu == sv) - before) + (_edge_frustrated(s, su == tv) - before)
            total += (after - before) - counted
    return total


class SolutionSet:
    """Deduplicated set of canonical optimal membership vectors sharing one
    imbalance value."""

    __slots__ = ("istar", "_members")

    def __init__(self, istar: int, members: Iterable[Membership] = ()):
        self.istar = istar
        self._members: set[tuple[int, ...]] = set()
        for p in members:
            self.add(p)

    def add(self, p: Membership) -> bool:
        """Insert the canonical form of ``p``; returns False on duplicate."""
        key = canonical_labels(p.labels)
        if key in self._members:
            return False
        self._members.add(key)
        return True

    def add_labels(self, labels: Sequence[int]) -> bool:
        key = canonical_labels(labels)
        if key in self._members:
            return False
        self._members.add(key)
        return True

    def __contains__(self, p) -> bool:
        labs = p.labels if isinstance(p, Membership) else tuple(p)
        return canonical_labels(labs) in self._members

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self):
        return (Membership(labs) for labs in sorted(self._members))

    def label_tuples(self) -> set[tuple[int, ...]]:
        return set(self._members)

    def sorted_tuples(self) -> list[tuple[int, ...]]:
        return sorted(self._members)

    def __eq__(self, other) -> bool:
        if isinstance(other, SolutionSet):
            return self.istar == other.istar and self._members == other._members
        return NotImplemented

    def __repr__(self) -> str:
        return f"SolutionSet(istar={self.istar}, size={len(self._members)})"
