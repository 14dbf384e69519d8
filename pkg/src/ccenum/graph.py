"""Signed-graph data model.

A :class:`SignedGraph` is an undirected graph on vertices ``0..n-1`` whose
edges carry sign ``+1`` or ``-1``.  Instances are immutable after
construction and safe for concurrent shared reads.  Sign lookup is O(1):
a dense ``int8`` matrix backs graphs up to ``DENSE_LIMIT`` vertices, a
hash-indexed pair map backs larger ones; both give identical observable
behavior.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import InputError

# Above this order the adjacency falls back to a hash map (dense n*n bytes
# would cost ~4 MiB at 2048 already).
DENSE_LIMIT = 2048


class SignedGraph:
    """Undirected signed graph with O(1) sign lookup.

    Args:
        n: number of vertices; vertex ids are ``0..n-1``.
        edges: iterable of ``(u, v, sign)`` with ``u != v`` and sign in
            ``{-1, +1}``.  Each unordered pair may appear at most once.
        dense_limit: adjacency-backend switch point, overridable for tests.
    """

    __slots__ = (
        "n", "edges", "m", "m_pos", "m_neg",
        "_adj", "_pair_signs", "_neighbors", "_edge_u", "_edge_v", "_edge_s",
    )

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]],
                 dense_limit: int = DENSE_LIMIT):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        self.n = n
        norm: list[tuple[int, int, int]] = []
        seen: set[tuple[int, int]] = set()
        for u, v, s in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop on vertex {u}")
            if s not in (-1, 1):
                raise InputError(f"edge ({u},{v}) has sign {s}, expected -1 or +1")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InputError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            norm.append((u, v, s))
        norm.sort()
        self.edges: tuple[tuple[int, int, int], ...] = tuple(norm)
        self.m = len(norm)
        self.m_pos = sum(1 for _, _, s in norm if s > 0)
        self.m_neg = self.m - self.m_pos

        self._edge_u = np.fromiter((e[0] for e in norm), dtype=np.int64, count=self.m)
        self._edge_v = np.fromiter((e[1] for e in norm), dtype=np.int64, count=self.m)
        self._edge_s = np.fromiter((e[2] for e in norm), dtype=np.int64, count=self.m)

        if n <= dense_limit:
            adj = np.zeros((n, n), dtype=np.int8)
            for u, v, s in norm:
                adj[u, v] = s
                adj[v, u] = s
            self._adj = adj
            self._pair_signs = None
        else:
            self._adj = None
            self._pair_signs = {(u, v): s for u, v, s in norm}

        neighbors: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for u, v, s in norm:
            neighbors[u].append((v, s))
            neighbors[v].append((u, s))
        self._neighbors = tuple(tuple(lst) for lst in neighbors)

    def sign(self, u: int, v: int) -> int:
        """Sign of edge (u, v): +1, -1, or 0 when absent (incl. u == v)."""
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise InputError(f"vertex pair ({u},{v}) out of range for n={self.n}")
        if u == v:
            return 0
        if self._adj is not None:
            return int(self._adj[u, v])
        if u > v:
            u, v = v, u
        return self._pair_signs.get((u, v), 0)

    def neighbors(self, u: int) -> tuple[tuple[int, int], ...]:
        """Tuple of (neighbor, sign) pairs of vertex u."""
        if not 0 <= u < self.n:
            raise InputError(f"vertex {u} out of range for n={self.n}")
        return self._neighbors[u]

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))

    def __eq__(self, other) -> bool:
        return (isinstance(other, SignedGraph)
                and self.n == other.n and self.edges == other.edges)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"SignedGraph(n={self.n}, m={self.m}, m_pos={self.m_pos}, m_neg={self.m_neg})"


def _check_vertex_set(g: SignedGraph, s: Iterable[int]) -> list[int]:
    out = []
    seen = set()
    for u in s:
        if not 0 <= u < g.n:
            raise InputError(f"vertex {u} out of range for n={g.n}")
        if u in seen:
            raise InputError(f"duplicate vertex {u} in vertex set")
        seen.add(u)
        out.append(u)
    return out


def omega(g: SignedGraph, a: Iterable[int], b: Iterable[int]) -> int:
    """Signed sum of edges between vertex sets ``a`` and ``b``.

    Each unordered pair {u, v} with u in ``a``, v in ``b`` and u != v is
    counted once; when ``a`` and ``b`` coincide this is the signed sum of
    the edges internal to the set.
    """
    sa = set(_check_vertex_set(g, a))
    sb = set(_check_vertex_set(g, b))
    total = 0
    counted: set[tuple[int, int]] = set()
    for u in sa:
        for v, s in g.neighbors(u):
            if v in sb:
                key = (u, v) if u < v else (v, u)
                if key not in counted:
                    counted.add(key)
                    total += s
    return total


def induced_subgraph(g: SignedGraph, s: Sequence[int]) -> tuple[SignedGraph, dict[int, int]]:
    """Subgraph induced by ``s``, re-indexed to 0..|s|-1.

    Returns the new graph together with the map from original ids to new ids.
    Vertices are re-indexed in ascending original-id order.
    """
    verts = sorted(_check_vertex_set(g, s))
    index = {u: i for i, u in enumerate(verts)}
    edges = [(index[u], index[v], sgn) for u, v, sgn in g.edges
             if u in index and v in index]
    return SignedGraph(len(verts), edges), index


def positive_graph(g: SignedGraph) -> SignedGraph:
    """Same vertices, positive edges only."""
    return SignedGraph(g.n, [e for e in g.edges if e[2] > 0])


def is_connected(g: SignedGraph, s: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``s``, signs ignored, is connected."""
    verts = _check_vertex_set(g, s)
    if not verts:
        raise InputError("connectivity query on empty vertex set")
    sset = set(verts)
    stack = [verts[0]]
    seen = {verts[0]}
    while stack:
        u = stack.pop()
        for v, _ in g.neighbors(u):
            if v in sset and v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(sset)


def connected_components(g: SignedGraph) -> list[list[int]]:
    """Connected components of g (signs ignored), each sorted, in id order."""
    seen = [False] * g.n
    comps = []
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        comp = [root]
        stack = [root]
        while stack:
            u = stack.pop()
            for v, _ in g.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    stack.append(v)
        comps.append(sorted(comp))
    return comps
