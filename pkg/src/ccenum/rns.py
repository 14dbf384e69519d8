"""Recurrent neighborhood search: the closure of the neighborhood search.

Starting from one optimal partition, repeatedly applies the complete
neighborhood search with edit costs ``1..r_max`` to every newly discovered
partition, with memory-based duplicate removal, until no new partition
appears.  The discovered set is a fixed point and does not depend on the
processing order; the breadth-first order here only shapes the statistics.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import InputError
from .graph import SignedGraph
from .neighborhood import ConsStats, PruningConfig, cons
from .partition import Membership, SolutionSet, imbalance


@dataclass
class RnsStats:
    """Counters of one recurrent-search run."""

    cons_invocations: int = 0
    duplicates_suppressed: int = 0
    discovered: int = 0
    per_level: list[int] = field(default_factory=list)
    cons: ConsStats = field(default_factory=ConsStats)
    capped: bool = False


@dataclass
class RnsResult:
    """Discovered set (including the seed) plus run statistics."""

    discovered: SolutionSet
    stats: RnsStats


def rns(g: SignedGraph, p: Membership, r_max: int,
        pruning: PruningConfig | None = None,
        discovered: SolutionSet | None = None,
        max_solutions: Optional[int] = None,
        deadline: Optional[float] = None) -> RnsResult:
    """All optimal partitions reachable from ``p`` through chains of atomic
    min-edits of cost at most ``r_max``.

    ``p`` must be optimal (caller's guarantee).  When ``discovered`` is given,
    it is extended in place and doubles as the duplicate memory, so repeated
    calls share one solution set.  ``max_solutions`` and ``deadline``
    (a ``time.monotonic()`` instant) stop the search cleanly between
    neighborhood calls; a tripped cap is flagged in the stats and never
    corrupts the set.
    """
    if r_max < 1:
        raise InputError(f"r_max must be >= 1, got {r_max}")
    if pruning is None:
        pruning = PruningConfig.all()
    stats = RnsStats()
    if discovered is None:
        discovered = SolutionSet(imbalance(g, p))
    seed = p.canonical()
    discovered.add(seed)
    stats.per_level.append(1)

    def capped() -> bool:
        if max_solutions is not None and len(discovered) >= max_solutions:
            return True
        return deadline is not None and time.monotonic() > deadline

    level = [seed]
    while level and not stats.capped:
        nxt: list[Membership] = []
        for ps in level:
            for r in range(1, min(r_max + 1, g.n)):
                if capped():
                    stats.capped = True
                    break
                stats.cons_invocations += 1
                for pt in cons(g, ps, r, pruning=pruning, stats=stats.cons):
                    if discovered.add(pt):
                        nxt.append(pt)
                    else:
                        stats.duplicates_suppressed += 1
            if stats.capped:
                break
        if nxt:
            stats.per_level.append(len(nxt))
        level = nxt
    stats.discovered = len(discovered)
    return RnsResult(discovered, stats)
