"""Top-level enumeration of the complete optimal solution space.

``enum_cc`` solves for one optimal partition, then alternates two phases
until the space is exhausted or a cap trips:

1. recurrent neighborhood search around the current partition, merging every
   discovery into the shared solution set;
2. a jump: an exact search for an optimal partition outside the set.

Completeness rests on the jump alone; the neighborhood phase only
accelerates discovery (even an over-aggressive neighborhood would be
corrected by the next jump).  The sequential baseline (jumps only) and a
neighborhood-only mode are available for benchmarking.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import EnumTimeout, InputError, SolveTimeout
from .graph import SignedGraph
from .neighborhood import ConsStats, PruningConfig
from .partition import SolutionSet
from .rns import rns
from .solver import SolveBudget, UNLIMITED, jump, solve_first

MODES = ("enumcc", "sequential", "rns-only")
DEFAULT_MAX_SOLUTIONS = 50_000


@dataclass(frozen=True)
class EnumLimits:
    """Run caps: solution count, wall clock, and per-solver-call budget."""

    max_solutions: int = DEFAULT_MAX_SOLUTIONS
    max_seconds: Optional[float] = None
    solver_budget: SolveBudget = UNLIMITED


@dataclass
class RunStats:
    """Execution record of one enumeration run."""

    n_jump: int = 0
    n_rns: int = 0
    solutions_found: int = 0
    istar: Optional[int] = None
    termination: str = "exhausted"
    solve_seconds: float = 0.0
    rns_seconds: float = 0.0
    jump_seconds: float = 0.0
    duplicates_suppressed: int = 0
    cons: ConsStats = field(default_factory=ConsStats)

    def as_dict(self) -> dict:
        d = dict(self.__dict__)
        d["cons"] = self.cons.as_dict()
        return d


def enum_cc(g: SignedGraph, r_max: int = 3,
            limits: EnumLimits | None = None,
            mode: str = "enumcc",
            pruning: PruningConfig | None = None) -> tuple[SolutionSet, RunStats]:
    """Enumerate optimal partitions of ``g``.

    With termination reason ``exhausted`` the returned set is the complete
    optimum space; under a tripped cap it is a subset.  ``r_max`` shapes only
    the work split between neighborhood search and jumps, never the final
    set.  A solver budget exhaustion raises :class:`EnumTimeout` carrying the
    partial set and stats.
    """
    if r_max < 1:
        raise InputError(f"r_max must be >= 1, got {r_max}")
    if mode not in MODES:
        raise InputError(f"unknown mode {mode!r}, expected one of {MODES}")
    if limits is None:
        limits = EnumLimits()
    if pruning is None:
        pruning = PruningConfig.all()

    stats = RunStats()
    t_start = time.monotonic()
    deadline = (t_start + limits.max_seconds) if limits.max_seconds is not None else None

    t0 = time.monotonic()
    try:
        current, istar = solve_first(g, limits.solver_budget)
    except SolveTimeout as exc:
        raise EnumTimeout("initial solve exceeded its budget",
                          solutions=None, stats=stats) from exc
    stats.solve_seconds = time.monotonic() - t0
    stats.istar = istar

    solutions = SolutionSet(istar)
    solutions.add(current)

    def cap_reason() -> Optional[str]:
        if len(solutions) >= limits.max_solutions:
            return "solution_cap"
        if deadline is not None and time.monotonic() > deadline:
            return "time_cap"
        return None

    while True:
        if mode != "sequential":
            t0 = time.monotonic()
            stats.n_rns += 1
            result = rns(g, current, r_max, pruning=pruning,
                         discovered=solutions,
                         max_solutions=limits.max_solutions,
                         deadline=deadline)
            stats.rns_seconds += time.monotonic() - t0
            stats.duplicates_suppressed += result.stats.duplicates_suppressed
            _merge_cons(stats.cons, result.stats.cons)

        reason = cap_reason()
        if reason:
            stats.termination = reason
            break
        if mode == "rns-only":
            stats.termination = "rns_fixed_point"
            break

        t0 = time.monotonic()
        stats.n_jump += 1
        try:
            nxt = jump(g, solutions, istar, limits.solver_budget)
        except SolveTimeout as exc:
            stats.jump_seconds += time.monotonic() - t0
            stats.solutions_found = len(solutions)
            raise EnumTimeout("jump exceeded its budget",
                              solutions=solutions, stats=stats) from exc
        stats.jump_seconds += time.monotonic() - t0
        if nxt is None:
            stats.termination = "exhausted"
            break
        solutions.add(nxt)
        current = nxt
        reason = cap_reason()
        if reason:
            stats.termination = reason
            break

    stats.solutions_found = len(solutions)
    return solutions, stats


def _merge_cons(into: ConsStats, other: ConsStats) -> None:
    for key, val in other.__dict__.items():
        setattr(into, key, getattr(into, key) + val)
