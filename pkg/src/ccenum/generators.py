"""Random signed-network generation and real-network ingestion.

Two synthetic families and one ingestion path:

* dataset 1 — planted-module networks: near-equal modules, edges sampled at
  a target density, signs set to agree with the modules (positive inside,
  negative between) and then a fraction ``q_m`` of them flipped, the same
  proportion inside and between modules.  For incomplete graphs the split of
  sampled pairs between internal and external slots is biased so the
  realized share of negative edges lands near ``q_neg``.
* dataset 2 — starts from the perfectly balanced instance (``q_m = 0``) and
  applies random single-edge perturbations, keeping only those that provably
  leave the planted partition optimal.
* real networks — signed edge lists, restricted to the largest connected
  component of the positive subgraph and re-indexed.

All randomness flows from ``random.Random`` (Mersenne Twister) seeded from
the config, so instances are reproducible byte for byte across platforms.
"""

from __future__ import annotations

import csv as _csv
import math
import random
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import GenerationError, InputError, ParseError
from .graph import SignedGraph, positive_graph, connected_components
from .oracle import OracleLimit, DEFAULT_LIMIT, oracle_optima
from .partition import Membership, imbalance, move_delta


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of one random instance.

    ``q_m`` is the proportion of misplaced (frustrated-by-construction)
    edges; for dataset 2 it is reinterpreted as the target proportion of
    accepted perturbations relative to the edge count.  ``q_neg`` only
    steers incomplete graphs (complete ones have no sampling freedom).
    """

    n: int
    l0: int
    q_m: float = 0.0
    d: float = 1.0
    q_neg: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"n must be >= 1, got {self.n}")
        if not 1 <= self.l0 <= self.n:
            raise InputError(f"l0 must be in [1, n], got {self.l0}")
        if not 0.0 <= self.q_m <= 1.0:
            raise InputError(f"q_m must be in [0, 1], got {self.q_m}")
        if not 0.0 < self.d <= 1.0:
            raise InputError(f"d must be in (0, 1], got {self.d}")
        if not 0.0 <= self.q_neg <= 1.0:
            raise InputError(f"q_neg must be in [0, 1], got {self.q_neg}")


Q_NEG_TOLERANCE = 0.02
_Q_NEG_MIN_N = 20  # below this the pair pools are too small to steer q_neg
_PERTURB_STREAM = 999_983  # offset separating the perturbation RNG stream


def _rng(seed: int, stream: int = 0) -> random.Random:
    # arithmetic child seeds: tuple/str seeding would go through randomized
    # object hashing and break cross-process determinism
    return random.Random(seed * 1_000_003 + stream)


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def planted_membership(n: int, l0: int) -> Membership:
    """Blocks of near-equal size: the first ``n mod l0`` modules get the
    extra vertex."""
    if not 1 <= l0 <= n:
        raise InputError(f"l0 must be in [1, n], got {l0}")
    big = n % l0
    size_hi = -(-n // l0)
    size_lo = n // l0
    labels = []
    for mod in range(l0):
        labels.extend([mod] * (size_hi if mod < big else size_lo))
    return Membership(labels)


def _pair_pools(planted: Membership) -> tuple[list[tuple[int, int]], list[tuple[int, int]]]:
    n = len(planted)
    internal, external = [], []
    for u in range(n):
        for v in range(u + 1, n):
            (internal if planted[u] == planted[v] else external).append((u, v))
    return internal, external


def _split_for_qneg(m: int, n_int: int, n_ext: int, q_m: float, q_neg: float) -> tuple[int, int]:
    """Internal/external sample counts whose expected negative share after
    flipping hits q_neg; clamped to the available pools."""
    if abs(1.0 - 2.0 * q_m) < 1e-9:
        m_ext = m * n_ext / (n_int + n_ext)  # q_neg is 0.5 regardless
    else:
        # negatives = m_ext * (1 - q_m) + m_int * q_m
        m_ext = (q_neg - q_m) * m / (1.0 - 2.0 * q_m)
    lo = max(0, m - n_int)
    hi = min(m, n_ext)
    m_ext_i = min(max(_round_half_up(m_ext), lo), hi)
    return m - m_ext_i, m_ext_i


def gen_dataset1(cfg: GeneratorConfig) -> SignedGraph:
    """Planted-module signed network; deterministic per config."""
    g, _ = _gen_dataset1_with_planted(cfg)
    return g


def _flip_counts(m_int: int, m_ext: int, q_m: float, q_neg: float,
                 complete: bool) -> tuple[int, int]:
    """How many internal/external edges to sign-flip.

    Complete graphs flip proportionally (no negative-share target exists
    there); incomplete graphs allocate the same total across the two pools
    so that the realized negative count lands on ``round(q_neg * m)``.
    """
    m = m_int + m_ext
    k_total = _round_half_up(q_m * m)
    if complete:
        k_int = min(_round_half_up(q_m * m_int), k_total, m_int)
    else:
        neg_target = _round_half_up(q_neg * m)
        # negatives = (m_ext - k_ext) + k_int with k_int + k_ext = k_total
        k_int = _round_half_up((neg_target - m_ext + k_total) / 2.0)
        k_int = min(max(k_int, max(0, k_total - m_ext)), min(k_total, m_int))
    k_ext = k_total - k_int
    return k_int, k_ext


def _gen_dataset1_with_planted(cfg: GeneratorConfig) -> tuple[SignedGraph, Membership]:
    planted = planted_membership(cfg.n, cfg.l0)
    internal, external = _pair_pools(planted)
    n_pairs = len(internal) + len(external)
    m = n_pairs if cfg.d >= 1.0 else _round_half_up(cfg.d * n_pairs)
    if m < 1:
        raise GenerationError(f"density {cfg.d} yields no edges for n={cfg.n}")

    rng = _rng(cfg.seed)
    if cfg.d >= 1.0:
        chosen_int, chosen_ext = list(internal), list(external)
    else:
        m_int, m_ext = _split_for_qneg(m, len(internal), len(external),
                                       cfg.q_m, cfg.q_neg)
        chosen_int = rng.sample(internal, m_int)
        chosen_ext = rng.sample(external, m_ext)

    k_int, k_ext = _flip_counts(len(chosen_int), len(chosen_ext),
                                cfg.q_m, cfg.q_neg, cfg.d >= 1.0)
    flip_int = set(rng.sample(range(len(chosen_int)), k_int))
    flip_ext = set(rng.sample(range(len(chosen_ext)), k_ext))
    edges = []
    neg = 0
    for i, (u, v) in enumerate(chosen_int):
        s = -1 if i in flip_int else 1
        neg += s < 0
        edges.append((u, v, s))
    for i, (u, v) in enumerate(chosen_ext):
        s = 1 if i in flip_ext else -1
        neg += s < 0
        edges.append((u, v, s))

    if cfg.d < 1.0 and cfg.n >= _Q_NEG_MIN_N and abs(neg / m - cfg.q_neg) > Q_NEG_TOLERANCE:
        raise GenerationError(
            f"cannot realize q_neg={cfg.q_neg} within {Q_NEG_TOLERANCE} "
            f"(achievable: {neg / m:.3f}); (d, q_m, q_neg) infeasible")
    return SignedGraph(cfg.n, edges), planted


@dataclass(frozen=True)
class PerturbationStep:
    """One proposed edge perturbation and its verdict."""

    op: str  # "flip" | "remove" | "add"
    edge: tuple[int, int]
    accepted: bool
    reason: str


@dataclass(frozen=True)
class PlantedInstance:
    """Dataset-2 output: graph, its planted optimal partition, and the log of
    perturbation attempts.  ``warning`` flags an exhausted attempt budget."""

    graph: SignedGraph
    planted: Membership
    log: tuple[PerturbationStep, ...]
    warning: bool = False


def _planted_still_optimal(g: SignedGraph, planted: Membership,
                           oracle_limit: OracleLimit) -> tuple[bool, str]:
    """Exact check below the oracle cap; above it, conservative sufficient
    conditions: planted stays single-move optimal and its imbalance stays
    strictly below the smallest single-move margin."""
    if g.n <= oracle_limit.max_n:
        optima = oracle_optima(g, oracle_limit)
        return planted in optima, "oracle"
    margin = None
    for u in range(g.n):
        for target in range(planted.n_modules + 1):
            if target == planted[u]:
                continue
            delta = move_delta(g, planted, u, target)
            if delta < 0:
                return False, "single-move optimality violated"
            margin = delta if margin is None else min(margin, delta)
    ib = imbalance(g, planted)
    if margin is not None and ib >= margin:
        return False, f"imbalance {ib} not below move margin {margin}"
    return True, "conservative"


def gen_dataset2(cfg: GeneratorConfig,
                 perturbations: Optional[int] = None,
                 max_attempts: Optional[int] = None,
                 oracle_limit: OracleLimit = DEFAULT_LIMIT) -> PlantedInstance:
    """Balanced planted instance perturbed without disturbing its optimum.

    Starts from the ``q_m = 0`` instance (planted partition has imbalance 0)
    and proposes single-edge perturbations: sign flips, and for incomplete
    graphs also edge insertions/removals.  A perturbation is kept only if
    the planted partition remains optimal, verified exactly through the
    brute-force oracle for small graphs and through documented conservative
    conditions above the oracle cap.  Stops after ``perturbations`` accepted
    steps (default: ``q_m`` times the edge count) or when ``max_attempts``
    proposals were examined, whichever is first; exhausting the attempt
    budget sets the warning flag.
    """
    base_cfg = GeneratorConfig(cfg.n, cfg.l0, 0.0, cfg.d, cfg.q_neg, cfg.seed)
    g, planted = _gen_dataset1_with_planted(base_cfg)
    target = perturbations if perturbations is not None \
        else _round_half_up(cfg.q_m * g.m)
    budget = max_attempts if max_attempts is not None else max(20 * target, 20)

    rng = _rng(cfg.seed, _PERTURB_STREAM)
    all_pairs = [(u, v) for u in range(cfg.n) for v in range(u + 1, cfg.n)]
    log: list[PerturbationStep] = []
    accepted = 0
    attempts = 0
    while accepted < target and attempts < budget:
        attempts += 1
        edge_signs = {(u, v): s for u, v, s in g.edges}
        if cfg.d >= 1.0:
            op = "flip"
        else:
            op = rng.choice(("flip", "remove", "add"))
        if op in ("flip", "remove"):
            if not g.m:
                continue
            u, v = rng.choice(sorted(edge_signs))
        else:
            absent = [p for p in all_pairs if p not in edge_signs]
            if not absent:
                op = "flip"
                u, v = rng.choice(sorted(edge_signs))
            else:
                u, v = rng.choice(absent)

        new_signs = dict(edge_signs)
        if op == "flip":
            new_signs[(u, v)] = -new_signs[(u, v)]
        elif op == "remove":
            del new_signs[(u, v)]
        else:
            new_signs[(u, v)] = rng.choice((-1, 1))
        candidate = SignedGraph(cfg.n, [(a, b, s) for (a, b), s in new_signs.items()])
        ok, how = _planted_still_optimal(candidate, planted, oracle_limit)
        log.append(PerturbationStep(op, (u, v), ok, how))
        if ok:
            g = candidate
            accepted += 1
    return PlantedInstance(g, planted, tuple(log), warning=accepted < target)


# ---------------------------------------------------------------------------
# File formats
# ---------------------------------------------------------------------------

def write_graph(path, g: SignedGraph, comment: str | None = None) -> None:
    """Text edge-list format: ``n m`` header, then ``u v s`` lines with
    0-based ids, u < v, s in {+1, -1}; LF endings."""
    path = Path(path)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        if comment:
            for line in comment.splitlines():
                fh.write(f"# {line}\n")
        fh.write(f"{g.n} {g.m}\n")
        for u, v, s in g.edges:
            fh.write(f"{u} {v} {'+1' if s > 0 else '-1'}\n")


def read_graph(path) -> SignedGraph:
    """Parse the `write_graph` format; ``#`` starts a comment."""
    path = Path(path)
    header: Optional[tuple[int, int]] = None
    edges = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if header is None:
                if len(parts) != 2:
                    raise ParseError("expected header 'n m'", lineno)
                try:
                    header = (int(parts[0]), int(parts[1]))
                except ValueError:
                    raise ParseError("non-integer header", lineno) from None
                continue
            if len(parts) != 3:
                raise ParseError("expected 'u v s'", lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
                s = _parse_sign(parts[2])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            if u >= v:
                raise ParseError(f"edges must satisfy u < v, got {u} {v}", lineno)
            edges.append((u, v, s))
    if header is None:
        raise ParseError("empty graph file")
    n, m = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, file has {len(edges)}")
    try:
        return SignedGraph(n, edges)
    except InputError as exc:
        raise ParseError(str(exc)) from None


def _parse_sign(token: str) -> int:
    tok = token.strip()
    if tok in ("+1", "1", "+"):
        return 1
    if tok in ("-1", "-"):
        return -1
    raise ValueError(f"unsigned or malformed sign {token!r}")


def write_membership(path, p: Membership) -> None:
    """One line of comma-separated canonical labels."""
    path = Path(path)
    with open(path, "w", newline="\n", encoding="utf-8") as fh:
        fh.write(",".join(str(x) for x in p.canonical().labels) + "\n")


def read_membership(path) -> Membership:
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        line = fh.readline().strip()
    if not line:
        raise ParseError("empty membership file")
    try:
        return Membership(int(tok) for tok in line.split(","))
    except (ValueError, InputError) as exc:
        raise ParseError(f"bad membership line: {exc}") from None


@dataclass(frozen=True)
class IngestResult:
    """Preprocessed real network: graph over the largest positive component,
    the kept original ids by new index, and what was dropped."""

    graph: SignedGraph
    kept_ids: tuple[str, ...]
    dropped_vertices: int
    dropped_edges: int


def ingest_real(path, fmt: str = "auto") -> IngestResult:
    """Read a signed edge list and keep the largest connected component of
    its positive subgraph, re-indexed to contiguous ids.

    Formats: ``edgelist`` (the `write_graph` layout, or bare ``u v s`` lines
    with arbitrary string ids and no header) and ``csv`` with a
    ``source,target,sign`` header; ``auto`` picks by file suffix.
    """
    path = Path(path)
    if fmt == "auto":
        fmt = "csv" if path.suffix.lower() == ".csv" else "edgelist"
    if fmt not in ("edgelist", "csv"):
        raise InputError(f"unknown ingestion format {fmt!r}")
    raw_edges = (_read_csv_edges(path) if fmt == "csv"
                 else _read_edgelist_edges(path))

    ids: dict[str, int] = {}
    for a, b, _ in raw_edges:
        for x in (a, b):
            if x not in ids:
                ids[x] = len(ids)
    n0 = len(ids)
    seen_pairs: dict[tuple[int, int], int] = {}
    for lineno, (a, b, s) in enumerate(raw_edges):
        ia, ib = ids[a], ids[b]
        if ia == ib:
            raise ParseError(f"self-loop on id {a!r}")
        key = (min(ia, ib), max(ia, ib))
        if key in seen_pairs and seen_pairs[key] != s:
            raise ParseError(f"conflicting duplicate edge {a!r}-{b!r}")
        seen_pairs[key] = s
    full = SignedGraph(n0, [(u, v, s) for (u, v), s in seen_pairs.items()])

    comps = connected_components(positive_graph(full))
    comps.sort(key=lambda c: (-len(c), c[0]))
    keep = comps[0]
    keep_set = set(keep)
    index = {u: i for i, u in enumerate(keep)}
    edges = [(index[u], index[v], s) for u, v, s in full.edges
             if u in keep_set and v in keep_set]
    by_old = {v: k for k, v in ids.items()}
    return IngestResult(
        graph=SignedGraph(len(keep), edges),
        kept_ids=tuple(by_old[u] for u in keep),
        dropped_vertices=n0 - len(keep),
        dropped_edges=full.m - len(edges),
    )


def _read_edgelist_edges(path: Path) -> list[tuple[str, str, int]]:
    out = []
    header_skipped = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) == 2 and not header_skipped:
                header_skipped = True  # optional `n m` header
                continue
            if len(parts) != 3:
                raise ParseError("expected 'u v s'", lineno)
            try:
                s = _parse_sign(parts[2])
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
            out.append((parts[0], parts[1], s))
            header_skipped = True
    if not out:
        raise ParseError("no edges found")
    return out


def _read_csv_edges(path: Path) -> list[tuple[str, str, int]]:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = _csv.DictReader(fh)
        if reader.fieldnames is None or \
            [f.strip().lower() for f in reader.fieldnames[:3]] != ["source", "target", "sign"]:
            raise ParseError("CSV must start with header 'source,target,sign'")
        for row in reader:
            try:
                s = _parse_sign(row["sign"])
            except (ValueError, TypeError) as exc:
                raise ParseError(f"bad sign in row {row!r}: {exc}") from None
            out.append((row["source"].strip(), row["target"].strip(), s))
    if not out:
        raise ParseError("no edges found")
    return out
