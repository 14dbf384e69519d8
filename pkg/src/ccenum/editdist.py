"""Edit distance between membership vectors via label alignment.

The distance between two partitions is the smallest number of vertices that
must change module to turn one into the other.  It is found by aligning the
module labels of the two vectors: build the confusion matrix, solve the
maximum-overlap injective assignment between label sets, and count the
vertices whose aligned labels still differ.

The assignment is solved with scipy's exact rectangular solver.  Among
equally good alignments we return the lexicographically smallest map
(smallest target label for the smallest source label, decided by sequential
re-solves); the distance itself is tie-independent, only the identity of the
moving set depends on the choice, so it is fixed for reproducibility.
"""

from __future__ import annotations

from dataclasses import dataclass
import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InputError
from .partition import Membership, canonical_labels


def _labels_of(p) -> tuple[int, ...]:
    if isinstance(p, Membership):
        return p.labels
    return tuple(int(x) for x in p)


def confusion(ps, pt) -> np.ndarray:
    """Confusion matrix: entry (i, j) counts vertices in source module i and
    target module j."""
    a = _labels_of(ps)
    b = _labels_of(pt)
    if len(a) != len(b):
        raise InputError(f"membership length mismatch: {len(a)} vs {len(b)}")
    la = max(a) + 1
    lb = max(b) + 1
    cm = np.zeros((la, lb), dtype=np.int64)
    for x, y in zip(a, b):
        cm[x, y] += 1
    return cm


def _max_assignment_score(cm: np.ndarray) -> int:
    """Maximum total overlap of an injective row -> column assignment."""
    if cm.shape[0] == 0 or cm.shape[1] == 0:
        return 0
    rows, cols = linear_sum_assignment(cm, maximize=True)
    return int(cm[rows, cols].sum())


def _lex_smallest_assignment(cm: np.ndarray) -> list[int]:
    """Maximum-score injective assignment, lexicographically smallest.

    Fixes rows in order, trying candidate columns ascending and keeping the
    first one that still allows a maximum-score completion.
    """
    n_rows, n_cols = cm.shape
    best = _max_assignment_score(cm)
    available = list(range(n_cols))
    chosen: list[int] = []
    achieved = 0
    for i in range(n_rows):
        rest_rows = np.arange(i + 1, n_rows)
        for c in available:
            rest_cols = [x for x in available if x != c]
            tail = _max_assignment_score(cm[np.ix_(rest_rows, rest_cols)]) if len(rest_rows) else 0
            if achieved + cm[i, c] + tail == best:
                chosen.append(c)
                available.remove(c)
                achieved += int(cm[i, c])
                break
        else:  # pragma: no cover - a maximizer always exists
            raise AssertionError("no completion reaches the optimal score")
    return chosen


@dataclass(frozen=True)
class Alignment:
    """Maximum-overlap label alignment between two membership vectors.

    ``mapping[i]`` is the target label matched with source label ``i``; the
    map is injective, and entries are ``None`` only when the source has more
    labels than the target (the alignment is computed on the swapped pair
    then, since the distance is symmetric).  ``aligned_target`` is the target
    vector rewritten in the source label space: matched target labels take
    their source label, unmatched ones are renumbered ``l_s, l_s + 1, ...``
    in ascending original-label order.
    """

    score: int
    mapping: tuple[int | None, ...]
    aligned_target: tuple[int, ...]
    swapped: bool


def align(ps, pt) -> Alignment:
    """Align the module labels of ``pt`` onto those of ``ps``."""
    a = _labels_of(ps)
    b = _labels_of(pt)
    if len(a) != len(b):
        raise InputError(f"membership length mismatch: {len(a)} vs {len(b)}")
    la = max(a) + 1
    lb = max(b) + 1
    swapped = la > lb

    # target label -> source label for the matched labels
    if not swapped:
        cm = confusion(a, b)
        row_to_col = _lex_smallest_assignment(cm)
        score = int(sum(cm[i, c] for i, c in enumerate(row_to_col)))
        target_to_source = {c: i for i, c in enumerate(row_to_col)}
    else:
        cm = confusion(b, a)  # rows: pt labels, cols: ps labels
        row_to_col = _lex_smallest_assignment(cm)
        score = int(sum(cm[i, c] for i, c in enumerate(row_to_col)))
        target_to_source = {t: row_to_col[t] for t in range(lb)}

    source_to_target: list[int | None] = [None] * la
    for t, s in target_to_source.items():
        source_to_target[s] = t

    relabel = dict(target_to_source)
    nxt = la
    for t in range(lb):
        if t not in relabel:
            relabel[t] = nxt
            nxt += 1
    aligned = tuple(relabel[x] for x in b)
    return Alignment(score=score, mapping=tuple(source_to_target),
                     aligned_target=aligned, swapped=swapped)


def edit_distance(ps, pt) -> int:
    """Minimum number of vertices whose module differs under the best label
    alignment; zero iff both vectors describe the same partition."""
    a = _labels_of(ps)
    b = _labels_of(pt)
    if len(a) != len(b):
        raise InputError(f"membership length mismatch: {len(a)} vs {len(b)}")
    cm = confusion(canonical_labels(a), canonical_labels(b))
    if cm.shape[0] > cm.shape[1]:
        cm = cm.T
    return len(a) - _max_assignment_score(cm)


def moving_set(ps, pt_aligned) -> frozenset[int]:
    """Vertices whose labels differ; expects ``pt_aligned`` already relabeled
    by :func:`align` against ``ps``."""
    a = _labels_of(ps)
    b = _labels_of(pt_aligned)
    if len(a) != len(b):
        raise InputError(f"membership length mismatch: {len(a)} vs {len(b)}")
    return frozenset(u for u in range(len(a)) if a[u] != b[u])
