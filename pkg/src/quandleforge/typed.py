"""Detection of type D subracks.

A rack X is of type D when it has a subrack Y = R ⊔ S with two components
R, S and elements r ∈ R, s ∈ S with r ▷ (s ▷ (r ▷ s)) ≠ s.  Such a Y exists
iff some pair (r, s) violating the identity lies in distinct components of
the subrack it generates: that subrack sits inside any Y containing r and s,
and conversely its two components through r and s already form a valid Y.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .rack import RackTable, _closure0, components, induced_subrack


@dataclass(frozen=True)
class TypeDWitness:
    r: int
    s: int
    subrack: tuple[int, ...]
    component_of_r: tuple[int, ...]
    component_of_s: tuple[int, ...]


def _violates(rows, r: int, s: int) -> bool:
    return rows[r][rows[s][rows[r][s]]] != s


def _component_map(X: RackTable, points: list[int]) -> dict[int, tuple[int, ...]]:
    """Map each 0-based point of the subrack to its component (1-based labels)."""
    sub = induced_subrack(X, [p + 1 for p in points])
    out = {}
    for block in components(sub):
        labels = tuple(sorted(points[b - 1] + 1 for b in block))
        for b in block:
            out[points[b - 1]] = labels
    return out


def is_type_d(X: RackTable) -> TypeDWitness | None:
    """First witness in row-major pair order, or None."""
    rows = X.rows
    n = X.size
    for r in range(n):
        for s in range(n):
            if r == s or not _violates(rows, r, s):
                continue
            Z = _closure0(X, (r, s))
            comp = _component_map(X, Z)
            if comp[r] != comp[s]:
                return TypeDWitness(r + 1, s + 1, tuple(p + 1 for p in Z), comp[r], comp[s])
    return None


def type_d_census(records: Iterable) -> int:
    """Number of records (or tables) admitting a type D witness."""
    count = 0
    for rec in records:
        X = rec if isinstance(rec, RackTable) else rec.table
        if is_type_d(X) is not None:
            count += 1
    return count


def is_type_d_bruteforce(X: RackTable) -> bool:
    """Search every subrack with exactly two components (small racks only)."""
    n = X.size
    rows = X.rows
    for k in range(2, n + 1):
        for subset in itertools.combinations(range(n), k):
            inside = set(subset)
            if any(rows[a][b] not in inside for a in subset for b in subset):
                continue
            comp = _component_map(X, list(subset))
            blocks = set(comp.values())
            if len(blocks) != 2:
                continue
            R, S = (tuple(p - 1 for p in b) for b in blocks)
            if any(_violates(rows, r, s) for r in R for s in S) or any(
                _violates(rows, s, r) for r in R for s in S
            ):
                return True
    return False
