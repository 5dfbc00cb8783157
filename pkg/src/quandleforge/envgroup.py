"""Enveloping groups of racks and Todd-Coxeter coset enumeration.

Words are lists of signed 1-based generator indices: ``3`` is x_3 and
``-3`` its inverse.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .perm import Permutation, PermGroup, _order
from .rack import RackTable
from .snf import smith_form

DEFAULT_MAX_COSETS = 10**6


class CosetOverflowError(RuntimeError):
    """Coset enumeration needed more cosets than allowed."""


def free_reduce(word: Sequence[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if x == 0:
            raise ValueError("0 is not a generator letter")
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


@dataclass
class GroupPresentation:
    generators: int
    relators: list[list[int]] = field(default_factory=list)

    def __post_init__(self):
        for w in self.relators:
            for x in w:
                if x == 0 or abs(x) > self.generators:
                    raise ValueError(f"letter {x} does not name one of {self.generators} generators")
        self.relators = [free_reduce(w) for w in self.relators]

    def exponent_matrix(self) -> list[list[int]]:
        rows = []
        for w in self.relators:
            r = [0] * self.generators
            for x in w:
                r[abs(x) - 1] += 1 if x > 0 else -1
            rows.append(r)
        return rows


def enveloping_presentation(X: RackTable, finite: bool = True) -> GroupPresentation:
    """Generators x_1..x_n with x_i x_j x_i^-1 = x_{i▷j}; with ``finite`` also
    x^{ord φ_x} = 1."""
    n = X.size
    rels = []
    for i in range(n):
        for j in range(n):
            rels.append([i + 1, j + 1, -(i + 1), -(X.rows[i][j] + 1)])
    if finite:
        for i in range(n):
            rels.append([i + 1] * _order(X.rows[i]))
    return GroupPresentation(n, rels)


@dataclass
class CosetTable:
    """Closed coset table over the trivial subgroup.

    ``action[c][2*g]`` is c·x_{g+1} and ``action[c][2*g+1]`` is c·x_{g+1}^-1
    (0-based cosets, coset 0 is the subgroup itself).
    """

    generators: int
    action: list[list[int]]

    @property
    def size(self) -> int:
        return len(self.action)

    def __len__(self) -> int:
        return len(self.action)

    def permutation(self, g: int) -> Permutation:
        """Action of generator g (1-based) on cosets 1..size (right regular rep)."""
        col = 2 * (g - 1)
        return Permutation._raw(tuple(row[col] for row in self.action))

    def permutations(self) -> list[Permutation]:
        return [self.permutation(g) for g in range(1, self.generators + 1)]

    def group(self) -> PermGroup:
        return PermGroup(self.permutations(), max(1, self.size))

    def trace(self, word: Sequence[int], start: int = 0) -> int:
        c = start
        for x in word:
            c = self.action[c][2 * (abs(x) - 1) + (x < 0)]
        return c


def todd_coxeter(P: GroupPresentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """HLT coset enumeration of the trivial subgroup.

    Coincidences are processed with a union-find forwarding array.  Raises
    :class:`CosetOverflowError` once more than ``max_cosets`` cosets have
    been defined.
    """
    ncols = 2 * P.generators
    rels = [[2 * (abs(x) - 1) + (x < 0) for x in w] for w in P.relators if w]
    table: list[list[int]] = [[-1] * ncols]
    parent = [0]

    def inv(x: int) -> int:
        return x ^ 1

    def define(c: int, x: int) -> None:
        d = len(table)
        if d >= max_cosets:
            raise CosetOverflowError(f"coset enumeration exceeded {max_cosets} cosets")
        table.append([-1] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][inv(x)] = c

    def rep(k: int) -> int:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def merge(k: int, l: int, queue: list) -> None:
        a, b = rep(k), rep(l)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            parent[hi] = lo
            queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(ncols):
                d = row[x]
                if d < 0:
                    continue
                table[d][inv(x)] = -1
                mu, nu = rep(g), rep(d)
                if table[mu][x] >= 0:
                    merge(nu, table[mu][x], queue)
                elif table[nu][inv(x)] >= 0:
                    merge(mu, table[nu][inv(x)], queue)
                else:
                    table[mu][x] = nu
                    table[nu][inv(x)] = mu

    def scan_and_fill(c: int, w: list[int]) -> None:
        r = len(w)
        f, b = c, c
        i, j = 0, r - 1
        while True:
            while i <= j and table[f][w[i]] >= 0:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][inv(w[j])] >= 0:
                b = table[b][inv(w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][inv(w[i])] = f
                return
            define(f, w[i])

    c = 0
    while c < len(table):
        for w in rels:
            if parent[c] != c:
                break
            scan_and_fill(c, w)
        for x in range(ncols):
            if parent[c] != c:
                break
            if table[c][x] < 0:
                define(c, x)
        c += 1

    live = [k for k in range(len(table)) if parent[k] == k]
    index = {k: i for i, k in enumerate(live)}
    action = [[index[table[k][x]] for x in range(ncols)] for k in live]
    return CosetTable(P.generators, action)


def finite_enveloping_order(X: RackTable, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    return todd_coxeter(enveloping_presentation(X, finite=True), max_cosets).size


def abelian_invariants(P: GroupPresentation) -> tuple[int, list[int]]:
    """(free rank, invariant factors > 1) of the abelianization."""
    M = P.exponent_matrix()
    if not M:
        return P.generators, []
    sf = smith_form(M, transforms=False)
    return P.generators - sf.rank, sf.invariant_factors


def format_abelian(betti: int, torsion: Sequence[int]) -> str:
    parts = []
    if betti:
        parts.append("Z" if betti == 1 else f"Z^{betti}")
    parts.extend(f"Z_{d}" for d in torsion)
    return " x ".join(parts) or "0"
