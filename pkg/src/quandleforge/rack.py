"""Rack and quandle operation tables.

A rack of size n is stored as its operation table ``M`` with ``M[i][j] = i ▷ j``
on the labels 1..n.  Internally rows are 0-based tuples; everything that leaves
the module (``table``, ``op``, text format) is 1-based.
"""

from __future__ import annotations

import bisect

import io
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .perm import Permutation, PermGroup, _cycles, _cycle_type, _inv


class RackError(ValueError):
    """A table that fails the rack axioms (or the text format)."""

    def __init__(self, message: str, row: int | None = None, triple: tuple | None = None):
        super().__init__(message)
        self.row = row
        self.triple = triple


class RackTable:
    """Validated, immutable rack table.

    Use :func:`validate_rack` (or :meth:`from_rows` for trusted 0-based rows)
    rather than calling the constructor directly.
    """

    __slots__ = ("_rows", "_inv_rows", "_is_quandle", "_hash")

    def __init__(self, rows: Sequence[Sequence[int]]):
        self._rows = tuple(tuple(r) for r in rows)
        self._inv_rows = tuple(_inv(r) for r in self._rows)
        self._is_quandle = all(r[i] == i for i, r in enumerate(self._rows))
        self._hash = None

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "RackTable":
        """Wrap 0-based rows that are already known to form a rack."""
        return cls(rows)

    @property
    def size(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def rows(self) -> tuple[tuple[int, ...], ...]:
        """0-based rows, ``rows[i][j] = i ▷ j``."""
        return self._rows

    @property
    def inverse_rows(self) -> tuple[tuple[int, ...], ...]:
        """0-based rows of the inverse translations."""
        return self._inv_rows

    @property
    def table(self) -> list[list[int]]:
        return [[x + 1 for x in r] for r in self._rows]

    def op(self, i: int, j: int) -> int:
        """``i ▷ j`` on 1-based labels."""
        return self._rows[i - 1][j - 1] + 1

    @property
    def is_quandle(self) -> bool:
        return self._is_quandle

    @property
    def is_crossed_set(self) -> bool:
        return is_crossed_set(self)

    def __eq__(self, other) -> bool:
        return isinstance(other, RackTable) and self._rows == other._rows

    def __lt__(self, other: "RackTable") -> bool:
        return (self.size, self._rows) < (other.size, other._rows)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self) -> str:
        return f"RackTable({self.table})"

    def __str__(self) -> str:
        return format_table(self).rstrip("\n")


@dataclass(frozen=True)
class ComponentPartition:
    """Orbits of the inner group, each block sorted, blocks sorted by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)

    def block_of(self, point: int) -> tuple[int, ...]:
        for b in self.blocks:
            if point in b:
                return b
        raise KeyError(point)

    def as_lists(self) -> list[list[int]]:
        return [list(b) for b in self.blocks]


# ---------------------------------------------------------------- validation


def validate_rack(table: Sequence[Sequence[int]]) -> RackTable:
    """Check the rack axioms on a 1-based table and return a :class:`RackTable`."""
    n = len(table)
    if n == 0:
        raise RackError("empty table")
    rows = []
    for i, row in enumerate(table, start=1):
        row = list(row)
        if len(row) != n:
            raise RackError(f"row {i} has {len(row)} entries, expected {n}", row=i)
        for x in row:
            if not isinstance(x, int) or not 1 <= x <= n:
                raise RackError(f"row {i}: entry {x!r} outside 1..{n}", row=i)
        if len(set(row)) != n:
            raise RackError(f"row {i} is not bijective", row=i)
        rows.append(tuple(x - 1 for x in row))
    bad = _self_distributivity_witness(rows)
    if bad is not None:
        i, j, k = (x + 1 for x in bad)
        raise RackError(
            f"self-distributivity fails at (i,j,k) = ({i},{j},{k})", triple=(i, j, k)
        )
    return RackTable(rows)


def _self_distributivity_witness(rows) -> tuple[int, int, int] | None:
    n = len(rows)
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            rj = rows[j]
            rij = rows[ri[j]]
            for k in range(n):
                if ri[rj[k]] != rij[ri[k]]:
                    return i, j, k
    return None


def is_rack(table: Sequence[Sequence[int]]) -> bool:
    try:
        validate_rack(table)
    except RackError:
        return False
    return True


# ---------------------------------------------------------------- text format


def format_table(X: RackTable) -> str:
    """Rack table text: the size on line 1, then one row per line."""
    out = [str(X.size)]
    out.extend(" ".join(str(x + 1) for x in r) for r in X.rows)
    return "\n".join(out) + "\n"


def parse_table(text: str) -> RackTable:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise RackError("empty rack file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise RackError(f"malformed rack file: {exc}") from None
    if n < 1 or len(rows) != n:
        raise RackError(f"expected {n} rows, found {len(rows)}")
    return validate_rack(rows)


def read_rack(path: str | os.PathLike | io.TextIOBase) -> RackTable:
    if hasattr(path, "read"):
        return parse_table(path.read())
    with open(path) as fh:
        return parse_table(fh.read())


def write_rack(X: RackTable, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_table(X))


# ---------------------------------------------------------------- basic invariants


def translations(X: RackTable) -> list[Permutation]:
    return [Permutation._raw(r) for r in X.rows]


def inner_group(X: RackTable) -> PermGroup:
    return PermGroup._from_raw(sorted(set(X.rows)), X.size)


def _component_labels(X: RackTable) -> list[int]:
    n = X.size
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in set(X.rows):
        for j, y in enumerate(r):
            a, b = find(j), find(y)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return [find(x) for x in range(n)]


def components(X: RackTable) -> ComponentPartition:
    blocks: dict[int, list[int]] = {}
    for x, root in enumerate(_component_labels(X)):
        blocks.setdefault(root, []).append(x + 1)
    return ComponentPartition(tuple(tuple(b) for b in sorted(blocks.values())))


def is_indecomposable(X: RackTable) -> bool:
    return len(set(_component_labels(X))) == 1


def _closure0(X: RackTable, seeds: Iterable[int]) -> list[int]:
    rows, inv = X.rows, X.inverse_rows
    members = sorted(set(seeds))
    inside = set(members)
    i = 0
    while i < len(members):
        a = members[i]
        i += 1
        for b in list(members):
            for c in (rows[a][b], rows[b][a], inv[a][b], inv[b][a]):
                if c not in inside:
                    inside.add(c)
                    members.append(c)
    return sorted(inside)


def subrack_closure(X: RackTable, S: Iterable[int]) -> list[int]:
    """Smallest subrack containing the 1-based point set ``S``."""
    seeds = [s - 1 for s in S]
    if not seeds:
        raise ValueError("subrack closure of the empty set")
    for s in seeds:
        if not 0 <= s < X.size:
            raise ValueError(f"point {s + 1} outside 1..{X.size}")
    return [x + 1 for x in _closure0(X, seeds)]


def induced_subrack(X: RackTable, points: Sequence[int]) -> RackTable:
    """Table of the subrack on ``points`` (1-based), relabeled 1..k in the given order."""
    pts = [p - 1 for p in points]
    pos = {p: k for k, p in enumerate(pts)}
    rows = []
    for a in pts:
        try:
            rows.append([pos[X.rows[a][b]] for b in pts])
        except KeyError:
            raise RackError(f"{sorted(points)} is not closed under the operation") from None
    for r in rows:
        if len(set(r)) != len(r):
            raise RackError("induced rows are not bijective")
    return RackTable(rows)


def is_crossed_set(X: RackTable) -> bool:
    """Quandle with ``j ▷ i = i`` whenever ``i ▷ j = j``."""
    if not X.is_quandle:
        return False
    rows = X.rows
    return all(rows[j][i] == i for i, r in enumerate(rows) for j in range(len(r)) if r[j] == j)


def is_faithful(X: RackTable) -> bool:
    return len(set(X.rows)) == X.size


def relabel(X: RackTable, sigma: Permutation | Sequence[int]) -> RackTable:
    """The table ``Y`` with ``Y[σi][σj] = σ(X[i][j])``."""
    s = sigma.array if isinstance(sigma, Permutation) else tuple(x - 1 for x in sigma)
    n = X.size
    if len(s) != n:
        raise ValueError("relabeling has the wrong degree")
    si = _inv(s)
    rows = X.rows
    return RackTable([[s[rows[si[a]][si[b]]] for b in range(n)] for a in range(n)])


# ---------------------------------------------------------------- canonical form


def _row1_pattern(psi: tuple, t: int) -> tuple[tuple, int, list]:
    """Lex-smallest image sequence of psi after relabeling with t -> label 0.

    Returns (pattern, length of t's cycle, the other cycles sorted by length).
    """
    cyc = _cycles(psi)
    own = next(c for c in cyc if t in c)
    rest = sorted((c for c in cyc if c is not own), key=len)
    pattern = []
    start = 0
    for L in [len(own)] + [len(c) for c in rest]:
        pattern.extend(start + (k + 1) % L for k in range(L))
        start += L
    return tuple(pattern), len(own), rest


def canonical_form(X: RackTable) -> RackTable:
    """Lexicographically least relabeling of ``X`` (row-major order).

    Row 1 of any relabeling is the conjugated translation of the element that
    receives label 1, so its minimum is attained only by a few cycle layouts;
    every later label lives in a block holding one cycle of that translation.
    Scanning the remaining cells in row-major order, an unlabeled image can
    only be minimal if its cycle fills the first free block of its length,
    starting at that image.  The search branches only where an empty block
    must be filled, and only over the candidates tying for the smallest cell
    value.  A block whose cells in the current row come out the same for
    every candidate is left open until a later row tells the candidates apart.
    """
    n = X.size
    rows = X.rows
    ident = tuple(range(n))
    if all(r == ident for r in rows):
        return X

    best_pat = None
    starts = []
    for t in range(n):
        pat, L, rest = _row1_pattern(rows[t], t)
        if best_pat is None or pat < best_pat:
            best_pat, starts = pat, [(t, L, rest)]
        elif pat == best_pat:
            starts.append((t, L, rest))

    best: list | None = None
    lab2el = [-1] * n
    el2lab = [-1] * n

    for t, L0, rest in starts:
        psi = rows[t]
        free: dict[int, list[int]] = {}
        cycles_by_len: dict[int, list[list[int]]] = {}
        cycle_of: dict[int, tuple[int, int]] = {}
        # position of each element inside its cycle
        offset = [0] * n
        block_len = [0] * n
        pos = L0
        for c in rest:
            Lc = len(c)
            free.setdefault(Lc, []).append(pos)
            block_len[pos] = Lc
            ci = len(cycles_by_len.setdefault(Lc, []))
            z = c[0]
            for k in range(Lc):
                cycle_of[z] = (Lc, ci)
                offset[z] = k
                z = psi[z]
            cycles_by_len[Lc].append(c)
            pos += Lc
        taken = {Lc: [False] * len(cs) for Lc, cs in cycles_by_len.items()}
        trail: list[tuple[int, int, int]] = []

        x = t
        for k in range(L0):
            lab2el[k] = x
            el2lab[x] = k
            x = psi[x]

        def place(y: int, s: int | None = None) -> int:
            """Put y's cycle into block ``s`` (default: first free of its length)."""
            Lc, ci = cycle_of[y]
            fl = free[Lc]
            if s is None:
                s = fl[0]
            fl.remove(s)
            taken[Lc][ci] = True
            trail.append((Lc, ci, s))
            z = y
            for k in range(Lc):
                lab2el[s + k] = z
                el2lab[z] = s + k
                z = psi[z]
            return s

        def undo(mark: int) -> None:
            while len(trail) > mark:
                Lc, ci, s = trail.pop()
                bisect.insort(free[Lc], s)
                taken[Lc][ci] = False
                for k in range(Lc):
                    el2lab[lab2el[s + k]] = -1
                    lab2el[s + k] = -1

        def predicted(y: int, p: tuple, c: int) -> int:
            """Label p(y) would get if y opened the block at c."""
            z = p[y]
            if el2lab[z] >= 0:
                return el2lab[z]
            Lc, ci = cycle_of[z]
            if cycle_of[y] == (Lc, ci):
                return c + (offset[z] - offset[y]) % Lc
            for s in free[Lc]:
                if s != c:
                    return s
            raise AssertionError("no free block")

        def open_cycles(Lc: int) -> list[list[int]]:
            return [cyc for ci, cyc in enumerate(cycles_by_len[Lc]) if not taken[Lc][ci]]

        def common_shift(p: tuple, cycles: list[list[int]]) -> int | None:
            """k if p acts as psi^k on every cycle in ``cycles``, else None."""
            k = None
            for cyc in cycles:
                Lc = len(cyc)
                y0 = cyc[0]
                z0 = p[y0]
                if cycle_of.get(z0) != cycle_of[y0]:
                    return None
                kk = (offset[z0] - offset[y0]) % Lc
                if k is not None and kk != k:
                    return None
                for y in cyc:
                    z = p[y]
                    if cycle_of.get(z) != cycle_of[y0] or (offset[z] - offset[y]) % Lc != kk:
                        return None
                k = kk
            return k

        def branch(a: int, c: int, less: bool, s: int, choices: list[int]) -> None:
            entry = best
            for y in choices:
                mark = len(trail)
                place(y, s)
                # a new best came from a sibling with this same prefix
                scan(a, c, less and best is entry)
                undo(mark)

        def scan(a: int, c: int, less: bool) -> None:
            """Fill cells from (a, c) on; ``less`` means already below best."""
            nonlocal best
            while a < n:
                if lab2el[a] < 0:
                    Lc = block_len[a]
                    branch(a, c, less, a, [y for cyc in open_cycles(Lc) for y in cyc])
                    return
                p = rows[lab2el[a]]
                while c < n:
                    if lab2el[c] < 0:
                        Lc = block_len[c]
                        cyc_list = open_cycles(Lc)
                        k = common_shift(p, cyc_list)
                        if k is not None:
                            # same cells whichever cycle ends up here
                            for i in range(Lc):
                                v = c + (i + k) % Lc
                                if not less:
                                    if best is None:
                                        less = True
                                    else:
                                        b = best[a][c + i]
                                        if v > b:
                                            return
                                        if v < b:
                                            less = True
                            c += Lc
                            continue
                        cands = [y for cyc in cyc_list for y in cyc]
                        vals = [predicted(y, p, c) for y in cands]
                        v = min(vals)
                        if not less and best is not None and v > best[a][c]:
                            return
                        branch(a, c, less, c, [y for y, vy in zip(cands, vals) if vy == v])
                        return
                    z = p[lab2el[c]]
                    v = el2lab[z]
                    if v < 0:
                        v = place(z)
                    if not less:
                        if best is None:
                            less = True
                        else:
                            b = best[a][c]
                            if v > b:
                                return
                            if v < b:
                                less = True
                    c += 1
                a += 1
                c = 0
            if less:
                best = [list(best_pat)] + [
                    [el2lab[rows[lab2el[i]][lab2el[j]]] for j in range(n)] for i in range(1, n)
                ]

        scan(1, 0, False)
        undo(0)
        for k in range(L0):
            el2lab[lab2el[k]] = -1
            lab2el[k] = -1

    return RackTable(best)


# ---------------------------------------------------------------- isomorphism


def element_invariants(X: RackTable) -> list[tuple]:
    """Per-element isomorphism invariants (0-based order)."""
    comp = _component_labels(X)
    sizes: dict[int, int] = {}
    for c in comp:
        sizes[c] = sizes.get(c, 0) + 1
    rows = X.rows
    return [
        (_cycle_type(rows[x]), rows[x][x] == x, sizes[comp[x]], sum(1 for r in rows if r[x] == x))
        for x in range(X.size)
    ]


def find_isomorphism(X: RackTable, Y: RackTable) -> Permutation | None:
    """Some ``σ`` with ``Y[σi][σj] = σ(X[i][j])``, or ``None``."""
    n = X.size
    if Y.size != n:
        return None
    ix, iy = element_invariants(X), element_invariants(Y)
    if sorted(ix) != sorted(iy):
        return None
    classes: dict[tuple, list[int]] = {}
    for y, inv in enumerate(iy):
        classes.setdefault(inv, []).append(y)
    order = sorted(range(n), key=lambda x: (len(classes[ix[x]]), x))
    xr, xi, yr, yi = X.rows, X.inverse_rows, Y.rows, Y.inverse_rows
    f = [-1] * n
    g = [-1] * n
    done: list[int] = []

    def assign(a: int, b: int) -> bool:
        stack = [(a, b)]
        while stack:
            a, b = stack.pop()
            if f[a] >= 0 or g[b] >= 0:
                if f[a] != b or g[b] != a:
                    return False
                continue
            if ix[a] != iy[b]:
                return False
            f[a], g[b] = b, a
            done.append(a)
            for c in done:
                d = f[c]
                stack.append((xr[a][c], yr[b][d]))
                stack.append((xr[c][a], yr[d][b]))
                stack.append((xi[a][c], yi[b][d]))
                stack.append((xi[c][a], yi[d][b]))
        return True

    def undo(mark: int) -> None:
        while len(done) > mark:
            a = done.pop()
            g[f[a]] = -1
            f[a] = -1

    def rec(k: int) -> bool:
        while k < n and f[order[k]] >= 0:
            k += 1
        if k == n:
            return True
        a = order[k]
        for b in classes[ix[a]]:
            if g[b] >= 0:
                continue
            mark = len(done)
            if assign(a, b) and rec(k + 1):
                return True
            undo(mark)
        return False

    if not rec(0):
        return None
    sigma = Permutation._raw(tuple(f))
    assert is_isomorphism(X, Y, sigma)
    return sigma


def is_isomorphism(X: RackTable, Y: RackTable, sigma: Permutation) -> bool:
    s = sigma.array
    xr, yr = X.rows, Y.rows
    n = X.size
    return Y.size == n and all(
        yr[s[i]][s[j]] == s[xr[i][j]] for i in range(n) for j in range(n)
    )


def trivial_quandle(n: int) -> RackTable:
    return RackTable([tuple(range(n))] * n)
