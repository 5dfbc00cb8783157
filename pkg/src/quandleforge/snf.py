"""Exact integer Smith normal form.

Matrices are plain lists of lists of Python ints, so entries never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Matrix = list[list[int]]


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else [()] * cols
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def determinant(A: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    if any(len(r) != n for r in A):
        raise ValueError("determinant needs a square matrix")
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


@dataclass
class SmithForm:
    """``U * A * V == D``; ``U_inv`` and ``V_inv`` are kept when requested."""

    D: Matrix
    U: Matrix | None
    V: Matrix | None
    U_inv: Matrix | None = None
    V_inv: Matrix | None = None

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def invariant_factors(self) -> list[int]:
        """Nonzero diagonal entries greater than one."""
        return [d for d in self.diagonal if d > 1]


def smith_form(
    A: Sequence[Sequence[int]],
    transforms: bool = True,
    inverses: bool = False,
) -> SmithForm:
    """Smith normal form by pivoting on an entry of least absolute value.

    Ties go to the smallest (row, col).  With ``transforms`` the unimodular
    U, V are accumulated; ``inverses`` adds U^-1 and V^-1.
    """
    M = [list(map(int, r)) for r in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = identity_matrix(m) if transforms else None
    V = identity_matrix(n) if transforms else None
    Ui = identity_matrix(m) if inverses else None
    Vi = identity_matrix(n) if inverses else None

    def swap_rows(i, j):
        if i == j:
            return
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]
        if Ui is not None:
            for r in Ui:
                r[i], r[j] = r[j], r[i]

    def swap_cols(i, j):
        if i == j:
            return
        for r in M:
            r[i], r[j] = r[j], r[i]
        if V is not None:
            for r in V:
                r[i], r[j] = r[j], r[i]
        if Vi is not None:
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if not c:
            return
        rs, rd = M[src], M[dst]
        M[dst] = [a + c * b for a, b in zip(rd, rs)]
        if U is not None:
            U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]
        if Ui is not None:
            for r in Ui:
                r[src] -= c * r[dst]

    def add_col(dst, src, c):
        # col_dst += c * col_src
        if not c:
            return
        for r in M:
            r[dst] += c * r[src]
        if V is not None:
            for r in V:
                r[dst] += c * r[src]
        if Vi is not None:
            Vi[src] = [a - c * b for a, b in zip(Vi[src], Vi[dst])]

    def negate_row(i):
        M[i] = [-a for a in M[i]]
        if U is not None:
            U[i] = [-a for a in U[i]]
        if Ui is not None:
            for r in Ui:
                r[i] = -r[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                a = row[j]
                if a and (best is None or abs(a) < best[0]):
                    best = (abs(a), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        p = M[t][t]
        clean = True
        for i in range(t + 1, m):
            a = M[i][t]
            if a:
                add_row(i, t, -(a // p))
                if M[i][t]:
                    clean = False
        for j in range(t + 1, n):
            a = M[t][j]
            if a:
                add_col(j, t, -(a // p))
                if M[t][j]:
                    clean = False
        if not clean:
            continue
        bad = None
        for i in range(t + 1, m):
            if any(a % p for a in M[i][t + 1 :]):
                bad = i
                break
        if bad is not None:
            add_row(t, bad, 1)
            continue
        if p < 0:
            negate_row(t)
        t += 1
    return SmithForm(M, U, V, Ui, Vi)


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """``(D, U, V)`` with ``U*A*V == D`` diagonal, ``d1 | d2 | ...``, all ``d >= 0``."""
    sf = smith_form(A)
    return sf.D, sf.U, sf.V


def elementary_divisors_dense(A: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """(rank, invariant factors > 1) of a dense matrix."""
    sf = smith_form(A, transforms=False)
    return sf.rank, sf.invariant_factors


def elementary_divisors_sparse(
    vectors: list[dict[int, int]],
) -> tuple[int, list[int]]:
    """(rank, invariant factors > 1) of the matrix whose rows are ``vectors``.

    Unit pivots are eliminated first (each removes one row and column without
    changing the remaining divisors), choosing the pivot with the smallest
    Markowitz cost among the shortest rows.  Whatever is left goes through the
    dense Smith form.
    """
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for rid, vec in enumerate(vectors):
        vec = {c: v for c, v in vec.items() if v}
        if vec:
            rows[rid] = vec
            for c in vec:
                cols.setdefault(c, set()).add(rid)
    rank = 0
    while rows:
        pivot = None
        best_cost = None
        for rid, vec in sorted(rows.items(), key=lambda kv: (len(kv[1]), kv[0])):
            if best_cost is not None and (len(vec) - 1) * 1 > best_cost:
                break
            for c, v in vec.items():
                if v == 1 or v == -1:
                    cost = (len(vec) - 1) * (len(cols[c]) - 1)
                    if best_cost is None or cost < best_cost:
                        pivot, best_cost = (rid, c), cost
            if best_cost == 0:
                break
        if pivot is None:
            break
        rid, c = pivot
        prow = rows.pop(rid)
        for cc in prow:
            cols[cc].discard(rid)
        pv = prow[c]
        for other in list(cols[c]):
            orow = rows[other]
            f = orow[c] * pv
            for cc, v in prow.items():
                nv = orow.get(cc, 0) - f * v
                if nv:
                    if cc not in orow:
                        cols[cc].add(other)
                    orow[cc] = nv
                else:
                    if cc in orow:
                        del orow[cc]
                        cols[cc].discard(other)
            if not orow:
                del rows[other]
        del cols[c]
        rank += 1
    if not rows:
        return rank, []
    used = sorted({c for vec in rows.values() for c in vec})
    pos = {c: k for k, c in enumerate(used)}
    dense = []
    for vec in rows.values():
        r = [0] * len(used)
        for c, v in vec.items():
            r[pos[c]] = v
        dense.append(r)
    core_rank, factors = elementary_divisors_dense(dense)
    return rank + core_rank, factors


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """Some integer x with ``A x = b``, or None if there is none."""
    m = len(A)
    n = len(A[0]) if m else 0
    if len(b) != m:
        raise ValueError("dimension mismatch")
    sf = smith_form(A)
    c = matvec(sf.U, b)
    y = [0] * n
    for i in range(m):
        d = sf.D[i][i] if i < n else 0
        if d == 0:
            if c[i]:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec(sf.V, y)
