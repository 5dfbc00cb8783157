"""Integer rack homology.

C_n(X) is free on X^n with basis tuples ordered row-major (1-based labels,
first coordinate most significant).  The boundary is

    ∂(x_1..x_n) = Σ_{i<n} (-1)^{i+1} [ (.., x_{i-1}, x_{i+1}, ..)
                                      - (.., x_{i-1}, x_i▷x_{i+1}, .., x_i▷x_n) ]

and ∂_1 = ∂_0 = 0.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .rack import RackTable
from .snf import Matrix, elementary_divisors_sparse, matvec, smith_form, solve_integer

MAX_BASIS = 2**24


class HomologySizeError(ValueError):
    pass


@dataclass(frozen=True)
class HomologyResult:
    """Z^betti x Z_{d1} x Z_{d2} x ... with d1 | d2 | ..."""

    betti: int
    torsion: tuple[int, ...] = field(default_factory=tuple)

    def __str__(self) -> str:
        inner = ", ".join(map(str, self.torsion))
        return f"[ {self.betti}, [ {inner}{' ' if inner else ''}] ]"

    def describe(self) -> str:
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts.extend(f"Z_{d}" for d in self.torsion)
        return " x ".join(parts) or "0"


@dataclass
class ChainVector:
    """Integer combination of basis tuples of X^degree (row-major order)."""

    size: int
    degree: int
    coefficients: list[int]

    def support(self) -> list[tuple[tuple[int, ...], int]]:
        out = []
        for idx, c in enumerate(self.coefficients):
            if c:
                out.append((index_to_tuple(idx, self.size, self.degree), c))
        return out

    def __str__(self) -> str:
        return "[ " + ", ".join(map(str, self.coefficients)) + " ]"


def index_to_tuple(idx: int, size: int, degree: int) -> tuple[int, ...]:
    out = []
    for _ in range(degree):
        idx, r = divmod(idx, size)
        out.append(r + 1)
    return tuple(reversed(out))


def tuple_to_index(t, size: int) -> int:
    idx = 0
    for x in t:
        idx = idx * size + (x - 1)
    return idx


def _check_size(X: RackTable, n: int) -> None:
    if X.size ** (n + 1) > MAX_BASIS:
        raise HomologySizeError(
            f"|X|^{n + 1} = {X.size ** (n + 1)} basis elements exceeds the limit {MAX_BASIS}"
        )


def boundary_columns(X: RackTable, n: int) -> list[dict[int, int]]:
    """∂_n as a list of sparse columns, one per basis tuple of X^n."""
    if n < 1:
        raise ValueError("boundary degree must be at least 1")
    size = X.size
    rows = X.rows
    cols: list[dict[int, int]] = []
    for t in itertools.product(range(size), repeat=n):
        col: dict[int, int] = {}
        if n >= 2:
            for i in range(n - 1):
                sign = 1 if i % 2 == 0 else -1
                head = t[:i]
                deleted = head + t[i + 1 :]
                r = rows[t[i]]
                acted = head + tuple(r[y] for y in t[i + 1 :])
                a = _index0(deleted, size)
                b = _index0(acted, size)
                if a != b:
                    col[a] = col.get(a, 0) + sign
                    col[b] = col.get(b, 0) - sign
        cols.append({k: v for k, v in col.items() if v})
    return cols


def _index0(t: tuple, size: int) -> int:
    idx = 0
    for x in t:
        idx = idx * size + x
    return idx


def boundary_matrix(X: RackTable, n: int) -> Matrix:
    """Dense matrix of ∂_n : C_n -> C_{n-1}, shape |X|^(n-1) x |X|^n."""
    cols = boundary_columns(X, n)
    nrows = X.size ** (n - 1)
    M = [[0] * len(cols) for _ in range(nrows)]
    for j, col in enumerate(cols):
        for i, v in col.items():
            M[i][j] = v
    return M


def _rank_and_divisors(X: RackTable, n: int) -> tuple[int, list[int]]:
    if n < 2:
        return 0, []
    return elementary_divisors_sparse(boundary_columns(X, n))


def rack_homology(X: RackTable, n: int) -> HomologyResult:
    """H_n(X, Z) from the ranks of ∂_n, ∂_{n+1} and the divisors of ∂_{n+1}."""
    if n < 0:
        raise ValueError("homology degree must be non-negative")
    _check_size(X, n)
    rank_n, _ = _rank_and_divisors(X, n)
    rank_n1, divisors = _rank_and_divisors(X, n + 1)
    betti = X.size**n - rank_n - rank_n1
    return HomologyResult(betti, tuple(sorted(divisors)))


def torsion_generators(X: RackTable, n: int) -> list[ChainVector]:
    """One cycle per invariant factor of H_n, of exactly that order.

    With U ∂_{n+1} V = D, the columns of U^-1 form a basis of C_n in which the
    boundaries are spanned by d_i u_i; the u_i with d_i > 1 are cycles of
    order d_i in homology.
    """
    _check_size(X, n)
    if n < 1:
        return []
    A = boundary_matrix(X, n + 1)
    sf = smith_form(A, transforms=True, inverses=True)
    out = []
    for i, d in enumerate(sf.diagonal):
        if d > 1:
            col = [row[i] for row in sf.U_inv]
            out.append(ChainVector(X.size, n, col))
    return out


def is_boundary(X: RackTable, v: ChainVector) -> bool:
    """True iff v lies in the image of ∂_{deg+1} (exact integer solve)."""
    A = boundary_matrix(X, v.degree + 1)
    return solve_integer(A, v.coefficients) is not None


def is_cycle(X: RackTable, v: ChainVector) -> bool:
    if v.degree < 2:
        return True
    return not any(matvec(boundary_matrix(X, v.degree), v.coefficients))
