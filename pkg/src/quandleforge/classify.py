"""Classification of indecomposable quandles from transitive groups.

Every indecomposable quandle X of size n is the homogeneous quandle
(G, Stab_G(1), I_z) for G = Inn(X) and z = φ_1, where G is transitive of
degree n and z is central in the stabilizer.  Running over all transitive
groups G and all non-identity central z of Stab_G(1) therefore finds every
class; duplicates are merged by canonical form.
"""

from __future__ import annotations

import functools
import itertools
import hashlib
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .construct import homogeneous_quandle
from .perm import CycleParseError, PermGroup, parse_perm_list
from .rack import (
    RackError,
    RackTable,
    canonical_form,
    format_table,
    inner_group,
    is_crossed_set,
    is_faithful,
    is_indecomposable,
    parse_table,
)
from .transitive import MAX_DEGREE, enumerate_transitive_groups

log = logging.getLogger(__name__)

DB_VERSION = "QDB1"


class GroupDataError(ValueError):
    pass


class QuandleDBError(ValueError):
    pass


# ---------------------------------------------------------------- group databases


@dataclass
class GroupDatabase:
    """Transitive groups of one degree, pairwise non-conjugate."""

    degree: int
    groups: list[PermGroup] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.groups)

    def __iter__(self):
        return iter(self.groups)

    def __getitem__(self, i: int) -> PermGroup:
        return self.groups[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, GroupDatabase):
            return NotImplemented
        return self.degree == other.degree and [
            [g.array for g in G.generators] for G in self.groups
        ] == [[g.array for g in G.generators] for G in other.groups]


@functools.lru_cache(maxsize=None)
def _builtin_raw(degree: int) -> tuple[tuple[tuple, ...], ...]:
    return tuple(
        tuple(g.array for g in G.generators) for G in enumerate_transitive_groups(degree)
    )


def builtin_transitive_groups(degree: int) -> GroupDatabase:
    """All transitive groups of degree <= 8 up to conjugacy, computed from scratch."""
    if not 1 <= degree <= MAX_DEGREE:
        raise GroupDataError(
            f"built-in transitive groups stop at degree {MAX_DEGREE}; "
            f"supply a group database for degree {degree}"
        )
    return GroupDatabase(
        degree, [PermGroup._from_raw(gs, degree) for gs in _builtin_raw(degree)]
    )


def format_group_db(db: GroupDatabase) -> str:
    lines = [f"# transitive groups of degree {db.degree}: {len(db)}"]
    for G in db.groups:
        gens = ", ".join(str(g) for g in G.generators) or "()"
        lines.append(f"{db.degree}; {gens}")
    return "\n".join(lines) + "\n"


def write_group_db(db: GroupDatabase, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_group_db(db))


def parse_group_db(text: str, degree: int | None = None) -> GroupDatabase:
    """Parse ``degree; gen1, gen2, ...`` lines; ``#`` starts a comment."""
    groups = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(";")
        if not sep:
            raise GroupDataError(f"line {lineno}: missing ';' after the degree")
        try:
            d = int(head)
        except ValueError:
            raise GroupDataError(f"line {lineno}: bad degree {head.strip()!r}") from None
        if d < 1:
            raise GroupDataError(f"line {lineno}: degree must be positive")
        if degree is None:
            degree = d
        elif d != degree:
            raise GroupDataError(f"line {lineno}: degree {d}, expected {degree}")
        try:
            gens = parse_perm_list(rest, d)
        except CycleParseError as exc:
            raise GroupDataError(f"line {lineno}: {exc}") from None
        G = PermGroup(gens, d)
        if not G.is_transitive():
            raise GroupDataError(f"line {lineno}: group is not transitive")
        groups.append(G)
    if degree is None:
        raise GroupDataError("no groups in file")
    return GroupDatabase(degree, groups)


def load_group_db(path: str | os.PathLike, degree: int | None = None) -> GroupDatabase:
    with open(path) as fh:
        return parse_group_db(fh.read(), degree)


def find_group_db(directory: str | os.PathLike, degree: int) -> GroupDatabase | None:
    """Load ``trans<degree>.grp`` from ``directory`` if it exists."""
    path = os.path.join(directory, f"trans{degree}.grp")
    if not os.path.exists(path):
        return None
    return load_group_db(path, degree)


def groups_for(n: int, groups: GroupDatabase | None = None) -> GroupDatabase:
    if groups is None:
        return builtin_transitive_groups(n)
    if groups.degree != n:
        raise GroupDataError(f"group database has degree {groups.degree}, need {n}")
    return groups


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class QuandleRecord:
    size: int
    index: int
    table: RackTable
    inner_order: int
    crossed: bool
    faithful: bool

    @classmethod
    def from_table(cls, table: RackTable, index: int) -> "QuandleRecord":
        return cls(
            size=table.size,
            index=index,
            table=table,
            inner_order=inner_group(table).order(),
            crossed=is_crossed_set(table),
            faithful=is_faithful(table),
        )


def make_records(tables: Iterable[RackTable]) -> list[QuandleRecord]:
    """Records indexed by ascending canonical table (tables must be canonical)."""
    return [QuandleRecord.from_table(t, i) for i, t in enumerate(sorted(tables), start=1)]


# ---------------------------------------------------------------- homogeneous construction


def _singleton() -> RackTable:
    return RackTable([(0,)])


def _classify_group(args: tuple[int, tuple[tuple, ...]]) -> set[tuple]:
    """Canonical rows of the indecomposable quandles coming from one group."""
    n, gens = args
    G = PermGroup._from_raw(gens, n)
    H = G.stabilizer(1)
    found: set[tuple] = set()
    seen_raw: set[tuple] = set()
    for z in H.center():
        if z.is_identity():
            continue
        Q = homogeneous_quandle(G, H, z)
        if Q.rows in seen_raw:
            continue
        seen_raw.add(Q.rows)
        if is_indecomposable(Q):
            found.add(canonical_form(Q).rows)
    return found


def classify_indecomposable(
    n: int, groups: GroupDatabase | None = None, jobs: int = 1
) -> list[QuandleRecord]:
    """Indecomposable quandles of size n up to isomorphism, as sorted records."""
    if n < 1:
        raise ValueError("size must be positive")
    if n == 1:
        return make_records([_singleton()])
    db = groups_for(n, groups)
    tasks = [(n, tuple(g.array for g in G.generators)) for G in db.groups]
    found: set[tuple] = set()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_classify_group, tasks, chunksize=1):
                found |= part
    else:
        for t in tasks:
            found |= _classify_group(t)
    return make_records(RackTable(rows) for rows in found)


def q(n: int, groups: GroupDatabase | None = None, jobs: int = 1) -> int:
    """Number of indecomposable quandles of size n."""
    return len(classify_indecomposable(n, groups, jobs))


# ---------------------------------------------------------------- brute-force oracle

BRUTE_FORCE_MAX = 8


def _partitions(n: int, smallest: int = 1) -> Iterable[list[int]]:
    if n == 0:
        yield []
        return
    for k in range(smallest, n + 1):
        for rest in _partitions(n - k, k):
            yield [k] + rest


def _standard_perm(shape: Sequence[int]) -> tuple:
    """Cycles of the given (ascending) lengths on consecutive points, in order."""
    img = []
    start = 0
    for L in shape:
        img.extend(start + (k + 1) % L for k in range(L))
        start += L
    return tuple(img)


def _perms_fixing(a: int, n: int, shape: Sequence[int]) -> list[tuple]:
    """All permutations of {0..n-1} with cycle type ``shape`` that fix ``a``."""
    target = tuple(sorted(shape))
    out = []
    others = [x for x in range(n) if x != a]
    for imgs in itertools.permutations(others):
        p = list(range(n))
        for x, y in zip(others, imgs):
            p[x] = y
        t = tuple(p)
        if _shape(t) == target:
            out.append(t)
    return out


def _shape(p: tuple) -> tuple:
    seen = [False] * len(p)
    lens = []
    for i in range(len(p)):
        if not seen[i]:
            L = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                L += 1
            lens.append(L)
    return tuple(sorted(lens))


def _search_shape(n: int, shape: list[int]) -> set[tuple]:
    """Indecomposable quandles whose translations all have cycle type ``shape``.

    Element 0 gets the standard translation of that type (every class has a
    relabeling of this form).  The translation of the least unassigned
    element is then chosen freely and the law φ_{a▷b} = φ_a φ_b φ_a^-1 fills
    in everything it forces.
    """
    phi0 = _standard_perm(shape)
    cache: dict[int, list[tuple]] = {}
    found: set[tuple] = set()
    phi: list[tuple | None] = [None] * n
    phinv: list[tuple | None] = [None] * n
    done: list[int] = []

    def inv(p):
        r = [0] * n
        for i, x in enumerate(p):
            r[x] = i
        return tuple(r)

    def conj(a, b, ai):
        # a b a^-1
        return tuple(a[b[ai[x]]] for x in range(n))

    def assign(a: int, p: tuple) -> bool:
        stack = [(a, p)]
        while stack:
            a, p = stack.pop()
            if phi[a] is not None:
                if phi[a] != p:
                    return False
                continue
            pi = inv(p)
            phi[a], phinv[a] = p, pi
            done.append(a)
            for b in list(done):
                pb, pbi = phi[b], phinv[b]
                stack.append((pb[a], conj(pb, p, pbi)))
                stack.append((pbi[a], conj(pbi, p, pb)))
                stack.append((p[b], conj(p, pb, pi)))
                stack.append((pi[b], conj(pi, pb, p)))
        return True

    def undo(mark: int) -> None:
        while len(done) > mark:
            a = done.pop()
            phi[a] = phinv[a] = None

    def rec() -> None:
        try:
            a = phi.index(None)
        except ValueError:
            X = RackTable(phi)
            if is_indecomposable(X):
                found.add(canonical_form(X).rows)
            return
        if a not in cache:
            cache[a] = _perms_fixing(a, n, shape)
        for p in cache[a]:
            mark = len(done)
            if assign(a, p):
                rec()
            undo(mark)

    if assign(0, phi0):
        rec()
    return found


def brute_force_indecomposable(n: int) -> list[RackTable]:
    """Indecomposable quandles of size n by exhaustive table search (n <= 8).

    Independent of the group machinery; used to cross-check the homogeneous construction.
    """
    if not 1 <= n <= BRUTE_FORCE_MAX:
        raise ValueError(f"brute-force search supports sizes 1..{BRUTE_FORCE_MAX}")
    if n == 1:
        return [_singleton()]
    found: set[tuple] = set()
    for shape in _partitions(n):
        # quandle translations fix a point; the identity gives the trivial quandle
        if shape[0] != 1 or shape == [1] * n:
            continue
        found |= _search_shape(n, shape)
    return sorted(RackTable(rows) for rows in found)


# ---------------------------------------------------------------- quandle database


class QuandleDatabase:
    """Classified quandles by size; indices follow ascending canonical tables."""

    def __init__(self, records: Iterable[QuandleRecord] = (), sizes: Iterable[int] = ()):
        self._by_size: dict[int, list[QuandleRecord]] = {n: [] for n in sizes}
        for r in records:
            self._by_size.setdefault(r.size, []).append(r)
        for n, recs in self._by_size.items():
            recs.sort(key=lambda r: r.index)
            if [r.index for r in recs] != list(range(1, len(recs) + 1)):
                raise QuandleDBError(f"size {n}: indices are not 1..{len(recs)}")

    @property
    def sizes(self) -> list[int]:
        return sorted(self._by_size)

    def add_size(self, n: int, records: Sequence[QuandleRecord]) -> None:
        self._by_size[n] = list(records)

    def records(self, n: int) -> list[QuandleRecord]:
        if n not in self._by_size:
            raise KeyError(f"size {n} is not in the database")
        return list(self._by_size[n])

    def count(self, n: int) -> int:
        return len(self.records(n))

    def get(self, n: int, i: int) -> QuandleRecord:
        recs = self.records(n)
        if not 1 <= i <= len(recs):
            raise IndexError(f"index {i} out of range: q({n}) = {len(recs)}")
        return recs[i - 1]

    def __contains__(self, n: int) -> bool:
        return n in self._by_size

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuandleDatabase):
            return NotImplemented
        return self._by_size == other._by_size


def small_quandle(db: QuandleDatabase, n: int, i: int) -> RackTable:
    """The i-th indecomposable quandle of size n (1-based)."""
    return db.get(n, i).table


def _db_body(db: QuandleDatabase) -> str:
    parts = []
    for n in db.sizes:
        recs = db.records(n)
        parts.append(f"[{n} {len(recs)}]\n")
        for r in recs:
            parts.append(format_table(r.table))
    return "".join(parts)


def format_db(db: QuandleDatabase) -> str:
    body = _db_body(db)
    digest = hashlib.sha256(body.encode()).hexdigest()
    return f"{DB_VERSION}\nsha256 {digest}\n{body}"


def db_write(records: QuandleDatabase | Iterable[QuandleRecord], path, sizes=()) -> None:
    """Write a database (or a list of records) to ``path``.

    ``sizes`` adds empty sections, e.g. for sizes with no quandles.
    """
    db = records if isinstance(records, QuandleDatabase) else QuandleDatabase(records, sizes)
    with open(path, "w") as fh:
        fh.write(format_db(db))


def parse_db(text: str, check_canonical: bool = True) -> QuandleDatabase:
    lines = text.splitlines()
    if not lines or lines[0].strip() != DB_VERSION:
        raise QuandleDBError(f"unsupported database version (expected {DB_VERSION})")
    if len(lines) < 2 or not lines[1].startswith("sha256 "):
        raise QuandleDBError("missing checksum line")
    body = "".join(ln + "\n" for ln in lines[2:])
    if hashlib.sha256(body.encode()).hexdigest() != lines[1].split()[1]:
        raise QuandleDBError("checksum mismatch")
    db = QuandleDatabase()
    pos = 2
    while pos < len(lines):
        head = lines[pos].strip()
        pos += 1
        if not head:
            continue
        if not (head.startswith("[") and head.endswith("]")):
            raise QuandleDBError(f"line {pos}: expected a section header, got {head!r}")
        try:
            n, count = (int(x) for x in head[1:-1].split())
        except ValueError:
            raise QuandleDBError(f"line {pos}: bad section header {head!r}") from None
        tables = []
        for _ in range(count):
            chunk = lines[pos : pos + n + 1]
            pos += n + 1
            try:
                X = parse_table("\n".join(chunk))
            except RackError as exc:
                raise QuandleDBError(f"size {n}: {exc}") from None
            if X.size != n:
                raise QuandleDBError(f"size {n}: table of size {X.size}")
            if check_canonical and canonical_form(X) != X:
                raise QuandleDBError(f"size {n}: table is not in canonical form")
            tables.append(X)
        if tables != sorted(tables):
            raise QuandleDBError(f"size {n}: tables are not in canonical order")
        db.add_size(n, [QuandleRecord.from_table(t, i) for i, t in enumerate(tables, 1)])
    return db


def db_read(path, check_canonical: bool = True) -> QuandleDatabase:
    with open(path) as fh:
        return parse_db(fh.read(), check_canonical)


def build_database(
    sizes: Iterable[int], groups_dir: str | None = None, jobs: int = 1
) -> QuandleDatabase:
    """Classify each size, using ``groups_dir/trans<n>.grp`` above the built-in range."""
    db = QuandleDatabase()
    for n in sizes:
        groups = None
        if n > MAX_DEGREE:
            groups = find_group_db(groups_dir, n) if groups_dir else None
            if groups is None:
                raise GroupDataError(f"no group database for degree {n}")
        db.add_size(n, classify_indecomposable(n, groups, jobs))
    return db

