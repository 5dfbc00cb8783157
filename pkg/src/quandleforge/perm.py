"""Permutations and permutation groups on the points 1..n.

Permutations compose as functions: ``(p * q)(x) == p(q(x))``.  Internally the
images are kept as 0-based tuples; everything that crosses the public API
(points, image sequences, cycle strings) is 1-based.

Groups carry a base and strong generating set built by the deterministic
Schreier-Sims algorithm with the base taken in the order 1, 2, ..., n (or a
caller-chosen prefix followed by the remaining points in ascending order).
"""

from __future__ import annotations

import itertools
import math
import re
from collections import deque
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CycleParseError",
    "NotInGroupError",
    "Permutation",
    "PermGroup",
    "parse_cycles",
    "parse_perm_list",
    "symmetric_group",
    "alternating_group",
    "group_order",
    "orbit",
    "is_transitive",
    "stabilizer",
    "center",
    "conjugacy_class",
    "are_conjugate_subgroups",
    "coset_representatives",
]

# Groups up to this order are handled by plain element scans.
SCAN_LIMIT = 10_000


class CycleParseError(ValueError):
    """Malformed cycle notation.  ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotInGroupError(ValueError):
    pass


# -- raw tuple helpers (0-based) ---------------------------------------------


def _mul(a: tuple, b: tuple) -> tuple:
    return tuple(map(a.__getitem__, b))


def _inv(a: tuple) -> tuple:
    r = [0] * len(a)
    for i, x in enumerate(a):
        r[x] = i
    return tuple(r)


def _identity(n: int) -> tuple:
    return tuple(range(n))


def _cycles(a: tuple) -> list[list[int]]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = a[j]
        out.append(cyc)
    return out


def _cycle_type(a: tuple) -> tuple[int, ...]:
    return tuple(sorted(len(c) for c in _cycles(a)))


def _order(a: tuple) -> int:
    return math.lcm(*(len(c) for c in _cycles(a))) if a else 1


class Permutation:
    """An immutable permutation of {1..degree}.

    >>> p = Permutation([2, 3, 1, 4])
    >>> str(p), p(1), p.order()
    ('(1,2,3)', 2, 3)
    """

    __slots__ = ("_a", "_hash")

    def __init__(self, images: Iterable[int]):
        imgs = tuple(int(x) - 1 for x in images)
        if sorted(imgs) != list(range(len(imgs))):
            raise ValueError(f"not a permutation of 1..{len(imgs)}: {[x + 1 for x in imgs]}")
        self._a = imgs
        self._hash = hash(imgs)

    @classmethod
    def _raw(cls, a: tuple) -> "Permutation":
        p = object.__new__(cls)
        p._a = a
        p._hash = hash(a)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._raw(_identity(degree))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Product of the given cycles, leftmost factor outermost."""
        p = cls.identity(degree)
        for c in cycles:
            img = list(range(degree))
            for k, x in enumerate(c):
                img[x - 1] = c[(k + 1) % len(c)] - 1
            p = p * cls._raw(tuple(img))
        return p

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple[int, ...]:
        """1-based image sequence ``(p(1), ..., p(n))``."""
        return tuple(x + 1 for x in self._a)

    @property
    def array(self) -> tuple[int, ...]:
        """0-based image tuple (shared, do not mutate)."""
        return self._a

    def __call__(self, point: int) -> int:
        return self._a[point - 1] + 1

    def __mul__(self, other: "Permutation") -> "Permutation":
        if not isinstance(other, Permutation):
            return NotImplemented
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return Permutation._raw(_mul(self._a, other._a))

    def inverse(self) -> "Permutation":
        return Permutation._raw(_inv(self._a))

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = Permutation.identity(self.degree)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self, by: "Permutation") -> "Permutation":
        """``by * self * by**-1``."""
        return by * self * by.inverse()

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self._a))

    def order(self) -> int:
        return _order(self._a)

    def cycles(self) -> list[list[int]]:
        """Non-trivial cycles, each starting at its smallest point."""
        return [[x + 1 for x in c] for c in _cycles(self._a) if len(c) > 1]

    def cycle_type(self) -> tuple[int, ...]:
        """Sorted cycle lengths, fixed points included."""
        return _cycle_type(self._a)

    def fixed_points(self) -> list[int]:
        return [i + 1 for i, x in enumerate(self._a) if i == x]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._a == other._a

    def __lt__(self, other: "Permutation") -> bool:
        return self._a < other._a

    def __le__(self, other: "Permutation") -> bool:
        return self._a <= other._a

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(,)|(\d+)|(\S))")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1,2)(3,4,5)"`` into a permutation.

    Cycles are multiplied left to right in the written order, i.e. the
    result is ``c1 * c2 * ...`` under functional composition.  ``""`` and
    ``"()"`` denote the identity.
    """
    cycles: list[list[int]] = []
    current: list[int] | None = None
    expect_number = False
    for m in _TOKEN.finditer(text):
        pos = m.start(m.lastindex)
        if m.group(1):
            if current is not None:
                raise CycleParseError("nested '('", pos)
            current, expect_number = [], True
        elif m.group(2):
            if current is None:
                raise CycleParseError("unbalanced ')'", pos)
            if expect_number and current:
                raise CycleParseError("dangling ','", pos)
            if len(set(current)) != len(current):
                raise CycleParseError("repeated point in cycle", pos)
            cycles.append(current)
            current = None
        elif m.group(3):
            if current is None or expect_number:
                raise CycleParseError("unexpected ','", pos)
            expect_number = True
        elif m.group(4):
            if current is None or not expect_number:
                raise CycleParseError("unexpected integer", pos)
            x = int(m.group(4))
            if not 1 <= x <= degree:
                raise CycleParseError(f"point {x} outside 1..{degree}", pos)
            current.append(x)
            expect_number = False
        else:
            raise CycleParseError(f"unexpected character {m.group(5)!r}", pos)
    if current is not None:
        raise CycleParseError("unbalanced '('", len(text))
    return Permutation.from_cycles([c for c in cycles if c], degree)


def parse_perm_list(text: str, degree: int) -> list[Permutation]:
    """Parse a comma separated list of permutations, e.g. ``"(1,2),(1,2,3)"``.

    Commas inside parentheses belong to cycles; top-level commas separate
    permutations.  GAP-style brackets around the list are accepted.
    """
    stripped = text.strip()
    if stripped.startswith("[") and stripped.endswith("]"):
        text = stripped[1:-1]
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise CycleParseError("unbalanced ')'", i)
        elif ch == "," and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth:
        raise CycleParseError("unbalanced '('", len(text))
    parts.append(text[start:])
    parts = [p for p in parts if p.strip()]
    return [parse_cycles(p, degree) for p in parts]


# -- Schreier-Sims -------------------------------------------------------------


class _Level:
    __slots__ = ("base", "gens", "trans", "tinv")

    def __init__(self, base: int, gens: list):
        self.base = base
        self.gens = gens
        self.trans: dict[int, tuple] = {}
        self.tinv: dict[int, tuple] = {}


def _build_transversal(level: _Level, n: int) -> None:
    b = level.base
    trans = {b: _identity(n)}
    queue = deque([b])
    while queue:
        x = queue.popleft()
        ux = trans[x]
        for s in level.gens:
            y = s[x]
            if y not in trans:
                trans[y] = _mul(s, ux)
                queue.append(y)
    level.trans = trans
    level.tinv = {x: _inv(u) for x, u in trans.items()}


def _sift(levels: list[_Level], g: tuple, start: int = 0) -> tuple[tuple, int]:
    for i in range(start, len(levels)):
        lv = levels[i]
        ui = lv.tinv.get(g[lv.base])
        if ui is None:
            return g, i
        g = _mul(ui, g)
    return g, len(levels)


def _schreier_sims(gens: list[tuple], n: int, base_prefix: Sequence[int] = ()) -> list[_Level]:
    ident = _identity(n)
    order = list(base_prefix) + [p for p in range(n) if p not in set(base_prefix)]
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    if not gens:
        return []

    def first_moved(g: tuple) -> int:
        for p in order:
            if g[p] != p:
                return p
        raise AssertionError("identity has no moved point")

    # prefix points head the base even when every generator fixes them
    base: list[int] = list(base_prefix)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(first_moved(g))
    strong = list(gens)

    def level_gens(i: int) -> list:
        fixed = base[:i]
        return [s for s in strong if all(s[b] == b for b in fixed)]

    levels = [_Level(b, level_gens(i)) for i, b in enumerate(base)]
    for lv in levels:
        _build_transversal(lv, n)

    i = len(levels) - 1
    while i >= 0:
        lv = levels[i]
        added = False
        for beta, ub in list(lv.trans.items()):
            for s in lv.gens:
                sb = s[beta]
                # Schreier generator u_{s(beta)}^-1 * s * u_beta fixes the base point
                h = _mul(lv.tinv[sb], _mul(s, ub))
                if h == ident:
                    continue
                residue, j = _sift(levels, h, i + 1)
                if j < len(levels) or residue != ident:
                    if j == len(levels):
                        base.append(first_moved(residue))
                        levels.append(_Level(base[-1], []))
                    strong.append(residue)
                    for l in range(i + 1, j + 1):
                        levels[l].gens = level_gens(l)
                        _build_transversal(levels[l], n)
                    i = j
                    added = True
                    break
            if added:
                break
        if not added:
            i -= 1
    return levels


class PermGroup:
    """A permutation group given by generators.

    The stabilizer chain is built on first use and then frozen; a group is
    safe to share once any order/membership query has been answered.
    """

    def __init__(self, generators: Iterable[Permutation], degree: int | None = None):
        gens = list(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        for g in gens:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(
            dict.fromkeys(g for g in gens if not g.is_identity())
        )
        self._chains: dict[tuple, list[_Level]] = {}

    @classmethod
    def _from_raw(cls, gens: Iterable[tuple], degree: int) -> "PermGroup":
        return cls((Permutation._raw(g) for g in gens), degree)

    def _chain(self, prefix: tuple = ()) -> list[_Level]:
        ch = self._chains.get(prefix)
        if ch is None:
            ch = _schreier_sims([g.array for g in self.generators], self.degree, prefix)
            self._chains[prefix] = ch
        return ch

    # -- basic queries ---------------------------------------------------------

    def order(self) -> int:
        return math.prod(len(lv.trans) for lv in self._chain())

    @property
    def base(self) -> list[int]:
        return [lv.base + 1 for lv in self._chain()]

    def strong_generators(self) -> list[Permutation]:
        seen = dict.fromkeys(g for lv in self._chain() for g in lv.gens)
        return [Permutation._raw(g) for g in seen]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = _sift(self._chain(), g.array)
        return residue == _identity(self.degree)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    __hash__ = None  # groups are compared structurally

    def is_trivial(self) -> bool:
        return not self.generators

    def is_abelian(self) -> bool:
        gs = self.generators
        return all(a * b == b * a for a, b in itertools.combinations(gs, 2))

    def iter_raw(self) -> Iterator[tuple]:
        chain = self._chain()
        if not chain:
            yield _identity(self.degree)
            return
        reps = [list(lv.trans.values()) for lv in chain]
        for combo in itertools.product(*reps):
            g = combo[0]
            for u in combo[1:]:
                g = _mul(g, u)
            yield g

    def elements(self) -> list[Permutation]:
        """All elements, sorted lexicographically by image sequence."""
        return [Permutation._raw(a) for a in sorted(self.iter_raw())]

    def __iter__(self) -> Iterator[Permutation]:
        return (Permutation._raw(a) for a in self.iter_raw())

    # -- actions ----------------------------------------------------------------

    def orbit(self, point: int) -> list[int]:
        _check_point(point, self.degree)
        seen = {point - 1}
        queue = deque([point - 1])
        gens = [g.array for g in self.generators]
        while queue:
            x = queue.popleft()
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(x + 1 for x in seen)

    def orbits(self) -> list[list[int]]:
        out, seen = [], set()
        for p in range(1, self.degree + 1):
            if p not in seen:
                o = self.orbit(p)
                seen.update(o)
                out.append(o)
        return out

    def is_transitive(self) -> bool:
        return len(self.orbit(1)) == self.degree

    def transversal(self, point: int) -> dict[int, Permutation]:
        """Map each point ``q`` of the orbit to some ``u`` with ``u(point) == q``."""
        lv = self._chain((point - 1,))
        if not lv or lv[0].base != point - 1:
            return {point: self.identity()}
        return {q + 1: Permutation._raw(u) for q, u in lv[0].trans.items()}

    def stabilizer(self, point: int) -> "PermGroup":
        _check_point(point, self.degree)
        chain = self._chain((point - 1,))
        if not chain or chain[0].base != point - 1:
            return PermGroup(self.generators, self.degree)
        gens = dict.fromkeys(g for lv in chain[1:] for g in lv.gens)
        sub = PermGroup._from_raw(gens, self.degree)
        # the tail of the chain is a stabilizer chain for the subgroup
        sub._chains[()] = chain[1:]
        return sub

    # -- structure --------------------------------------------------------------

    def centralizes(self, g: Permutation) -> bool:
        return all(g * h == h * g for h in self.generators)

    def center(self) -> list[Permutation]:
        """Elements commuting with every generator, sorted, identity first."""
        if self.order() <= SCAN_LIMIT:
            found = [g for g in self if self.centralizes(g)]
        else:
            found = [g for g in self._orbitwise_centralizer() if g in self]
        return sorted(found)

    def _orbitwise_centralizer(self) -> Iterator[Permutation]:
        """Orbit-preserving elements of Sym(n) that commute with the group.

        Such an element is fixed by the image ``y`` of one point ``r`` per
        orbit: ``c(u(r)) = u(y)`` for a transversal element ``u``.  The centre
        is contained in this set because it preserves every orbit.
        """
        n = self.degree
        gens = [g.array for g in self.generators]
        per_orbit = []
        for orb in self.orbits():
            r = orb[0] - 1
            trans = {q - 1: u.array for q, u in self.transversal(orb[0]).items()}
            options = []
            for y in orb:
                y -= 1
                partial = {}
                for q, u in trans.items():
                    partial[q] = u[y]
                if len(set(partial.values())) != len(partial):
                    continue
                if all(partial[s[x]] == s[partial[x]] for x in partial for s in gens):
                    options.append(partial)
            per_orbit.append(options)
        for combo in itertools.product(*per_orbit):
            img = [0] * n
            for part in combo:
                for x, y in part.items():
                    img[x] = y
            yield Permutation._raw(tuple(img))

    def conjugacy_class(self, g: Permutation) -> list[Permutation]:
        if g not in self:
            raise NotInGroupError(f"{g} is not an element of the group")
        gens = [(s.array, _inv(s.array)) for s in self.generators]
        seen = {g.array}
        queue = deque([g.array])
        while queue:
            x = queue.popleft()
            for s, si in gens:
                y = _mul(_mul(s, x), si)
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return [Permutation._raw(a) for a in sorted(seen)]

    def derived_subgroup(self) -> "PermGroup":
        gens = self.generators
        comms = [a * b * a.inverse() * b.inverse() for a, b in itertools.product(gens, gens)]
        return self.normal_closure(comms)

    def normal_closure(self, elements: Iterable[Permutation]) -> "PermGroup":
        current = PermGroup([], self.degree)
        pending = deque(elements)
        while pending:
            x = pending.popleft()
            if x in current:
                continue
            current = PermGroup(current.generators + (x,), self.degree)
            for s in self.generators:
                pending.append(x.conjugate(s))
        return current

    def __repr__(self) -> str:
        return f"PermGroup([{', '.join(map(str, self.generators))}], degree={self.degree})"


def _check_point(point: int, degree: int) -> None:
    if not 1 <= point <= degree:
        raise ValueError(f"point {point} outside 1..{degree}")


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], 1)
    gens = [Permutation.from_cycles([[1, 2]], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([list(range(1, n + 1))], n))
    return PermGroup(gens, n)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], n)
    gens = [Permutation.from_cycles([[1, 2, k]], n) for k in range(3, n + 1)]
    return PermGroup(gens, n)


# -- module-level operations ---------------------------------------------------


def group_order(G: PermGroup) -> int:
    return G.order()


def orbit(G: PermGroup, point: int) -> list[int]:
    return G.orbit(point)


def is_transitive(G: PermGroup) -> bool:
    return G.is_transitive()


def stabilizer(G: PermGroup, point: int) -> PermGroup:
    return G.stabilizer(point)


def center(G: PermGroup) -> list[Permutation]:
    return G.center()


def conjugacy_class(G: PermGroup, g: Permutation) -> list[Permutation]:
    return G.conjugacy_class(g)


def _orbit_signature(G: PermGroup) -> list[int]:
    return sorted(len(o) for o in G.orbits())


def are_conjugate_subgroups(G: PermGroup, H1: PermGroup, H2: PermGroup) -> bool:
    """True iff ``g * H1 * g**-1 == H2`` for some ``g`` in ``G``."""
    for H in (H1, H2):
        if not H.is_subgroup_of(G):
            raise NotInGroupError("subgroup is not contained in G")
    if H1.order() != H2.order() or _orbit_signature(H1) != _orbit_signature(H2):
        return False
    if H1 == H2:
        return True
    for g in G:
        if all(h.conjugate(g) in H2 for h in H1.generators):
            return True
    return False


def coset_representatives(G: PermGroup, H: PermGroup) -> list[Permutation]:
    """One representative per left coset ``r*H``, identity first.

    When ``H`` is the full stabilizer of a point ``p`` the cosets are in
    bijection with the orbit of ``p``; the representatives are then the
    transversal elements in ascending order of ``r(p)``.  Otherwise cosets are
    discovered breadth-first from the identity using the generators of ``G``.
    """
    if not H.is_subgroup_of(G):
        raise NotInGroupError("H is not a subgroup of G")
    index = G.order() // H.order()
    fixed = [p for p in range(1, G.degree + 1) if all(h(p) == p for h in H.generators)]
    for p in fixed:
        orb = G.orbit(p)
        if len(orb) == index:
            trans = G.transversal(p)
            return [trans[q] for q in sorted(trans, key=lambda q: (q != p, q))]
    reps = [G.identity()]
    inverses = [G.identity()]
    i = 0
    while i < len(reps) and len(reps) < index:
        r = reps[i]
        for s in G.generators:
            cand = s * r
            if not any((ri * cand) in H for ri in inverses):
                reps.append(cand)
                inverses.append(cand.inverse())
        i += 1
    return reps
