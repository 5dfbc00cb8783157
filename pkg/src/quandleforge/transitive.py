"""Exhaustive enumeration of transitive permutation groups of small degree.

Completeness rests on two facts.  Let G be transitive of degree n and, for
each prime p dividing n, let P_p be a Sylow p-subgroup of G.  Every orbit of
P_p has length divisible by the p-part of n, so the subgroup generated by one
Sylow subgroup per prime is already transitive.  Starting from all such
"Sylow-generated" transitive groups (found inside Sylow subgroups of S_n) and
repeatedly adjoining one element of S_n at a time therefore reaches every
transitive group, and every intermediate group stays transitive.

Subgroups are handled as explicit element sets, so this is only meant for
degree <= 8 (|S_8| = 40320).
"""

from __future__ import annotations

import itertools
import logging
import math
from collections import deque

from .perm import PermGroup, _identity, _inv, _mul, _schreier_sims

log = logging.getLogger(__name__)

MAX_DEGREE = 8


def _closure(gens: list[tuple], n: int) -> frozenset:
    ident = _identity(n)
    seen = {ident}
    frontier = [ident]
    add = seen.add
    while frontier:
        nxt = []
        for x in frontier:
            get = x.__getitem__
            for g in gens:
                y = tuple(map(get, g))
                if y not in seen:
                    add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def _key(elements) -> frozenset:
    return frozenset(bytes(e) for e in elements)


def _orbit_lengths(gens: list[tuple], n: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, x in enumerate(g):
            a, b = find(i), find(x)
            if a != b:
                parent[a] = b
    counts: dict[int, int] = {}
    for i in range(n):
        r = find(i)
        counts[r] = counts.get(r, 0) + 1
    return sorted(counts.values())


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _sylow_generators(n: int, p: int) -> list[tuple]:
    """Generators of a Sylow p-subgroup of S_n (iterated wreath products)."""
    gens = []
    offset = 0
    digits = []
    m = n
    while m:
        digits.append(m % p)
        m //= p
    for k in range(len(digits) - 1, 0, -1):
        for _ in range(digits[k]):
            # block of size p**k starting at offset
            for level in range(1, k + 1):
                size = p**level
                sub = size // p
                img = list(range(n))
                for x in range(size):
                    img[offset + x] = offset + (x + sub) % size
                gens.append(tuple(img))
            offset += p**k
    return gens


def _subgroups(gens: list[tuple], n: int) -> list[frozenset]:
    """All subgroups of the (small) group generated by ``gens``."""
    whole = sorted(_closure(gens, n))
    ident = _identity(n)
    start = frozenset([ident])
    found = {start: []}
    queue = deque([start])
    while queue:
        K = queue.popleft()
        kgens = found[K]
        done = set(K)
        for g in whole:
            if g in done:
                continue
            for k in K:
                done.add(_mul(k, g))
            new = _closure(kgens + [g], n)
            if new not in found:
                found[new] = kgens + [g]
                queue.append(new)
    return [(elems, gs) for elems, gs in found.items()]


class _Registry:
    """Conjugacy classes of subgroups of S_n, keyed by every conjugate."""

    def __init__(self, n: int):
        self.n = n
        self.lookup: dict[frozenset, int] = {}
        self.classes: list[tuple[list[tuple], frozenset]] = []
        self.sym_gens = [tuple([1, 0] + list(range(2, n)))] if n > 1 else []
        if n > 2:
            self.sym_gens.append(tuple(list(range(1, n)) + [0]))

    def find(self, elements: frozenset) -> int | None:
        return self.lookup.get(_key(elements))

    def add(self, gens: list[tuple], elements: frozenset) -> int:
        idx = len(self.classes)
        self.classes.append((gens, elements))
        start = list(elements)
        self.lookup[_key(start)] = idx
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for s in self.sym_gens:
                si = _inv(s)
                conj = [_mul(_mul(s, x), si) for x in cur]
                k = _key(conj)
                if k not in self.lookup:
                    self.lookup[k] = idx
                    queue.append(conj)
        return idx


def _reduce_generators(gens: list[tuple], n: int, order: int) -> list[tuple]:
    kept: list[tuple] = []
    elems = frozenset([_identity(n)])
    for g in sorted(gens):
        if g in elems:
            continue
        kept.append(g)
        elems = _closure(kept, n)
        if len(elems) == order:
            break
    return kept


def _seeds(n: int) -> list[list[tuple]]:
    """Generating sets of the Sylow-generated transitive subgroups (with repeats)."""
    parts = []
    for p, e in _prime_factors(n).items():
        pe = p**e
        reg = _Registry(n)
        for elems, gs in _subgroups(_sylow_generators(n, p), n):
            if gs and all(L % pe == 0 for L in _orbit_lengths(gs, n)):
                if reg.find(elems) is None:
                    reg.add(gs, elems)
        parts.append([gs for gs, _ in reg.classes])
    if len(parts) == 1:
        return parts[0]
    combos = [list(gs) for gs in parts[0]]
    for part in parts[1:]:
        conjugated = [c for gs in part for c in _conjugate_generating_sets(gs, n)]
        combos = [base + c for base in combos for c in conjugated]
    return [gs for gs in combos if _orbit_lengths(gs, n) == [n]]


def _conjugate_generating_sets(gens: list[tuple], n: int) -> list[list[tuple]]:
    """One generating set for each distinct S_n-conjugate of <gens>."""
    reg = _Registry(n)
    elems = _closure(gens, n)
    seen = {_key(elems)}
    out = [list(gens)]
    queue = deque([(list(gens), list(elems))])
    while queue:
        gs, es = queue.popleft()
        for s in reg.sym_gens:
            si = _inv(s)
            ces = [_mul(_mul(s, x), si) for x in es]
            k = _key(ces)
            if k not in seen:
                seen.add(k)
                cgs = [_mul(_mul(s, g), si) for g in gs]
                out.append(cgs)
                queue.append((cgs, ces))
    return out


def _double_coset_reps(H: frozenset, hgens: list[tuple], n: int):
    visited = set(H)
    for g in itertools.permutations(range(n)):
        if g in visited:
            continue
        yield g
        visited.add(g)
        queue = [g]
        while queue:
            x = queue.pop()
            for h in hgens:
                for y in (_mul(h, x), _mul(x, h)):
                    if y not in visited:
                        visited.add(y)
                        queue.append(y)


def enumerate_transitive_groups(n: int) -> list[PermGroup]:
    """All transitive subgroups of S_n up to conjugacy (``n <= 8``).

    Sorted by group order, then by the generator image sequences.
    """
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"built-in enumeration supports degree 1..{MAX_DEGREE}, got {n}")
    if n == 1:
        return [PermGroup([], 1)]
    sym_order = math.factorial(n)
    reg = _Registry(n)
    for gs in _seeds(n):
        elems = _closure(gs, n)
        if reg.find(elems) is None:
            reg.add(gs, elems)
    log.debug("degree %d: %d seed classes", n, len(reg.classes))

    i = 0
    while i < len(reg.classes):
        hgens, H = reg.classes[i]
        i += 1
        if len(H) == sym_order:
            continue
        for g in _double_coset_reps(H, hgens, n):
            gens = hgens + [g]
            order = math.prod(len(lv.trans) for lv in _schreier_sims(gens, n))
            if order == sym_order or (order * 2 == sym_order and n > 2):
                # S_n and A_n are characterised by their order
                if any(len(e) == order for _, e in reg.classes):
                    continue
            elems = _closure(gens, n)
            if reg.find(elems) is None:
                reg.add(gens, elems)
        log.debug("degree %d: processed %d/%d classes", n, i, len(reg.classes))

    groups = []
    for gens, elems in reg.classes:
        small = _reduce_generators(gens, n, len(elems))
        groups.append((len(elems), sorted(small), small))
    groups.sort(key=lambda t: (t[0], [tuple(g) for g in t[1]]))
    return [PermGroup._from_raw(gs, n) for _, gs, _ in groups]
