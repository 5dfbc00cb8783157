"""Re-derive the reference tables with whatever group data is available."""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable, Iterator

from . import known_values as kv
from .classify import QuandleRecord, classify_indecomposable, find_group_db
from .construct import affine_quandle_zn, conjugation_rack, dihedral_quandle
from .envgroup import finite_enveloping_order
from .homology import rack_homology
from .perm import alternating_group, parse_cycles, symmetric_group
from .rack import inner_group
from .transitive import MAX_DEGREE
from .typed import type_d_census


@dataclass
class Check:
    name: str
    status: str  # PASS, FAIL or SKIP
    detail: str = ""
    seconds: float = 0.0

    def line(self) -> str:
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.status} {self.name}{extra} [{self.seconds:.1f}s]"


def enveloping_reference_racks():
    S4, S5, A4 = symmetric_group(4), symmetric_group(5), alternating_group(4)
    return [
        dihedral_quandle(3),
        conjugation_rack(A4, [parse_cycles("(1,2,3)", 4)]),
        affine_quandle_zn(5, 2),
        conjugation_rack(S4, [parse_cycles("(1,2)", 4)]),
        affine_quandle_zn(7, 3),
        conjugation_rack(S4, [parse_cycles("(1,2,3,4)", 4)]),
        conjugation_rack(S5, [parse_cycles("(1,2)", 5)]),
    ]


class Classifier:
    """Caches classifications; sizes above the built-in range need group files."""

    def __init__(self, groups_dir: str | None = None, jobs: int = 1):
        self.groups_dir = groups_dir
        self.jobs = jobs
        self._cache: dict[int, list[QuandleRecord] | None] = {}

    def available(self, n: int) -> bool:
        if n <= MAX_DEGREE:
            return True
        return bool(self.groups_dir) and os.path.exists(
            os.path.join(self.groups_dir, f"trans{n}.grp")
        )

    def records(self, n: int) -> list[QuandleRecord] | None:
        if n not in self._cache:
            if not self.available(n):
                self._cache[n] = None
            else:
                groups = find_group_db(self.groups_dir, n) if n > MAX_DEGREE else None
                self._cache[n] = classify_indecomposable(n, groups, self.jobs)
        return self._cache[n]


def _timed(name: str, fn: Callable[[], tuple[str, str]]) -> Check:
    t = time.perf_counter()
    status, detail = fn()
    return Check(name, status, detail, time.perf_counter() - t)


def run_checks(
    groups_dir: str | None = None, jobs: int = 1, max_size: int = 12
) -> Iterator[Check]:
    cls = Classifier(groups_dir, jobs)

    def enveloping():
        got = [
            (inner_group(X).order(), finite_enveloping_order(X)) for X in enveloping_reference_racks()
        ]
        want = [(i, e) for _, i, e in kv.ENVELOPING_ORDERS]
        return ("PASS" if got == want else "FAIL"), f"got {got}"

    yield _timed("inner/enveloping orders", enveloping)

    for n in range(1, max_size + 1):

        def count(n=n):
            recs = cls.records(n)
            if recs is None:
                return "SKIP", "no group data"
            want = kv.QUANDLE_COUNTS[n]
            return ("PASS" if len(recs) == want else "FAIL"), f"q({n}) = {len(recs)}, expected {want}"

        yield _timed(f"quandle count q({n})", count)

    for n in sorted(kv.H2_TORSION):
        if n > max_size:
            continue

        def h2(n=n):
            recs = cls.records(n)
            if recs is None:
                return "SKIP", "no group data"
            res = [rack_homology(r.table, 2) for r in recs]
            ok = all(h.betti == 1 for h in res) and sorted(h.torsion for h in res) == kv.H2_TORSION[n]
            return ("PASS" if ok else "FAIL"), ", ".join(str(h) for h in res)

        yield _timed(f"H2 torsion size {n}", h2)

    for n in range(4, max_size + 1):

        def typed(n=n):
            recs = cls.records(n)
            if recs is None:
                return "SKIP", "no group data"
            c = type_d_census(recs)
            want = kv.type_d_count(n)
            return ("PASS" if c == want else "FAIL"), f"{c} of type D, expected {want}"

        yield _timed(f"type-D census size {n}", typed)
