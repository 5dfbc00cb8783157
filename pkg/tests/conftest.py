import functools
import os
from pathlib import Path

import pytest

from quandleforge.classify import classify_indecomposable, find_group_db
from quandleforge.construct import conjugation_rack, dihedral_quandle
from quandleforge.perm import alternating_group, parse_cycles
from quandleforge.transitive import MAX_DEGREE

REPO = Path(__file__).resolve().parent.parent


def groups_dir() -> str:
    return os.environ.get("QUANDLEFORGE_GROUPS_DIR", str(REPO / "groups"))


def have_groups(n: int) -> bool:
    return n <= MAX_DEGREE or os.path.exists(os.path.join(groups_dir(), f"trans{n}.grp"))


@functools.lru_cache(maxsize=None)
def classified(n: int):
    """Indecomposable quandle records of size n, shared across test modules."""
    groups = None
    if n > MAX_DEGREE:
        groups = find_group_db(groups_dir(), n)
        if groups is None:
            pytest.skip(f"no transitive-group data for degree {n}")
    return classify_indecomposable(n, groups)


@pytest.fixture
def D4():
    return dihedral_quandle(4)


@pytest.fixture
def D3():
    return dihedral_quandle(3)


@pytest.fixture
def T():
    return conjugation_rack(alternating_group(4), [parse_cycles("(1,2,3)", 4)])


# acceptance criteria report: (criterion, status, detail) in run order
ACCEPTANCE: list[tuple[int, str, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k, status, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {k:>2}: {status} {detail}")
