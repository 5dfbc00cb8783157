import itertools

import pytest

from quandleforge.classify import (
    GroupDataError,
    builtin_transitive_groups,
    format_group_db,
    parse_group_db,
    load_group_db,
    write_group_db,
)
from quandleforge.known_values import TRANSITIVE_COUNTS
from quandleforge.perm import are_conjugate_subgroups, symmetric_group
from quandleforge.transitive import enumerate_transitive_groups


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def _closure(gens, n):
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _compose(g, a)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return frozenset(seen)


def transitive_classes_bruteforce(n):
    """Every subgroup of S_n for n <= 4 is 2-generated, so closing all pairs
    finds every subgroup; keep the transitive ones up to conjugacy."""
    perms = list(itertools.permutations(range(n)))
    subgroups = {_closure([a, b], n) for a in perms for b in perms}
    transitive = [H for H in subgroups if {h[0] for h in H} == set(range(n))]
    classes = set()
    for H in transitive:
        inv = {p: tuple(sorted(range(n), key=lambda i: p[i])) for p in perms}
        key = min(
            tuple(sorted(_compose(_compose(g, h), inv[g]) for h in H)) for g in perms
        )
        classes.add(key)
    return classes


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts_match_subgroup_enumeration(n):
    assert len(builtin_transitive_groups(n)) == len(transitive_classes_bruteforce(n))


@pytest.mark.parametrize("n", range(1, 8))
def test_counts_small(n):
    assert len(enumerate_transitive_groups(n)) == TRANSITIVE_COUNTS[n]


def test_count_degree_8():
    assert len(builtin_transitive_groups(8)) == 50


@pytest.mark.parametrize("n", [4, 5, 6])
def test_groups_transitive_and_pairwise_non_conjugate(n):
    groups = list(builtin_transitive_groups(n))
    Sn = symmetric_group(n)
    assert all(G.is_transitive() for G in groups)
    for a, b in itertools.combinations(groups, 2):
        if a.order() == b.order():
            assert not are_conjugate_subgroups(Sn, a, b)


def test_unsupported_degree():
    with pytest.raises(ValueError):
        builtin_transitive_groups(9)


class TestGroupFiles:
    def test_single_line(self):
        db = parse_group_db("3; (1,2,3)\n")
        assert len(db) == 1 and db.degree == 3
        assert next(iter(db)).order() == 3

    def test_not_transitive(self):
        with pytest.raises(GroupDataError):
            parse_group_db("4; (1,2),(3,4)\n")

    def test_comments_and_blank_lines(self):
        db = parse_group_db("# header\n\n3; (1,2,3)  # A3\n3; (1,2), (1,2,3)\n")
        assert sorted(G.order() for G in db) == [3, 6]

    def test_mixed_degrees_rejected(self):
        with pytest.raises(GroupDataError):
            parse_group_db("3; (1,2,3)\n4; (1,2,3,4)\n")

    def test_degree_8_round_trip(self, tmp_path):
        db = builtin_transitive_groups(8)
        path = tmp_path / "trans8.grp"
        write_group_db(db, path)
        back = load_group_db(path, 8)
        assert format_group_db(back) == format_group_db(db)
        assert [G.order() for G in back] == [G.order() for G in db]
