import itertools
import random

import pytest

from quandleforge.perm import (
    CycleParseError,
    Permutation,
    PermGroup,
    alternating_group,
    are_conjugate_subgroups,
    center,
    conjugacy_class,
    coset_representatives,
    group_order,
    is_transitive,
    orbit,
    parse_cycles,
    parse_perm_list,
    stabilizer,
    symmetric_group,
)


def G(gens, n):
    return PermGroup([parse_cycles(g, n) for g in gens], n)


def closure_order(gens):
    """Independent oracle: breadth-first closure of the generators."""
    n = len(gens[0])
    seen = {tuple(range(1, n + 1))}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[p[i] - 1] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return len(seen)


class TestParse:
    @pytest.mark.parametrize(
        "text,n,images",
        [("(2,4)", 4, (1, 4, 3, 2)), ("()", 3, (1, 2, 3)), ("(1,2,3)", 4, (2, 3, 1, 4))],
    )
    def test_images(self, text, n, images):
        assert parse_cycles(text, n).images == images

    @pytest.mark.parametrize("bad", ["(1,2", "(1,a)", "(1,5)", "1,2)", "(1,1)"])
    def test_errors(self, bad):
        with pytest.raises(CycleParseError):
            parse_cycles(bad, 4)

    def test_str_round_trip(self):
        rng = random.Random(3)
        for _ in range(50):
            imgs = list(range(1, 8))
            rng.shuffle(imgs)
            p = Permutation(imgs)
            assert parse_cycles(str(p), 7) == p

    def test_perm_list(self):
        ps = parse_perm_list("[ (2,4), (1,3), () ]", 4)
        assert [p.images for p in ps] == [(1, 4, 3, 2), (3, 2, 1, 4), (1, 2, 3, 4)]

    def test_composition_is_functional(self):
        p, q = parse_cycles("(1,2)", 3), parse_cycles("(2,3)", 3)
        # (p*q)(1) = p(q(1)) = p(1) = 2
        assert (p * q).images[0] == 2


class TestOrder:
    def test_s3(self):
        assert group_order(G(["(1,2)", "(1,2,3)"], 3)) == 6

    def test_cyclic(self):
        assert group_order(G(["(1,2,3)"], 3)) == 3

    def test_a4_against_closure(self):
        gens = [parse_cycles("(1,2,3)", 4), parse_cycles("(1,2,4)", 4)]
        assert closure_order([g.images for g in gens]) == 12
        assert group_order(PermGroup(gens, 4)) == 12

    def test_random_against_closure(self):
        rng = random.Random(11)
        for _ in range(30):
            n = rng.randint(2, 6)
            gens = []
            for _ in range(rng.randint(1, 3)):
                imgs = list(range(1, n + 1))
                rng.shuffle(imgs)
                gens.append(tuple(imgs))
            assert group_order(PermGroup([Permutation(g) for g in gens], n)) == closure_order(gens)

    def test_symmetric_and_alternating(self):
        assert [symmetric_group(n).order() for n in range(1, 7)] == [1, 2, 6, 24, 120, 720]
        assert alternating_group(5).order() == 60


class TestOrbitsAndStabilizers:
    def test_orbit(self):
        assert sorted(orbit(G(["(2,4)", "(1,3)"], 4), 1)) == [1, 3]
        assert orbit(G([], 3), 2) == [2]
        assert sorted(orbit(G(["(1,2,3)"], 3), 1)) == [1, 2, 3]

    def test_transitivity(self):
        assert not is_transitive(G(["(2,4)", "(1,3)"], 4))
        assert is_transitive(symmetric_group(3))
        assert not is_transitive(G(["(1,2)"], 3))

    def test_stabilizer(self):
        assert stabilizer(symmetric_group(3), 1).order() == 2
        assert stabilizer(alternating_group(4), 4).order() == 3
        assert stabilizer(G([], 3), 2).order() == 1

    def test_stabilizer_fixes_point(self):
        S = stabilizer(symmetric_group(5), 1)
        assert S.order() == 24
        assert all(g.images[0] == 1 for g in S.elements())


class TestClasses:
    def test_center(self):
        assert [g.is_identity() for g in center(symmetric_group(3))] == [True]
        assert len(center(G(["(1,2,3)"], 3))) == 3
        assert len(center(G(["(1,2)", "(3,4)"], 4))) == 4

    def test_center_against_definition(self):
        for H in [symmetric_group(4), alternating_group(4), G(["(1,2,3,4)", "(1,3)"], 4)]:
            elems = H.elements()
            want = {g for g in elems if all(g * h == h * g for h in elems)}
            assert set(center(H)) == want

    def test_conjugacy_class(self):
        assert len(conjugacy_class(symmetric_group(3), parse_cycles("(1,2)", 3))) == 3
        assert len(conjugacy_class(alternating_group(4), parse_cycles("(1,2,3)", 4))) == 4
        assert len(conjugacy_class(symmetric_group(4), Permutation.identity(4))) == 1

    def test_conjugate_subgroups(self):
        S3 = symmetric_group(3)
        assert are_conjugate_subgroups(S3, G(["(1,2)"], 3), G(["(1,3)"], 3))
        assert not are_conjugate_subgroups(S3, G(["(1,2)"], 3), G(["(1,2,3)"], 3))
        assert are_conjugate_subgroups(S3, S3, S3)

    def test_coset_representatives(self):
        S3, A4 = symmetric_group(3), alternating_group(4)
        assert len(coset_representatives(S3, G(["(2,3)"], 3))) == 3
        reps = coset_representatives(S3, S3)
        assert len(reps) == 1 and reps[0].is_identity()
        reps = coset_representatives(A4, stabilizer(A4, 4))
        assert len(reps) == 4
        # distinct cosets: images of 4 differ
        assert len({r.images[3] for r in reps}) == 4

    def test_derived_subgroup_quotient(self):
        # |G/G'| from the derived subgroup matches the brute-force abelianization count
        S4 = symmetric_group(4)
        assert S4.order() // S4.derived_subgroup().order() == 2
        assert alternating_group(4).derived_subgroup().order() == 4


def test_all_permutations_of_s4_are_members():
    S4 = symmetric_group(4)
    for imgs in itertools.permutations(range(1, 5)):
        assert S4.contains(Permutation(imgs))
    assert not alternating_group(4).contains(parse_cycles("(1,2)", 4))
