import itertools
import random

import pytest

from quandleforge.construct import conjugation_rack, dihedral_quandle
from quandleforge.perm import Permutation, alternating_group, parse_cycles, symmetric_group
from quandleforge.rack import (
    RackError,
    RackTable,
    canonical_form,
    components,
    find_isomorphism,
    format_table,
    inner_group,
    is_crossed_set,
    is_faithful,
    is_indecomposable,
    is_isomorphism,
    is_rack,
    parse_table,
    read_rack,
    relabel,
    subrack_closure,
    translations,
    trivial_quandle,
    validate_rack,
    write_rack,
)

from conftest import classified

D4_TABLE = [[1, 4, 3, 2], [3, 2, 1, 4], [1, 4, 3, 2], [3, 2, 1, 4]]


def random_relabel(X, rng):
    imgs = list(range(1, X.size + 1))
    rng.shuffle(imgs)
    return relabel(X, imgs), imgs


class TestValidate:
    def test_d4(self):
        X = validate_rack(D4_TABLE)
        assert X.is_quandle and X.table == D4_TABLE

    def test_not_bijective(self):
        with pytest.raises(RackError, match="row 1"):
            validate_rack([[1, 1], [2, 2]])

    def test_d3(self):
        assert validate_rack([[1, 3, 2], [3, 2, 1], [2, 1, 3]]).is_quandle

    def test_not_self_distributive(self):
        # rows are bijections but (1 2) and (1 3) do not distribute
        with pytest.raises(RackError, match="self-distributivity"):
            validate_rack([[2, 1, 3], [3, 2, 1], [1, 2, 3]])

    def test_rack_not_quandle(self):
        X = validate_rack([[2, 1], [2, 1]])
        assert not X.is_quandle

    def test_is_rack_exhaustive_size_2(self):
        # the racks on two points: rows equal to the same involution or identity
        found = []
        for r1 in itertools.permutations([1, 2]):
            for r2 in itertools.permutations([1, 2]):
                if is_rack([list(r1), list(r2)]):
                    found.append((r1, r2))
        assert sorted(found) == [((1, 2), (1, 2)), ((2, 1), (2, 1))]

    def test_out_of_range(self):
        with pytest.raises(RackError):
            validate_rack([[1, 3], [1, 2]])


class TestTextFormat:
    def test_round_trip(self, tmp_path, T):
        path = tmp_path / "t.rack"
        write_rack(T, path)
        assert read_rack(path) == T
        assert parse_table(format_table(T)) == T

    def test_format(self, D4):
        assert format_table(D4) == "4\n1 4 3 2\n3 2 1 4\n1 4 3 2\n3 2 1 4\n"

    @pytest.mark.parametrize(
        "text", ["", "x\n", "2\n1 2\n", "2\n1 2\n2 1 1\n", "2\n1 2\n1 2\n1 2\n"]
    )
    def test_malformed(self, text):
        with pytest.raises(RackError):
            parse_table(text)


class TestStructure:
    def test_translations(self, D4, D3):
        assert [str(p) for p in translations(D4)] == ["(2,4)", "(1,3)", "(2,4)", "(1,3)"]
        assert [str(p) for p in translations(D3)] == ["(2,3)", "(1,3)", "(1,2)"]
        assert all(p.is_identity() for p in translations(trivial_quandle(3)))

    def test_inner_group(self, T, D3):
        inn = inner_group(T)
        assert inn.order() == 12 and inn.is_transitive()
        assert inner_group(D3).order() == 6
        assert inner_group(trivial_quandle(3)).order() == 1

    def test_components(self, D4, D3):
        assert components(D4).as_lists() == [[1, 3], [2, 4]]
        assert components(D3).as_lists() == [[1, 2, 3]]
        assert components(trivial_quandle(2)).as_lists() == [[1], [2]]

    def test_indecomposable(self, D4, T):
        assert not is_indecomposable(D4)
        assert is_indecomposable(dihedral_quandle(5))
        assert is_indecomposable(T)

    def test_subrack_closure(self, D4):
        assert subrack_closure(D4, [1]) == [1]
        assert subrack_closure(D4, [1, 2]) == [1, 2, 3, 4]
        assert subrack_closure(D4, [1, 2, 3, 4]) == [1, 2, 3, 4]

    def test_crossed_and_faithful(self, D4, D3, T):
        assert is_crossed_set(D4) and is_crossed_set(T) and is_crossed_set(D3)
        assert not is_faithful(D4)
        assert is_faithful(D3)
        assert not is_faithful(trivial_quandle(2))

    def test_phi_conjugation_law(self, T):
        phi = translations(T)
        for i in range(1, 5):
            for j in range(1, 5):
                assert phi[T.op(i, j) - 1] == phi[i - 1] * phi[j - 1] * phi[i - 1].inverse()


class TestCanonicalForm:
    def test_relabel_invariance(self):
        rng = random.Random(5)
        for X in [dihedral_quandle(6), dihedral_quandle(7)] + [r.table for r in classified(6)]:
            c = canonical_form(X)
            for _ in range(20):
                Y, _ = random_relabel(X, rng)
                assert canonical_form(Y) == c

    def test_canonical_is_min_over_all_relabelings(self):
        # exhaustive oracle on small racks
        for X in [dihedral_quandle(4), dihedral_quandle(5), trivial_quandle(3),
                  conjugation_rack(alternating_group(4), [parse_cycles("(1,2,3)", 4)])]:
            best = min(relabel(X, list(p)) for p in itertools.permutations(range(1, X.size + 1)))
            assert canonical_form(X) == best

    def test_distinguishes_size_6(self):
        a, b = (r.table for r in classified(6))
        assert canonical_form(a) != canonical_form(b)

    def test_trivial_fixed(self):
        assert canonical_form(trivial_quandle(4)) == trivial_quandle(4)


class TestIsomorphism:
    def test_tetrahedra(self):
        A4 = alternating_group(4)
        T1 = conjugation_rack(A4, [parse_cycles("(1,2,3)", 4)])
        T2 = conjugation_rack(A4, [parse_cycles("(1,3,2)", 4)])
        sigma = find_isomorphism(T1, T2)
        assert sigma is not None and is_isomorphism(T1, T2, sigma)

    def test_self(self, T):
        sigma = find_isomorphism(T, T)
        assert sigma is not None and is_isomorphism(T, T, sigma)

    def test_none(self, D3):
        assert find_isomorphism(D3, trivial_quandle(3)) is None
        assert find_isomorphism(D3, dihedral_quandle(5)) is None

    def test_random_relabelings(self):
        rng = random.Random(9)
        X = conjugation_rack(symmetric_group(5), [parse_cycles("(1,2)", 5)])
        for _ in range(10):
            Y, _ = random_relabel(X, rng)
            sigma = find_isomorphism(X, Y)
            assert sigma is not None and is_isomorphism(X, Y, sigma)

    def test_relabel_convention(self, D4):
        sigma = Permutation([2, 3, 4, 1])
        Y = relabel(D4, sigma)
        assert is_isomorphism(D4, Y, sigma)
