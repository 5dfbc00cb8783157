import pytest

from quandleforge.construct import affine_quandle_zn, conjugation_rack, dihedral_quandle
from quandleforge.envgroup import (
    CosetOverflowError,
    GroupPresentation,
    abelian_invariants,
    enveloping_presentation,
    finite_enveloping_order,
    format_abelian,
    free_reduce,
    todd_coxeter,
)
from quandleforge.perm import parse_cycles, symmetric_group
from quandleforge.rack import inner_group, trivial_quandle


def test_free_reduce():
    assert free_reduce([1, 2, -2, -1, 3]) == [3]
    assert free_reduce([1, -1]) == []
    with pytest.raises(ValueError):
        free_reduce([0])


def test_presentation_validation():
    with pytest.raises(ValueError):
        GroupPresentation(2, [[3]])


class TestEnvelopingPresentation:
    def test_one_point(self):
        P = enveloping_presentation(trivial_quandle(1))
        assert P.generators == 1
        assert [1] in P.relators
        assert todd_coxeter(P).size == 1

    def test_d3_census(self, D3):
        P = enveloping_presentation(D3)
        assert P.generators == 3
        assert len(P.relators) == 9 + 3
        assert P.relators[9:] == [[1, 1], [2, 2], [3, 3]]

    def test_tetrahedron_cubes(self, T):
        P = enveloping_presentation(T)
        assert P.relators[16:] == [[g] * 3 for g in range(1, 5)]

    def test_infinite_has_no_power_relators(self, D3):
        assert len(enveloping_presentation(D3, finite=False).relators) == 9


class TestToddCoxeter:
    def test_cyclic(self):
        assert todd_coxeter(GroupPresentation(1, [[1, 1]])).size == 2

    def test_d3(self, D3):
        assert todd_coxeter(enveloping_presentation(D3)).size == 6

    def test_tetrahedron(self, T):
        table = todd_coxeter(enveloping_presentation(T))
        assert table.size == 24
        # the regular representation generates a group of the same order
        assert table.group().order() == 24

    def test_relators_hold_in_table(self, T):
        P = enveloping_presentation(T)
        table = todd_coxeter(P)
        for c in range(table.size):
            for w in P.relators:
                assert table.trace(w, c) == c

    def test_known_groups(self):
        # S3 = <a, b | a^2, b^3, (ab)^2>, Q8 = <i, j | i^4, i^2 j^-2, i j i j^-1>
        assert todd_coxeter(GroupPresentation(2, [[1, 1], [2, 2, 2], [1, 2, 1, 2]])).size == 6
        q8 = GroupPresentation(2, [[1] * 4, [1, 1, -2, -2], [1, 2, 1, -2]])
        assert todd_coxeter(q8).size == 8

    def test_overflow(self):
        with pytest.raises(CosetOverflowError):
            todd_coxeter(GroupPresentation(2, [[1, 1]]), max_cosets=50)

    @pytest.mark.parametrize(
        "X,order",
        [
            (affine_quandle_zn(5, 2), 20),
            (conjugation_rack(symmetric_group(4), [parse_cycles("(1,2)", 4)]), 24),
            (conjugation_rack(symmetric_group(4), [parse_cycles("(1,2,3,4)", 4)]), 96),
        ],
    )
    def test_enveloping_orders(self, X, order):
        assert finite_enveloping_order(X) == order


class TestAbelianInvariants:
    def test_cyclic(self):
        assert abelian_invariants(GroupPresentation(1, [[1, 1]])) == (0, [2])

    def test_d3(self, D3):
        assert abelian_invariants(enveloping_presentation(D3)) == (0, [2])

    def test_free(self):
        assert abelian_invariants(GroupPresentation(2, [])) == (2, [])

    def test_against_derived_subgroup(self, T):
        # |G/G'| from the coset table's permutation group
        for X in [T, affine_quandle_zn(5, 2), dihedral_quandle(5)]:
            G = todd_coxeter(enveloping_presentation(X)).group()
            betti, factors = abelian_invariants(enveloping_presentation(X))
            assert betti == 0
            prod = 1
            for d in factors:
                prod *= d
            assert prod == G.order() // G.derived_subgroup().order()

    def test_infinite_enveloping_group_of_indecomposable(self, T):
        assert abelian_invariants(enveloping_presentation(T, finite=False)) == (1, [])

    def test_format(self):
        assert format_abelian(1, [2, 4]) == "Z x Z_2 x Z_4"
        assert format_abelian(0, []) == "0"
        assert format_abelian(2, []) == "Z^2"


def test_inner_group_is_quotient(T):
    # Inn(T) has order 12 and is a quotient of the order-24 finite enveloping group
    assert inner_group(T).order() == 12
    assert finite_enveloping_order(T) % 12 == 0
