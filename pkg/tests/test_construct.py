import itertools

import pytest

from quandleforge.construct import (
    affine_quandle_fq,
    affine_quandle_zn,
    conjugation_rack,
    dihedral_quandle,
    homogeneous_quandle,
    make_field,
)
from quandleforge.perm import (
    PermGroup,
    Permutation,
    alternating_group,
    parse_cycles,
    symmetric_group,
)
from quandleforge.rack import (
    canonical_form,
    find_isomorphism,
    inner_group,
    is_indecomposable,
    translations,
    trivial_quandle,
)

from conftest import classified

A4, S3, S4, S5 = alternating_group(4), symmetric_group(3), symmetric_group(4), symmetric_group(5)


def pc(text, n):
    return parse_cycles(text, n)


def assert_rack_and_phi_law(X):
    phi = translations(X)
    n = X.size
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                assert X.op(i, X.op(j, k)) == X.op(X.op(i, j), X.op(i, k))
            assert phi[X.op(i, j) - 1] == phi[i - 1] * phi[j - 1] * phi[i - 1].inverse()


class TestDihedral:
    def test_d4(self):
        assert dihedral_quandle(4).table == [[1, 4, 3, 2], [3, 2, 1, 4], [1, 4, 3, 2], [3, 2, 1, 4]]

    def test_d3(self):
        assert dihedral_quandle(3).table == [[1, 3, 2], [3, 2, 1], [2, 1, 3]]

    def test_d2_trivial(self):
        assert dihedral_quandle(2) == trivial_quandle(2)

    def test_bad_size(self):
        with pytest.raises(ValueError):
            dihedral_quandle(1)


class TestAffine:
    def test_aff52(self):
        X = affine_quandle_zn(5, 2)
        assert X.size == 5 and X.is_quandle and is_indecomposable(X)

    def test_identity_gives_trivial(self):
        assert affine_quandle_zn(6, 1) == trivial_quandle(6)

    def test_aff43_vs_d4(self):
        # direct table comparison: (1-3)a + 3b = -2a + 3b = 2a - b (mod 4)
        X = affine_quandle_zn(4, 3)
        assert X == dihedral_quandle(4)

    def test_non_unit(self):
        with pytest.raises(ValueError):
            affine_quandle_zn(6, 2)

    def test_fq_tetrahedron(self):
        F = make_field(2, 2)
        X = affine_quandle_fq(F, F.generator)
        T = conjugation_rack(A4, [pc("(1,2,3)", 4)])
        assert is_indecomposable(X)
        assert canonical_form(X) == canonical_form(T)

    def test_fq_alpha_one(self):
        assert affine_quandle_fq(make_field(3, 2), 1) == trivial_quandle(9)

    def test_fq_prime_matches_zn(self):
        assert canonical_form(affine_quandle_fq(make_field(5), 2)) == canonical_form(affine_quandle_zn(5, 2))

    def test_fq_alpha_zero(self):
        with pytest.raises(ValueError):
            affine_quandle_fq(make_field(5), 0)


def _monic_irreducible_quadratics(p):
    """Exhaustive oracle: x^2 + b x + c is irreducible iff it has no root in Z_p."""
    out = []
    for b in range(p):
        for c in range(p):
            if all((x * x + b * x + c) % p for x in range(p)):
                out.append([c, b, 1])
    return out


class TestFields:
    def test_f4(self):
        assert make_field(2, 2).modulus == [1, 1, 1]

    def test_z5(self):
        F = make_field(5, 1)
        assert F.q == 5
        assert all(F.mul(a, b) == a * b % 5 for a in range(5) for b in range(5))

    def test_f9(self):
        irr = _monic_irreducible_quadratics(3)
        assert len(irr) == 3
        smallest = min(irr, key=lambda m: sum(c * 3**i for i, c in enumerate(m)))
        assert smallest == [1, 0, 1]
        assert make_field(3, 2).modulus == smallest

    @pytest.mark.parametrize("p,k", [(2, 1), (2, 3), (3, 2), (2, 4), (5, 2), (7, 2), (2, 6)])
    def test_field_axioms(self, p, k):
        F = make_field(p, k)
        q = F.q
        els = range(q)
        for a in els:
            assert F.add(a, 0) == a and F.mul(a, 1) == a
            assert F.add(a, F.neg(a)) == 0
            if a:
                assert F.mul(a, F.inv(a)) == 1
            for b in els:
                assert F.add(a, b) == F.add(b, a)
                assert F.mul(a, b) == F.mul(b, a)
        for a, b, c in itertools.islice(itertools.product(els, repeat=3), 0, None, max(1, q**3 // 3000)):
            assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
            assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        # multiplicative group is cyclic
        g, x, seen = F.generator, 1, set()
        for _ in range(q - 1):
            seen.add(x)
            x = F.mul(x, g)
        assert len(seen) == q - 1

    def test_bad_inputs(self):
        with pytest.raises(ValueError):
            make_field(4, 1)
        with pytest.raises(ValueError):
            make_field(2, 17)


class TestConjugation:
    def test_s3_transpositions_is_d3(self):
        X = conjugation_rack(S3, [pc("(1,2)", 3)])
        assert X.size == 3 and canonical_form(X) == canonical_form(dihedral_quandle(3))

    def test_tetrahedron(self):
        X = conjugation_rack(A4, [pc("(1,2,3)", 4)])
        assert X.size == 4 and is_indecomposable(X)

    def test_s5_transpositions(self):
        X = conjugation_rack(S5, [pc("(1,2)", 5)])
        assert X.size == 10 and is_indecomposable(X)

    def test_union_of_classes_decomposable(self):
        X = conjugation_rack(S4, [pc("(1,2)", 4), pc("(1,2,3)", 4)])
        assert X.size == 14 and not is_indecomposable(X)

    def test_element_not_in_group(self):
        with pytest.raises(ValueError):
            conjugation_rack(A4, [pc("(1,2)", 4)])


class TestHomogeneous:
    def test_s3_is_d3(self):
        X = homogeneous_quandle(S3, PermGroup([pc("(2,3)", 3)], 3), pc("(2,3)", 3))
        assert canonical_form(X) == canonical_form(dihedral_quandle(3))

    def test_identity_gives_trivial(self):
        X = homogeneous_quandle(S4, PermGroup([pc("(1,2)", 4)], 4), Permutation.identity(4))
        assert X == trivial_quandle(12)

    def test_z_must_centralize(self):
        with pytest.raises(ValueError):
            homogeneous_quandle(S3, PermGroup([pc("(2,3)", 3)], 3), pc("(1,2)", 3))

    def test_subgroup_check(self):
        with pytest.raises(ValueError):
            homogeneous_quandle(A4, PermGroup([pc("(1,2)", 4)], 4), Permutation.identity(4))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_reconstruction(self, n):
        """An indecomposable quandle is (Inn X, Stab(x0), phi_{x0})."""
        for rec in classified(n):
            X = rec.table
            G = inner_group(X)
            H = G.stabilizer(1)
            z = translations(X)[0]
            assert H.centralizes(z)
            Y = homogeneous_quandle(G, H, z)
            assert find_isomorphism(X, Y) is not None


def test_constructor_outputs_obey_laws():
    F9 = make_field(3, 2)
    for X in [
        dihedral_quandle(6),
        affine_quandle_zn(7, 3),
        affine_quandle_fq(F9, F9.generator),
        conjugation_rack(S4, [pc("(1,2,3,4)", 4)]),
        conjugation_rack(S4, [pc("(1,2)", 4), pc("(1,2,3)", 4)]),
        homogeneous_quandle(S4, PermGroup([pc("(3,4)", 4)], 4), pc("(3,4)", 4)),
    ]:
        assert_rack_and_phi_law(X)
