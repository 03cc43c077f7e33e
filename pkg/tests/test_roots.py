from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import RootSystemError
from src.lattice import integer_matrix as im
from src.lattice import lattice_from_gram
from src.roots import (
    RootType,
    ade_decompose,
    affine_data,
    cartan_gram,
    contribution,
    enumerate_roots,
    kodaira_candidates,
    parse_kodaira,
    parse_root_type,
    roots_of_type,
)

ALL_TYPES = (
    [RootType(family="A", rank=n) for n in range(1, 25)]
    + [RootType(family="D", rank=n) for n in range(4, 25)]
    + [RootType(family="E", rank=n) for n in (6, 7, 8)]
)
SMALL_TYPES = [t for t in ALL_TYPES if t.rank <= 9]


def names(types):
    return [str(t) for t in types]


class TestRootTypes:
    def test_parse(self):
        assert parse_root_type("d16") == RootType(family="D", rank=16)

    @pytest.mark.parametrize("text", ["D3", "E9", "A0", "B4", ""])
    def test_out_of_range(self, text):
        with pytest.raises(RootSystemError):
            parse_root_type(text)

    def test_a1_cartan(self):
        assert [list(r) for r in cartan_gram(parse_root_type("A1")).gram] == [[2]]

    def test_a8_cartan(self):
        lattice = cartan_gram(parse_root_type("A8"))
        assert lattice.rank == 8
        assert lattice.determinant == 9
        for i in range(8):
            for j in range(8):
                expected = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
                assert lattice.gram[i][j] == expected

    def test_e8_unimodular(self):
        assert cartan_gram(parse_root_type("E8")).determinant == 1


class TestEnumeration:
    @pytest.mark.parametrize("name, count", [("A8", 72), ("E8", 240), ("D4", 24), ("E6", 72)])
    def test_root_counts(self, name, count):
        assert len(enumerate_roots(cartan_gram(parse_root_type(name)))) == count

    def test_no_roots_in_four(self):
        assert enumerate_roots(lattice_from_gram([[4]])) == set()

    def test_indefinite_rejected(self):
        with pytest.raises(RootSystemError, match="positive definite"):
            enumerate_roots(lattice_from_gram([[0, 1], [1, 0]]))

    @pytest.mark.parametrize("t", ALL_TYPES, ids=str)
    def test_closed_form_counts(self, t):
        assert len(roots_of_type(t)) == t.root_count

    @pytest.mark.parametrize("t", SMALL_TYPES, ids=str)
    def test_enumeration_matches_closed_form(self, t):
        assert len(enumerate_roots(cartan_gram(t))) == t.root_count


class TestDecomposition:
    @pytest.mark.parametrize("t", SMALL_TYPES, ids=str)
    def test_decompose_cartan(self, t):
        assert ade_decompose(cartan_gram(t)) == [t]

    def test_empty(self):
        assert ade_decompose(lattice_from_gram([])) == []

    def test_mixed_sum_sorted(self):
        gram = [[2, -1, 0, 0], [-1, 2, 0, 0], [0, 0, 2, 0], [0, 0, 0, 4]]
        assert names(ade_decompose(lattice_from_gram(gram))) == ["A2", "A1"]

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.sampled_from(["A1", "A2", "A3", "D4", "A4"]), min_size=1, max_size=3))
    def test_direct_sums(self, parts):
        types = [parse_root_type(p) for p in parts]
        n = sum(t.rank for t in types)
        gram = [[0] * n for _ in range(n)]
        offset = 0
        for t in types:
            block = cartan_gram(t).gram
            for i in range(t.rank):
                for j in range(t.rank):
                    gram[offset + i][offset + j] = block[i][j]
            offset += t.rank
        result = ade_decompose(lattice_from_gram(gram))
        assert sorted(names(result)) == sorted(parts)


class TestKodaira:
    @pytest.mark.parametrize("root, expected", [
        ("A8", ["I9"]), ("A1", ["I2", "III"]), ("A2", ["I3", "IV"]), ("D12", ["I8*"]),
        ("D4", ["I0*"]), ("E6", ["IV*"]), ("E7", ["III*"]), ("E8", ["II*"]),
    ])
    def test_candidates(self, root, expected):
        assert names(kodaira_candidates(parse_root_type(root))) == expected

    @pytest.mark.parametrize("text", ["I16", "I8*", "II*", "III", "I0*"])
    def test_parse_renders_back(self, text):
        assert str(parse_kodaira(text)) == text

    def test_i0_rejected(self):
        with pytest.raises(RootSystemError):
            parse_kodaira("I0")


class TestAffineData:
    def test_ii_star_marks_in_listing_order(self):
        assert affine_data(parse_kodaira("II*")).marks == (1, 2, 3, 4, 5, 6, 4, 2, 3)

    def test_i4_star_marks(self):
        assert affine_data(parse_kodaira("I4*")).marks == (1, 1, 2, 2, 2, 2, 2, 1, 1)

    def test_cycle(self):
        diagram = affine_data(parse_kodaira("I9"))
        assert diagram.marks == (1,) * 9
        assert diagram.as_graph().number_of_edges() == 9

    def test_i2_double_edge(self):
        assert affine_data(parse_kodaira("I2")).gram == ((-2, 2), (2, -2))

    @pytest.mark.parametrize("text", ["I1", "II"])
    def test_irreducible_rejected(self, text):
        with pytest.raises(RootSystemError, match="irreducible"):
            affine_data(parse_kodaira(text))

    @pytest.mark.parametrize("text", ["I2", "I3", "I16", "I0*", "I3*", "I12*", "III", "IV", "IV*", "III*", "II*"])
    def test_marks_span_kernel(self, text):
        diagram = affine_data(parse_kodaira(text))
        assert not any(im.vec_mat(diagram.marks, diagram.gram))
        assert im.rational_rank(diagram.gram) == diagram.size - 1
        assert diagram.marks[0] == 1


class TestContribution:
    @pytest.mark.parametrize("kodaira, index, expected", [
        ("I16", 8, Fraction(4)),
        ("I16", 5, Fraction(55, 16)),
        ("I9", 3, Fraction(2)),
        ("III*", 6, Fraction(3, 2)),
        ("IV*", 4, Fraction(4, 3)),
        ("I4*", 1, Fraction(1)),
        ("I4*", 7, Fraction(2)),
        ("II*", 0, Fraction(0)),
    ])
    def test_values(self, kodaira, index, expected):
        assert contribution(parse_kodaira(kodaira), index) == expected

    def test_cyclic_symmetry(self):
        k = parse_kodaira("I13")
        for i in range(13):
            assert contribution(k, i) == contribution(k, (13 - i) % 13)

    def test_relative_to_another_zero(self):
        k = parse_kodaira("I16")
        assert contribution(k, 10, zero_index=5) == Fraction(55, 16)

    def test_non_simple_component_rejected(self):
        with pytest.raises(RootSystemError, match="multiplicity"):
            contribution(parse_kodaira("II*"), 3)
