from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import LatticeError
from src.lattice import (
    FiniteAbelianGroup,
    Sublattice,
    direct_sum,
    discriminant_form,
    discriminant_group,
    is_primitive,
    lattice_from_gram,
    orthogonal_complement,
    quotient_group,
    rescale,
    saturation,
    signature,
    smith_form,
    two_elementary_invariants,
)
from src.lattice import integer_matrix as im
from src.roots import cartan_gram, parse_root_type

U = lattice_from_gram([[0, 1], [1, 0]], label="U")


def root_lattice(name):
    return cartan_gram(parse_root_type(name))


@st.composite
def even_lattices(draw, max_rank=3):
    """2·M·Mᵀ for a lower-triangular M with nonzero diagonal."""
    n = draw(st.integers(1, max_rank))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i):
            m[i][j] = draw(st.integers(-3, 3))
        m[i][i] = draw(st.sampled_from([-3, -2, -1, 1, 2, 3]))
    gram = [[2 * sum(m[i][k] * m[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
    return lattice_from_gram(gram)


class TestConstruction:
    def test_rank_one(self):
        lattice = lattice_from_gram([[2]])
        assert lattice.rank == 1
        assert lattice.is_even

    def test_hyperbolic_plane(self):
        assert U.determinant == -1
        assert signature(U) == (1, 1)

    def test_odd_lattice_flagged(self):
        assert not lattice_from_gram([[2, 1], [1, 1]]).is_even

    def test_non_symmetric_rejected(self):
        with pytest.raises(LatticeError, match=r"not symmetric at \(1,0\)"):
            lattice_from_gram([[2, 1], [0, 2]])

    def test_degenerate_rejected_with_kernel_vector(self):
        with pytest.raises(LatticeError, match="kernel vector"):
            lattice_from_gram([[2, 2], [2, 2]])

    @pytest.mark.parametrize("entry", [Fraction(5, 2), 0.5, "2", None])
    def test_non_integral_entry_rejected(self, entry):
        with pytest.raises(LatticeError, match="matrix entry"):
            lattice_from_gram([[2, entry], [entry, 2]])

    def test_integral_fraction_accepted(self):
        lattice = lattice_from_gram([[Fraction(4, 2), 1], [1, 2.0]])
        assert lattice.gram == ((2, 1), (1, 2))
        assert all(type(x) is int for row in lattice.gram for x in row)

    def test_non_integral_sublattice_basis_rejected(self):
        with pytest.raises(LatticeError, match="not an integer"):
            Sublattice(ambient=U, basis=[[Fraction(1, 2), 0]])


class TestDeterminantAndSignature:
    @pytest.mark.parametrize("name, det", [("A8", 9), ("E8", 1), ("D8", 4), ("A1", 2)])
    def test_root_lattice_determinants(self, name, det):
        assert root_lattice(name).determinant == det

    def test_e8_positive_definite(self):
        assert signature(root_lattice("E8")) == (8, 0)

    def test_u_plus_e8_squared(self):
        lattice = direct_sum(U, root_lattice("E8"), root_lattice("E8"))
        assert lattice.rank == 18
        assert abs(lattice.determinant) == 1

    def test_a8_squared(self):
        assert abs(direct_sum(root_lattice("A8"), root_lattice("A8")).determinant) == 81

    def test_diagonal_sum(self):
        two = lattice_from_gram([[2]])
        assert [list(r) for r in direct_sum(two, two).gram] == [[2, 0], [0, 2]]

    @settings(max_examples=100, deadline=None)
    @given(even_lattices(), even_lattices())
    def test_direct_sum_determinant_is_multiplicative(self, a, b):
        assert direct_sum(a, b).determinant == a.determinant * b.determinant


class TestRescale:
    def test_u2(self):
        assert [list(r) for r in rescale(U, 2).gram] == [[0, 2], [2, 0]]

    def test_identity(self):
        lattice = root_lattice("D8")
        assert rescale(lattice, 1) == lattice

    def test_sign_flip(self):
        assert [list(r) for r in rescale(lattice_from_gram([[2]]), -1).gram] == [[-2]]

    def test_zero_rejected(self):
        with pytest.raises(LatticeError):
            rescale(U, 0)


class TestDiscriminant:
    def test_a8_cyclic_of_order_nine(self):
        group = discriminant_group(root_lattice("A8"))
        assert group.invariant_factors == (9,)

    def test_a8_form_up_to_sign(self):
        group = discriminant_group(root_lattice("A8"))
        # positive definite A8 carries 8/9 on a generator; the negative copy carries 10/9
        assert Fraction(8, 9) in group.q_orbit(0)
        assert Fraction(10, 9) in group.negated().q_orbit(0)

    def test_e8_trivial(self):
        assert discriminant_group(root_lattice("E8")).order == 1

    def test_d8_two_elementary(self):
        group = discriminant_group(root_lattice("D8"))
        assert group.invariant_factors == (2, 2)
        assert all(q.denominator == 1 for q in group.q_values)

    def test_u_has_empty_form(self):
        assert discriminant_form(U) == []

    def test_odd_lattice_has_no_form(self):
        with pytest.raises(LatticeError, match="odd"):
            discriminant_form(lattice_from_gram([[1]]))

    def test_q_values_in_half_open_interval(self):
        for q in discriminant_group(root_lattice("A8")).negated().q_values:
            assert 0 <= q < 2

    @settings(max_examples=100, deadline=None)
    @given(even_lattices())
    def test_group_order_is_absolute_determinant(self, lattice):
        assert discriminant_group(lattice).order == abs(lattice.determinant)

    @settings(max_examples=50, deadline=None)
    @given(even_lattices(), even_lattices())
    def test_sum_of_forms_has_product_order(self, a, b):
        combined = discriminant_group(direct_sum(a, b))
        assert combined.order == discriminant_group(a).order * discriminant_group(b).order

    @settings(max_examples=50, deadline=None)
    @given(even_lattices())
    def test_even_lattice_q_values_scale_to_even_integers(self, lattice):
        group = discriminant_group(lattice)
        for d, q in group.form():
            value = q * d * d
            assert value.denominator == 1


class TestTwoElementary:
    def test_u2(self):
        assert two_elementary_invariants(rescale(U, 2)) == (2, 0)

    def test_unimodular(self):
        lattice = direct_sum(U, root_lattice("E8"), root_lattice("E8"))
        assert two_elementary_invariants(lattice)[0] == 0

    def test_u_d8_e8(self):
        lattice = direct_sum(U, rescale(root_lattice("D8"), -1), rescale(root_lattice("E8"), -1))
        assert two_elementary_invariants(lattice) == (2, 0)

    def test_a8_rejected(self):
        with pytest.raises(LatticeError, match="not 2-elementary"):
            two_elementary_invariants(root_lattice("A8"))


@st.composite
def symmetric_matrices(draw, max_size=6, bound=9):
    n = draw(st.integers(1, max_size))
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            m[i][j] = m[j][i] = draw(st.integers(-bound, bound))
    return m


class TestSmithForm:
    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=1, max_size=4))
    def test_transforms_diagonalize(self, rows):
        snf = smith_form(rows)
        product = im.mat_mul(im.mat_mul(snf.u, rows), snf.v)
        for i, row in enumerate(product):
            for j, value in enumerate(row):
                expected = snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0
                assert value == expected
        assert abs(im.determinant(snf.u)) == 1
        assert abs(im.determinant(snf.v)) == 1
        for a, b in zip(snf.diagonal, snf.diagonal[1:]):
            assert b % a == 0

    @pytest.mark.slow
    @settings(max_examples=1000, deadline=None)
    @given(symmetric_matrices())
    def test_symmetric_matrices_round_trip(self, gram):
        snf = smith_form(gram)
        n = len(gram)
        d = [[snf.diagonal[i] if i == j and i < len(snf.diagonal) else 0 for j in range(n)]
             for i in range(n)]
        assert im.mat_mul(im.mat_mul(snf.u, gram), snf.v) == d
        assert im.mat_mul(snf.v, snf.v_inverse) == im.identity(n)
        assert abs(im.determinant(snf.u)) == 1
        assert all(x > 0 for x in snf.diagonal)
        assert all(b % a == 0 for a, b in zip(snf.diagonal, snf.diagonal[1:]))
        assert len(snf.diagonal) == im.rational_rank(gram)
        det = im.determinant(gram)
        if det:
            product = 1
            for x in snf.diagonal:
                product *= x
            assert product == abs(det)


class TestComplementAndSaturation:
    def test_complement_in_diagonal(self):
        ambient = lattice_from_gram([[2, 0], [0, 2]])
        complement = orthogonal_complement(ambient, Sublattice(ambient=ambient, basis=[[1, 1]]))
        assert complement.rank == 1
        assert [list(r) for r in complement.induced_gram] == [[4]]
        assert [abs(x) for x in complement.basis[0]] == [1, 1]

    def test_full_sublattice_has_empty_complement(self):
        e8 = root_lattice("E8")
        whole = Sublattice(ambient=e8, basis=im.identity(8))
        assert orthogonal_complement(e8, whole).rank == 0

    def test_primitive_is_fixed(self):
        e8 = root_lattice("E8")
        sub = Sublattice(ambient=e8, basis=[[1, 0, 0, 0, 0, 0, 0, 0]])
        assert saturation(e8, sub).basis == sub.basis
        assert is_primitive(e8, sub)

    def test_index_two_saturation(self):
        two = lattice_from_gram([[2]])
        sub = Sublattice(ambient=two, basis=[[2]])
        saturated = saturation(two, sub)
        assert [list(r) for r in saturated.basis] == [[1]]
        assert quotient_group(saturated, sub) == FiniteAbelianGroup(invariant_factors=(2,))

    def test_equal_lattices_have_trivial_quotient(self):
        e8 = root_lattice("E8")
        sub = Sublattice(ambient=e8, basis=im.identity(8))
        assert quotient_group(sub, sub).is_trivial

    def test_rank_mismatch(self):
        e8 = root_lattice("E8")
        with pytest.raises(LatticeError, match="equal ranks"):
            quotient_group(Sublattice(ambient=e8, basis=im.identity(8)),
                           Sublattice(ambient=e8, basis=[[1] + [0] * 7]))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(-4, 4), min_size=3, max_size=3).filter(any),
           st.integers(1, 4))
    def test_saturation_idempotent_and_bounded(self, vector, k):
        ambient = lattice_from_gram([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
        sub = Sublattice(ambient=ambient, basis=[[k * x for x in vector]])
        once = saturation(ambient, sub)
        assert saturation(ambient, once).basis == once.basis
        order = quotient_group(once, sub).order
        assert sub.induced_gram[0][0] % (order * order) == 0


class TestFiniteAbelianGroup:
    def test_rendering(self):
        assert str(FiniteAbelianGroup()) == "{O}"
        assert str(FiniteAbelianGroup(invariant_factors=(2, 4))) == "Z/2Z+Z/4Z"

    def test_divisibility_chain_enforced(self):
        with pytest.raises(LatticeError, match="divisibility"):
            FiniteAbelianGroup(invariant_factors=(2, 3))
