import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import WeierstrassError
from src.weierstrass import (
    EXCEEDS_BOUND,
    INFINITY,
    PRINTED_DISCREPANCIES,
    FFCurve,
    FFPoint,
    QuadExtScalar,
    add,
    build_examples,
    discriminant_poly,
    format_example,
    get_example,
    is_squarefree,
    negate,
    on_curve,
    parse_expression,
    scalar_mul,
    torsion_order,
)

# y^2 = x^3 - x + t^2 carries (0, t), (1, t) and (-1, t), none of them torsion.
RANK_CURVE = FFCurve.from_strings("-1", "t^2")
P = FFPoint.from_strings("0", "t")
Q = FFPoint.from_strings("1", "t")
R = FFPoint.from_strings("-1", "t")

small = st.integers(-2, 2)


class TestExpressions:
    def test_polynomial(self):
        assert parse_expression("t^2 - 2*t") == parse_expression("t*(t-2)")

    def test_rational_function(self):
        f = parse_expression("(t^2-1)/(t-1)")
        assert f == parse_expression("t+1")
        assert f.is_polynomial()

    def test_square_root(self):
        r = parse_expression("r", d=3)
        assert r * r == 3

    def test_root_needs_extension(self):
        with pytest.raises(WeierstrassError, match="no --sqrt"):
            parse_expression("3*r*t")

    @pytest.mark.parametrize("text", ["", "x+1", "t; import os", "sqrt(3)", "tr"])
    def test_rejected(self, text):
        with pytest.raises(WeierstrassError):
            parse_expression(text)

    def test_malformed(self):
        with pytest.raises(WeierstrassError, match="cannot parse"):
            parse_expression("(t+1")

    def test_extension_must_be_squarefree(self):
        with pytest.raises(WeierstrassError, match="square-free"):
            parse_expression("r", d=4)


class TestScalars:
    def test_field_arithmetic(self):
        x = QuadExtScalar(a=1, b=1, d=3)
        assert x * x == QuadExtScalar(a=4, b=2, d=3)
        assert (x / x) == QuadExtScalar(a=1, d=3)

    def test_mixed_fields_rejected(self):
        with pytest.raises(WeierstrassError, match="cannot combine"):
            QuadExtScalar(a=0, b=1, d=2) + QuadExtScalar(a=0, b=1, d=3)

    @pytest.mark.parametrize("d, expected", [(2, True), (3, True), (12, False), (1, False), (-1, True)])
    def test_squarefree(self, d, expected):
        assert is_squarefree(d) is expected


class TestCurve:
    def test_singular_model_rejected(self):
        with pytest.raises(WeierstrassError, match="singular"):
            FFCurve.from_strings("-3*t^2", "2*t^3")

    def test_discriminant(self):
        curve = FFCurve.from_strings("0", "t")
        assert discriminant_poly(curve) == parse_expression("-432*t^2")

    def test_half_a_point_rejected(self):
        with pytest.raises(WeierstrassError, match="both coordinates"):
            FFPoint(x=parse_expression("t"))

    def test_on_curve(self):
        assert on_curve(RANK_CURVE, P)
        assert on_curve(RANK_CURVE, INFINITY)
        assert not on_curve(RANK_CURVE, FFPoint.from_strings("t", "1"))

    def test_off_curve_point_rejected_by_group_law(self):
        with pytest.raises(WeierstrassError, match="is not on"):
            add(RANK_CURVE, P, FFPoint.from_strings("t", "1"))

    def test_identity_and_inverse(self):
        assert add(RANK_CURVE, P, INFINITY) == P
        assert add(RANK_CURVE, P, negate(RANK_CURVE, P)).is_infinity
        assert scalar_mul(RANK_CURVE, -1, P) == negate(RANK_CURVE, P)
        assert scalar_mul(RANK_CURVE, 0, P).is_infinity

    def test_doubling_stays_on_curve(self):
        assert on_curve(RANK_CURVE, scalar_mul(RANK_CURVE, 2, P))

    @settings(max_examples=15, deadline=None)
    @given(small, small, small)
    def test_associative(self, a, b, c):
        x, y, z = (scalar_mul(RANK_CURVE, n, pt) for n, pt in ((a, P), (b, Q), (c, R)))
        left = add(RANK_CURVE, add(RANK_CURVE, x, y), z)
        right = add(RANK_CURVE, x, add(RANK_CURVE, y, z))
        assert left == right

    @settings(max_examples=15, deadline=None)
    @given(small, small)
    def test_multiples_add(self, m, n):
        assert add(RANK_CURVE, scalar_mul(RANK_CURVE, m, P), scalar_mul(RANK_CURVE, n, P)) == \
            scalar_mul(RANK_CURVE, m + n, P)

    def test_point_of_infinite_order(self):
        assert torsion_order(RANK_CURVE, P, bound=4) == EXCEEDS_BOUND


class TestExamples:
    @pytest.mark.parametrize("name, key, order", [
        ("z4", "P", 2), ("z4", "Q", 4), ("z4", "-Q", 4),
        ("z3-rational", "P", 3), ("z3-sqrt3", "P", 3), ("z3-sqrt3", "-P", 3),
    ])
    def test_torsion_orders(self, name, key, order):
        example = get_example(name)
        point, expected = example.points[key]
        assert expected == order
        assert on_curve(example.curve, point)
        assert torsion_order(example.curve, point) == order

    def test_twice_q_is_the_two_torsion_point(self):
        example = get_example("z4")
        assert scalar_mul(example.curve, 2, example.points["Q"][0]) == example.points["P"][0]

    def test_printed_section_is_not_on_the_curve(self):
        example = get_example("z3-sqrt3")
        x, y = PRINTED_DISCREPANCIES["z3-sqrt3"]
        point = FFPoint.from_strings(x, y, example.curve.d)
        assert not on_curve(example.curve, point)
        with pytest.raises(WeierstrassError):
            torsion_order(example.curve, point)

    def test_unknown(self):
        with pytest.raises(WeierstrassError, match="Available: z3-rational, z3-sqrt3, z4"):
            get_example("z5")

    def test_format(self):
        text = format_example(build_examples()["z4"])
        assert text.startswith("# z4: ")
        assert "sqrt 3" in text
        assert "order 4" in text
