"""Group-law arithmetic for elliptic curves over Q(√d)(t)."""
from .curve import (
    EXCEEDS_BOUND,
    INFINITY,
    FFCurve,
    FFPoint,
    add,
    discriminant_poly,
    negate,
    on_curve,
    scalar_mul,
    torsion_order,
)
from .examples import PRINTED_DISCREPANCIES, WeierstrassExample, build_examples, format_example, get_example
from .expressions import parse_expression
from .ratfunc import T, RatFunc
from .scalars import QuadExtScalar, coefficient_domain, is_squarefree

__all__ = [
    "EXCEEDS_BOUND",
    "FFCurve",
    "FFPoint",
    "INFINITY",
    "PRINTED_DISCREPANCIES",
    "QuadExtScalar",
    "RatFunc",
    "T",
    "WeierstrassExample",
    "add",
    "build_examples",
    "coefficient_domain",
    "discriminant_poly",
    "format_example",
    "get_example",
    "is_squarefree",
    "negate",
    "on_curve",
    "parse_expression",
    "scalar_mul",
    "torsion_order",
]
