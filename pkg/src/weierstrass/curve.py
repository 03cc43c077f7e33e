"""Elliptic curves y² = x³ + a4·x + a6 over k(t) and their group law."""
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict

from ..config import config
from ..errors import WeierstrassError
from ..logging_config import get_logger
from .expressions import parse_expression
from .ratfunc import RatFunc

logger = get_logger("k3fib.weierstrass")

EXCEEDS_BOUND = "exceeds bound"


def _discriminant(a4: RatFunc, a6: RatFunc) -> RatFunc:
    return -16 * (4 * a4 ** 3 + 27 * a6 ** 2)


class FFCurve(BaseModel):
    """Short Weierstrass model over Q(√d)(t)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a4: RatFunc
    a6: RatFunc
    d: int = 1

    def __init__(self, **data):
        super().__init__(**data)
        if _discriminant(self.a4, self.a6).is_zero():
            raise WeierstrassError(f"singular model: discriminant of y^2 = x^3 + ({self.a4})x + ({self.a6}) is 0")

    @classmethod
    def from_strings(cls, a4: str, a6: str, d: int = 1) -> "FFCurve":
        return cls(a4=parse_expression(a4, d), a6=parse_expression(a6, d), d=d)

    def rhs(self, x: RatFunc) -> RatFunc:
        return x ** 3 + self.a4 * x + self.a6

    def __str__(self) -> str:
        return f"y^2 = x^3 + ({self.a4})*x + ({self.a6})"


class FFPoint(BaseModel):
    """A point over k(t); both coordinates None is the point at infinity."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x: Optional[RatFunc] = None
    y: Optional[RatFunc] = None

    def __init__(self, **data):
        super().__init__(**data)
        if (self.x is None) != (self.y is None):
            raise WeierstrassError("a finite point needs both coordinates")

    @classmethod
    def from_strings(cls, x: str, y: str, d: int = 1) -> "FFPoint":
        return cls(x=parse_expression(x, d), y=parse_expression(y, d))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"


INFINITY = FFPoint()


def on_curve(c: FFCurve, p: FFPoint) -> bool:
    """Exact test of y² = x³ + a4·x + a6."""
    if p.is_infinity:
        return True
    return p.y ** 2 == c.rhs(p.x)


def _require(c: FFCurve, p: FFPoint) -> None:
    if not on_curve(c, p):
        raise WeierstrassError(f"{p} is not on {c}")


def negate(c: FFCurve, p: FFPoint) -> FFPoint:
    _require(c, p)
    if p.is_infinity:
        return p
    return FFPoint(x=p.x, y=-p.y)


def _add(c: FFCurve, p: FFPoint, q: FFPoint) -> FFPoint:
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if (p.y + q.y).is_zero():
            return INFINITY
        slope = (3 * p.x ** 2 + c.a4) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x3 = slope ** 2 - p.x - q.x
    y3 = slope * (p.x - x3) - p.y
    return FFPoint(x=x3, y=y3)


def add(c: FFCurve, p: FFPoint, q: FFPoint) -> FFPoint:
    """Chord-tangent addition.

    Raises:
        WeierstrassError: If either point is off the curve
    """
    _require(c, p)
    _require(c, q)
    return _add(c, p, q)


def scalar_mul(c: FFCurve, n: int, p: FFPoint) -> FFPoint:
    """n·p by double-and-add; negative n multiplies -p."""
    _require(c, p)
    if n < 0:
        n, p = -n, negate(c, p)
    result = INFINITY
    addend = p
    while n:
        if n & 1:
            result = _add(c, result, addend)
        addend = _add(c, addend, addend)
        n >>= 1
    return result


def torsion_order(c: FFCurve, p: FFPoint, bound: Optional[int] = None) -> Union[int, str]:
    """Least n ≤ bound with n·p at infinity, or ``EXCEEDS_BOUND``."""
    _require(c, p)
    bound = config.get_torsion_bound() if bound is None else bound
    multiple = p
    for n in range(1, bound + 1):
        if multiple.is_infinity:
            logger.debug("Torsion order found", extra={"extra_data": {"point": str(p), "order": n}})
            return n
        multiple = _add(c, multiple, p)
    logger.info("No torsion order within bound", extra={"extra_data": {"point": str(p), "bound": bound}})
    return EXCEEDS_BOUND


def discriminant_poly(c: FFCurve) -> RatFunc:
    """Δ = -16(4·a4³ + 27·a6²)."""
    return _discriminant(c.a4, c.a6)
