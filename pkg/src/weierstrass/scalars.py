"""Constants in Q or a real quadratic field Q(√d)."""
from fractions import Fraction
from functools import lru_cache
from typing import Union

import sympy
from pydantic import BaseModel, ConfigDict, field_validator
from sympy import QQ

from ..errors import WeierstrassError

Number = Union[int, Fraction]


def is_squarefree(d: int) -> bool:
    if d in (0, 1):
        return False
    return all(e == 1 for e in sympy.factorint(abs(d)).values())


@lru_cache(maxsize=None)
def coefficient_domain(d: int = 1):
    """QQ for d = 1, otherwise the algebraic field QQ<√d>.

    Raises:
        WeierstrassError: If d is not square-free
    """
    if d == 1:
        return QQ
    if not is_squarefree(d):
        raise WeierstrassError(f"extension parameter must be a square-free integer, got {d}")
    return QQ.algebraic_field(sympy.sqrt(d))


class QuadExtScalar(BaseModel):
    """a + b√d with rational a, b; d = 1 stands for Q itself."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    d: int = 1

    @field_validator("a", "b", mode="before")
    @classmethod
    def _fraction(cls, value):
        return Fraction(value)

    def __init__(self, **data):
        super().__init__(**data)
        if self.d != 1 and not is_squarefree(self.d):
            raise WeierstrassError(f"extension parameter must be a square-free integer, got {self.d}")
        if self.d == 1 and self.b:
            raise WeierstrassError("a rational scalar cannot have a √d part")

    @classmethod
    def rational(cls, value: Number) -> "QuadExtScalar":
        return cls(a=value)

    def _field_with(self, other: "QuadExtScalar") -> int:
        if self.d == other.d or other.d == 1:
            return self.d
        if self.d == 1:
            return other.d
        raise WeierstrassError(f"cannot combine Q(√{self.d}) and Q(√{other.d})")

    @staticmethod
    def _coerce(value) -> "QuadExtScalar":
        return value if isinstance(value, QuadExtScalar) else QuadExtScalar.rational(value)

    def __add__(self, other) -> "QuadExtScalar":
        other = self._coerce(other)
        return QuadExtScalar(a=self.a + other.a, b=self.b + other.b, d=self._field_with(other))

    __radd__ = __add__

    def __neg__(self) -> "QuadExtScalar":
        return QuadExtScalar(a=-self.a, b=-self.b, d=self.d)

    def __sub__(self, other) -> "QuadExtScalar":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "QuadExtScalar":
        other = self._coerce(other)
        d = self._field_with(other)
        return QuadExtScalar(
            a=self.a * other.a + d * self.b * other.b,
            b=self.a * other.b + self.b * other.a,
            d=d,
        )

    __rmul__ = __mul__

    @property
    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def inverse(self) -> "QuadExtScalar":
        """(a − b√d) / (a² − d b²).

        Raises:
            WeierstrassError: For zero
        """
        if self.is_zero():
            raise WeierstrassError("zero has no inverse")
        n = self.norm
        return QuadExtScalar(a=self.a / n, b=-self.b / n, d=self.d)

    def __truediv__(self, other) -> "QuadExtScalar":
        return self * self._coerce(other).inverse()

    def to_expr(self) -> sympy.Expr:
        if self.d == 1:
            return sympy.Rational(self.a.numerator, self.a.denominator)
        return (sympy.Rational(self.a.numerator, self.a.denominator)
                + sympy.Rational(self.b.numerator, self.b.denominator) * sympy.sqrt(self.d))

    @classmethod
    def from_expr(cls, expr, d: int = 1) -> "QuadExtScalar":
        """Read a + b√d off a sympy expression.

        Raises:
            WeierstrassError: If the expression is not of that shape
        """
        expr = sympy.expand(sympy.sympify(expr))
        root = sympy.sqrt(d) if d != 1 else sympy.Integer(0)
        b = expr.coeff(root) if d != 1 else sympy.Integer(0)
        a = sympy.expand(expr - b * root)
        if not (a.is_Rational and b.is_Rational):
            raise WeierstrassError(f"{expr} is not an element of Q(√{d})")
        return cls(a=Fraction(int(a.p), int(a.q)), b=Fraction(int(b.p), int(b.q)), d=d)

    def __str__(self) -> str:
        if not self.b:
            return str(self.a)
        if not self.a:
            return f"{self.b}*sqrt({self.d})"
        return f"{self.a} + {self.b}*sqrt({self.d})"
