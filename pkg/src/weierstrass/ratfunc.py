"""Rational functions in t over Q or Q(√d), kept in lowest terms."""
from typing import List, Optional, Union

import sympy
from sympy import Poly, Symbol
from sympy.polys.polyerrors import CoercionFailed, PolynomialError

from ..errors import WeierstrassError
from .scalars import QuadExtScalar, coefficient_domain

T = Symbol("t")


class RatFunc:
    """numerator / denominator with gcd 1 and a monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Poly, denominator: Optional[Poly] = None):
        if denominator is None:
            denominator = Poly(1, T, domain=numerator.domain)
        numerator, denominator = numerator.unify(denominator)
        if denominator.is_zero:
            raise WeierstrassError("rational function with zero denominator")
        if numerator.is_zero:
            denominator = Poly(1, T, domain=numerator.domain)
        else:
            numerator, denominator = numerator.cancel(denominator, include=True)
        scale = Poly(1 / denominator.LC(), T, domain=denominator.domain)
        object.__setattr__(self, "numerator", numerator * scale)
        object.__setattr__(self, "denominator", denominator.monic())

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    @classmethod
    def from_expr(cls, expr, d: int = 1) -> "RatFunc":
        """Build from a sympy expression in t whose constants lie in Q(√d)."""
        domain = coefficient_domain(d)
        num, den = sympy.fraction(sympy.together(sympy.sympify(expr)))
        try:
            return cls(Poly(num, T, domain=domain), Poly(den, T, domain=domain))
        except (PolynomialError, CoercionFailed) as e:
            raise WeierstrassError(f"{expr} is not a rational function in t over Q(√{d}): {e}") from e

    @classmethod
    def constant(cls, value: Union[int, QuadExtScalar], d: int = 1) -> "RatFunc":
        if isinstance(value, QuadExtScalar):
            return cls.from_expr(value.to_expr(), max(d, value.d))
        return cls.from_expr(value, d)

    @property
    def domain(self):
        return self.numerator.domain

    def is_zero(self) -> bool:
        return self.numerator.is_zero

    def is_polynomial(self) -> bool:
        return self.denominator.degree() == 0

    def degree(self) -> int:
        """Degree of the numerator minus degree of the denominator (−∞ as -1 for zero)."""
        if self.is_zero():
            return -1
        return self.numerator.degree() - self.denominator.degree()

    def coefficients(self, d: int = 1) -> List[QuadExtScalar]:
        """Numerator coefficients, highest degree first."""
        return [QuadExtScalar.from_expr(c, d) for c in self.numerator.all_coeffs()]

    def as_expr(self) -> sympy.Expr:
        return self.numerator.as_expr() / self.denominator.as_expr()

    @staticmethod
    def _coerce(other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc(Poly(other, T, domain=sympy.QQ))
        return NotImplemented

    def __add__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.numerator, self.denominator)

    def __sub__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "RatFunc":
        return (-self) + other

    def __mul__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise WeierstrassError("division by the zero rational function")
        return RatFunc(self.numerator * other.denominator, self.denominator * other.numerator)

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return RatFunc(Poly(1, T, domain=self.domain)) / (self ** -n)
        return RatFunc(self.numerator ** n, self.denominator ** n)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return (self.numerator * other.denominator - other.numerator * self.denominator).is_zero

    def __hash__(self) -> int:
        return hash((str(self.numerator.as_expr()), str(self.denominator.as_expr())))

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        num = _show(self.numerator)
        if self.is_polynomial():
            return num
        return f"({num})/({_show(self.denominator)})"


def _show(poly: Poly) -> str:
    if getattr(poly.domain, "is_Algebraic", False):
        return str(sympy.factor(poly.as_expr(), extension=list(poly.domain.orig_ext)))
    return str(sympy.factor(poly.as_expr()))
