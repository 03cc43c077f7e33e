"""Polynomial expressions typed on the command line.

The grammar is deliberately small: integers, the variable ``t``, ``+ - * ^ /``,
parentheses and ``r`` standing for √d.
"""
import re
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from ..errors import WeierstrassError
from .ratfunc import T, RatFunc

_ALLOWED = re.compile(r"^[0-9tr+\-*^/() ]+$")
_TRANSFORMATIONS = standard_transformations + (convert_xor,)


def parse_expression(text: str, d: int = 1) -> RatFunc:
    """Parse ``text`` into a rational function over Q(√d).

    Raises:
        WeierstrassError: For characters outside the grammar, a bare ``r``
            without an extension, or malformed input
    """
    text = text.strip()
    if not text or not _ALLOWED.match(text):
        raise WeierstrassError(
            f"cannot parse '{text}': use integers, t, r, + - * ^ / and parentheses"
        )
    if "r" in text and d == 1:
        raise WeierstrassError(f"'{text}' uses r but no --sqrt extension was given")
    local = {"t": T, "r": sympy.sqrt(d)}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TokenError, TypeError, ValueError, sympy.SympifyError) as e:
        raise WeierstrassError(f"cannot parse '{text}': {e}") from e
    if expr.free_symbols - {T}:
        raise WeierstrassError(f"'{text}' has variables other than t")
    return RatFunc.from_expr(expr, d)
