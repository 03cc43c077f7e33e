"""Explicit Weierstrass models of the fibrations studied by the toolkit."""
from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import WeierstrassError
from .curve import FFCurve, FFPoint


class WeierstrassExample(BaseModel):
    """A curve with named sections and the torsion orders they should have."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    description: str
    curve: FFCurve
    points: Dict[str, Tuple[FFPoint, int]]


def _example(name: str, description: str, a4: str, a6: str, d: int,
             points: Dict[str, Tuple[str, str, int]]) -> WeierstrassExample:
    return WeierstrassExample(
        name=name,
        description=description,
        curve=FFCurve.from_strings(a4, a6, d),
        points={key: (FFPoint.from_strings(x, y, d), order) for key, (x, y, order) in points.items()},
    )


def build_examples() -> Dict[str, WeierstrassExample]:
    return {
        e.name: e
        for e in (
            _example(
                "z4",
                "Mordell-Weil Z/4Z over Q(sqrt 3), a 2-torsion section over Q",
                "-3*(t^2-3)*(t-2)^2", "t*(2*t^2-9)*(t-2)^3", 3,
                {
                    "P": ("t^2-2*t", "0", 2),
                    "Q": ("(t-3)*(t-2)", "3*r*(t-2)^2", 4),
                    "-Q": ("(t-3)*(t-2)", "-3*r*(t-2)^2", 4),
                },
            ),
            _example(
                "z3-rational",
                "three sections defined over Q",
                "-(432*t^3+10368)*t", "3456*t^6+124416*t^3+746496", 1,
                {"P": ("12*t^2", "864", 3), "-P": ("12*t^2", "-864", 3)},
            ),
            _example(
                "z3-sqrt3",
                "three sections defined over Q(sqrt 3)",
                "-3*t*(t^3+24)", "2*(t^6+36*t^3+216)", 3,
                {"P": ("t^2", "12*r", 3), "-P": ("t^2", "-12*r", 3)},
            ),
        )
    }


# Sections printed for the second 3-torsion model that fail the on-curve test.
PRINTED_DISCREPANCIES: Dict[str, Tuple[str, str]] = {
    "z3-sqrt3": ("t^2-1", "3*r*t"),
}


def get_example(name: str) -> WeierstrassExample:
    """Look up a shipped example.

    Raises:
        WeierstrassError: For unknown names
    """
    examples = build_examples()
    if name not in examples:
        raise WeierstrassError(f"Unknown example: {name}. Available: {', '.join(sorted(examples))}")
    return examples[name]


def format_example(example: WeierstrassExample) -> str:
    """Text dump: the model, the extension and each section with its order."""
    lines = [f"# {example.name}: {example.description}",
             f"a4 {example.curve.a4}",
             f"a6 {example.curve.a6}"]
    if example.curve.d != 1:
        lines.append(f"sqrt {example.curve.d}")
    for key, (point, order) in example.points.items():
        lines.append(f"point {key} {point.x} {point.y} order {order}")
    return "\n".join(lines) + "\n"
