"""Deterministic text tables: markdown or CSV."""
import csv
import io
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from ..lattice import FiniteAbelianGroup
from ..niemeier import root_type_name
from ..roots import KodairaType, RootType

Table = Tuple[Sequence[str], List[Sequence[str]]]


def render_fibers(fibers: Sequence[Sequence[KodairaType]]) -> str:
    """Group equal candidate lists: [[I9], [I9]] -> "2I9", two [I2, III] -> "2(I2|III)"."""
    parts: List[str] = []
    i = 0
    while i < len(fibers):
        j = i
        while j < len(fibers) and list(fibers[j]) == list(fibers[i]):
            j += 1
        cell = "|".join(str(k) for k in fibers[i])
        count = j - i
        if count > 1:
            cell = f"{count}({cell})" if len(fibers[i]) > 1 else f"{count}{cell}"
        parts.append(cell)
        i = j
    return "+".join(parts) if parts else "-"


def render_roots(root_part: Sequence[RootType]) -> str:
    return root_type_name(list(root_part)) if root_part else "-"


def render_mw(rank: int, torsion: FiniteAbelianGroup) -> str:
    """"Z/2Z+Z", "Z^2", "{O}"."""
    free = "" if rank == 0 else ("Z" if rank == 1 else f"Z^{rank}")
    if torsion.is_trivial:
        return free or str(torsion)
    return f"{torsion}+{free}" if free else str(torsion)


def render_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def render_optional(value: Optional[object]) -> str:
    return "?" if value is None else str(value)


def to_markdown(header: Sequence[str], rows: List[Sequence[str]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines)


def to_csv(header: Sequence[str], rows: List[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[str(c) for c in row] for row in rows])
    return buffer.getvalue().rstrip("\n")


def render_table(table: Table, fmt: str) -> str:
    header, rows = table
    return to_csv(header, rows) if fmt == "csv" else to_markdown(header, rows)
