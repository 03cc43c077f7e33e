"""Divisor classes on a curve configuration and the Néron-Severi lattice they span."""
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

from ..errors import CurveError, InternalCheckError
from ..lattice import IntLattice, hermite_rows
from ..lattice import integer_matrix as im
from ..logging_config import get_logger
from .curve_config import CurveConfig, Permutation

logger = get_logger("k3fib.graph")

Terms = Union[Mapping[str, int], Iterable[Tuple[str, int]]]


class DivisorClass(BaseModel):
    """Integer combination of real curves, normalized to configuration order."""

    model_config = ConfigDict(frozen=True)

    terms: Tuple[Tuple[str, int], ...]

    @property
    def coefficients(self) -> Dict[str, int]:
        return dict(self.terms)

    @property
    def support(self) -> List[str]:
        return [n for n, _ in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for n, c in self.terms:
            sign = "-" if c < 0 else "+"
            body = n if abs(c) == 1 else f"{abs(c)}*{n}"
            parts.append((sign, body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def divisor(config: CurveConfig, terms: Terms) -> DivisorClass:
    """Class of Σ coef·curve; synthetic curves are expanded.

    Raises:
        CurveError: For unknown curve names
    """
    items = terms.items() if isinstance(terms, Mapping) else terms
    total: Dict[str, int] = {}
    for name, coef in items:
        if name not in config.index:
            raise CurveError(
                f"Unknown curve: {name}. Available: {', '.join(config.names)}"
            )
        for real, c in config.expand(name).items():
            total[real] = total.get(real, 0) + coef * c
    return DivisorClass(terms=tuple((n, total[n]) for n in config.real_names if total.get(n)))


def curve_class(config: CurveConfig, name: str) -> DivisorClass:
    return divisor(config, [(name, 1)])


def pairing(config: CurveConfig, d: DivisorClass, e: DivisorClass) -> int:
    return config.real_pairing(d.coefficients, e.coefficients)


def meet_curve(config: CurveConfig, d: DivisorClass, name: str) -> int:
    return config.real_pairing(d.coefficients, config.expand(name))


def intersection_vector(config: CurveConfig, d: DivisorClass, curves: Sequence[str]) -> Tuple[int, ...]:
    return tuple(meet_curve(config, d, c) for c in curves)


def apply_action(config: CurveConfig, mapping: Permutation, d: DivisorClass) -> DivisorClass:
    """Image of a class under a permutation of the real curves."""
    return divisor(config, [(mapping[n], c) for n, c in d.terms])


class NSLattice(BaseModel):
    """Lattice spanned by the curves of a configuration.

    Attributes:
        basis: Curves forming a Z-basis (a rational basis if ``residual_index`` > 1)
        lattice: Gram matrix of the Z-span of all curves
        greedy_index: Index of the first greedy basis in the curve lattice
        residual_index: Index left after basis repair (1 when the basis is integral)
    """

    model_config = ConfigDict(frozen=True)

    config_name: Optional[str]
    basis: Tuple[str, ...]
    lattice: IntLattice
    greedy_index: int
    residual_index: int
    rows: Tuple[Tuple[int, ...], ...]
    row_basis: Tuple[Tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def determinant(self) -> int:
        return self.lattice.determinant

    def coordinates(self, config: CurveConfig, d: DivisorClass) -> List[Fraction]:
        """Rational coordinates of a class in the curve basis."""
        row = [meet_curve(config, d, n) for n in config.real_names]
        return im.solve_left(self.row_basis, row)


def class_key(config: CurveConfig, d: DivisorClass, basis: Optional[Sequence[str]] = None) -> Tuple[int, ...]:
    """Pairings with an NS basis: equal keys iff equal classes."""
    curves = basis if basis is not None else ns_lattice(config).basis
    return intersection_vector(config, d, curves)


def _index(coordinate_rows: Sequence[Sequence[Fraction]], rank: int) -> Fraction:
    """Index of the span of the unit vectors in the Z-span of the rows (may be fractional)."""
    denominator = im.common_denominator(x for row in coordinate_rows for x in row)
    scaled = [[int(x * denominator) for x in row] for row in coordinate_rows]
    hnf = hermite_rows(scaled)
    if len(hnf) != rank:
        raise InternalCheckError("coordinate rows do not have full rank")
    return Fraction(denominator ** rank, abs(im.determinant(hnf)))


def ns_lattice(config: CurveConfig) -> NSLattice:
    """Choose a Z-basis among the curves and compute the Gram matrix.

    Curves are taken greedily in listed order while rationally independent;
    basis curves are then swapped for curves with fractional coordinates
    until the basis spans every curve.

    Raises:
        CurveError: If the curves span a degenerate lattice
    """
    return _ns_lattice(config.fingerprint)


@lru_cache(maxsize=32)
def _ns_lattice(fingerprint: tuple) -> NSLattice:
    config = CurveConfig.from_fingerprint(fingerprint)
    matrix = config.real_matrix
    names = config.real_names
    chosen: List[int] = []
    for i in range(len(names)):
        if im.rational_rank([matrix[j] for j in chosen + [i]]) == len(chosen) + 1:
            chosen.append(i)
    rank = len(chosen)
    gram = [[matrix[a][b] for b in chosen] for a in chosen]
    if im.determinant(gram) == 0:
        raise CurveError(f"curves of {config.name or 'configuration'} span a degenerate lattice")

    def coordinates(basis: List[int]) -> List[List[Fraction]]:
        rows = [matrix[b] for b in basis]
        return [im.solve_left(rows, matrix[i]) for i in range(len(names))]

    coords = coordinates(chosen)
    index = _index(coords, rank)
    greedy_index = index
    while index > 1:
        best = None
        for i, row in enumerate(coords):
            for j, a in enumerate(row):
                if a and abs(a) < 1 and (best is None or abs(a) < best[0]):
                    best = (abs(a), j, i)
        if best is None:
            break
        _, j, i = best
        chosen[j] = i
        coords = coordinates(chosen)
        index = _index(coords, rank)

    if index.denominator != 1 or greedy_index.denominator != 1:
        raise InternalCheckError("basis index is not an integer")
    if index == 1:
        gram = [[matrix[a][b] for b in chosen] for a in chosen]
    else:
        denominator = im.common_denominator(x for row in coords for x in row)
        hnf = hermite_rows([[int(x * denominator) for x in row] for row in coords])
        base = [[matrix[a][b] for b in chosen] for a in chosen]
        full = im.mat_mul(im.mat_mul(hnf, base), im.transpose(hnf))
        gram = [[x // (denominator * denominator) for x in row] for row in full]
        logger.warning(
            "Curve basis spans a sublattice of the curve lattice",
            extra={"extra_data": {"config": config.name, "residual_index": int(index)}}
        )
    result = NSLattice(
        config_name=config.name,
        basis=tuple(names[i] for i in chosen),
        lattice=IntLattice(gram=gram, label=f"NS({config.name})" if config.name else None),
        greedy_index=int(greedy_index),
        residual_index=int(index),
        rows=tuple(tuple(r) for r in matrix),
        row_basis=tuple(tuple(matrix[i]) for i in chosen),
    )
    logger.debug(
        "Computed Néron-Severi lattice",
        extra={"extra_data": {"config": config.name, "rank": rank,
                              "det": result.determinant, "greedy_index": int(greedy_index)}}
    )
    return result


def index_in_ns(config: CurveConfig, classes: Sequence[DivisorClass]) -> int:
    """Index in NS of the sublattice spanned by the given classes.

    Coordinates are taken in the curve basis, whose span has index
    ``residual_index`` in NS.

    Raises:
        CurveError: If the classes do not span a full-rank sublattice
    """
    ns = ns_lattice(config)
    coords = [ns.coordinates(config, d) for d in classes]
    if im.rational_rank(coords) != ns.rank:
        raise CurveError(
            f"{len(classes)} classes span rank {im.rational_rank(coords)}, NS has rank {ns.rank}"
        )
    denominator = im.common_denominator(x for row in coords for x in row)
    hnf = hermite_rows([[int(x * denominator) for x in row] for row in coords])
    index = Fraction(abs(im.determinant(hnf)), denominator ** ns.rank) * ns.residual_index
    if index.denominator != 1:
        raise CurveError("the classes are not in the lattice spanned by the curves")
    basis_gram = [[config.meet(a, b) for b in ns.basis] for a in ns.basis]
    sub_gram = im.mat_mul(im.mat_mul(hnf, basis_gram), im.transpose(hnf))
    det_sub = Fraction(im.determinant(sub_gram), denominator ** (2 * ns.rank))
    if det_sub != index * index * ns.determinant:
        raise InternalCheckError(
            f"sublattice determinant {det_sub} does not equal index² · det NS = "
            f"{index * index * ns.determinant}"
        )
    return int(index)
