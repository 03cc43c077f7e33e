"""Rank-24 realizations of the Niemeier lattices and their verification."""
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import CatalogError
from ..lattice import FiniteAbelianGroup, IntLattice, hermite_rows, signature
from ..lattice import integer_matrix as im
from ..logging_config import get_logger
from ..roots import cartan_rows
from .catalog import (
    LEECH,
    GlueWord,
    NiemeierSpec,
    class_min_norm,
    get_spec,
    glue_code,
    glue_vector,
    golay_generators,
)

logger = get_logger("k3fib.niemeier")

RationalRow = Tuple[Fraction, ...]


class NiemeierRealization(BaseModel):
    """A Niemeier lattice N inside ℚ²⁴.

    Coordinates are simple-root coordinates of the root sublattice, measured
    by the block Cartan matrix ``root_gram``. For the rootless lattice they are
    the usual ℤ²⁴ coordinates with the form x·y / 8, so ``scale`` is 8.

    Attributes:
        spec: Catalog entry
        lattice: Gram matrix of N in the basis below
        basis: Rows spanning N, in ambient coordinates
        basis_inverse: Inverse of basis; x·basis_inverse gives N-coordinates
        root_gram: Ambient Gram matrix before division by scale
        scale: Common divisor of the ambient form
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    spec: NiemeierSpec
    lattice: IntLattice
    basis: Tuple[RationalRow, ...]
    basis_inverse: Tuple[RationalRow, ...]
    root_gram: Tuple[Tuple[int, ...], ...]
    scale: int = 1

    @property
    def offsets(self) -> List[int]:
        return self.spec.component_offsets()

    def to_lattice_coordinates(self, x: Sequence) -> List[Fraction]:
        return im.vec_mat([Fraction(c) for c in x], self.basis_inverse)

    def contains(self, x: Sequence) -> bool:
        return all(c.denominator == 1 for c in self.to_lattice_coordinates(x))

    def inner(self, x: Sequence, y: Sequence) -> Fraction:
        return Fraction(im.bilinear(x, self.root_gram, y)) / self.scale


def block_cartan(spec: NiemeierSpec) -> List[List[int]]:
    n = spec.rank
    gram = [[0] * n for _ in range(n)]
    for t, start in zip(spec.components, spec.component_offsets()):
        rows = cartan_rows(t)
        for i in range(t.rank):
            for j in range(t.rank):
                gram[start + i][start + j] = rows[i][j]
    return gram


def check_glue(spec: NiemeierSpec, gram: Optional[Sequence[Sequence[int]]] = None) -> None:
    """Every glue word must have even norm and integral pairings with the others.

    Raises:
        CatalogError: Naming the first offending word
    """
    gram = gram if gram is not None else block_cartan(spec)
    vectors = [glue_vector(spec, w) for w in spec.glue_words]
    for word, v in zip(spec.glue_words, vectors):
        norm = im.bilinear(v, gram, v)
        if norm.denominator != 1 or norm.numerator % 2:
            raise CatalogError(
                f"{spec.name}: glue word {list(word)} has norm {norm}, expected an even integer"
            )
    for (wa, va), (wb, vb) in combinations(zip(spec.glue_words, vectors), 2):
        pairing = im.bilinear(va, gram, vb)
        if pairing.denominator != 1:
            raise CatalogError(
                f"{spec.name}: glue words {list(wa)} and {list(wb)} pair to {pairing}"
            )


def _rational_basis(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    denominator = im.common_denominator(c for row in rows for c in row)
    scaled = [[int(c * denominator) for c in row] for row in rows]
    return [[Fraction(c, denominator) for c in row] for row in hermite_rows(scaled)]


def _realize_rooted(spec: NiemeierSpec) -> NiemeierRealization:
    gram = block_cartan(spec)
    check_glue(spec, gram)
    n = spec.rank
    generators = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    generators += [glue_vector(spec, w) for w in spec.glue_words]
    basis = _rational_basis(generators)
    gram_n = im.mat_mul(im.mat_mul(basis, gram), im.transpose(basis))
    for i, row in enumerate(gram_n):
        for j, value in enumerate(row):
            if value.denominator != 1:
                raise CatalogError(f"{spec.name}: realized Gram entry ({i},{j}) = {value} is not integral")
    return NiemeierRealization(
        spec=spec,
        lattice=IntLattice(gram=[[int(x) for x in row] for row in gram_n], label=spec.name),
        basis=tuple(tuple(r) for r in basis),
        basis_inverse=tuple(tuple(r) for r in im.rational_inverse(basis)),
        root_gram=tuple(tuple(r) for r in gram),
    )


def leech_generators() -> List[List[int]]:
    """Integer generators of the Leech lattice in ℤ²⁴ with form x·y / 8."""
    rows = [[2 * c for c in word] for word in golay_generators()]
    for i in range(1, 24):
        rows.append([4 if k == 0 else (-4 if k == i else 0) for k in range(24)])
    rows.append([8] + [0] * 23)
    rows.append([-3] + [1] * 23)
    return rows


def _realize_leech(spec: NiemeierSpec) -> NiemeierRealization:
    basis = hermite_rows(leech_generators())
    product_rows = im.mat_mul(basis, im.transpose(basis))
    gram_n = []
    for i, row in enumerate(product_rows):
        if any(x % 8 for x in row):
            raise CatalogError(f"{LEECH}: realized Gram row {i} is not integral")
        gram_n.append([x // 8 for x in row])
    rational_basis = [[Fraction(c) for c in row] for row in basis]
    return NiemeierRealization(
        spec=spec,
        lattice=IntLattice(gram=gram_n, label=LEECH),
        basis=tuple(tuple(r) for r in rational_basis),
        basis_inverse=tuple(tuple(r) for r in im.rational_inverse(rational_basis)),
        root_gram=tuple(tuple(int(i == j) for j in range(24)) for i in range(24)),
        scale=8,
    )


@lru_cache(maxsize=None)
def _realize_by_name(name: str) -> NiemeierRealization:
    spec = get_spec(name)
    logger.info("Realizing Niemeier lattice", extra={"extra_data": {"name": name}})
    if spec.is_rootless:
        return _realize_leech(spec)
    return _realize_rooted(spec)


def realize(spec: NiemeierSpec) -> NiemeierRealization:
    """Build N as an integral rank-24 lattice.

    Catalog entries are cached by name; other specs (e.g. a deliberately
    corrupted copy) are realized afresh.

    Raises:
        CatalogError: If a glue word makes the Gram matrix non-integral
    """
    try:
        if get_spec(spec.name) == spec:
            return _realize_by_name(spec.name)
    except CatalogError:
        pass
    if spec.is_rootless:
        return _realize_leech(spec)
    return _realize_rooted(spec)


class NiemeierReport(BaseModel):
    """Outcome of verify(): one entry per named check."""

    model_config = ConfigDict(frozen=True)

    name: str
    checks: Dict[str, bool]
    failures: List[str]
    root_count: Optional[int] = None
    glue_order: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.failures


def _leech_has_roots(realization: NiemeierRealization) -> bool:
    """Scan the norm-2 candidates ±4eᵢ and (±2)⁴ on four coordinates.

    Vectors of the form x·x = 16 with all coordinates odd are impossible, so
    these shapes exhaust the candidates.
    """
    d = im.common_denominator(c for row in realization.basis_inverse for c in row)
    inverse = [[int(c * d) for c in row] for row in realization.basis_inverse]

    def member(entries: Sequence[Tuple[int, int]]) -> bool:
        for col in range(24):
            if sum(v * inverse[i][col] for i, v in entries) % d:
                return False
        return True

    for i in range(24):
        if member([(i, 4)]):
            return True
    for positions in combinations(range(24), 4):
        for signs in product((2, -2), repeat=3):
            if member([(positions[0], 2)] + list(zip(positions[1:], signs))):
                return True
    return False


def verify(spec: NiemeierSpec) -> NiemeierReport:
    """Check that a spec realizes an even unimodular positive definite lattice without extra roots.

    Never raises on bad data; problems are itemized in the report.
    """
    checks: Dict[str, bool] = {}
    failures: List[str] = []
    try:
        realization = realize(spec)
    except CatalogError as e:
        logger.warning("Niemeier realization failed", extra={"extra_data": {"name": spec.name, "error": str(e)}})
        return NiemeierReport(name=spec.name, checks={"integral": False}, failures=[str(e)])
    checks["integral"] = True

    lattice = realization.lattice
    checks["even"] = lattice.is_even
    if not checks["even"]:
        failures.append("lattice is odd")
    det = lattice.determinant
    checks["unimodular"] = det == 1
    if det != 1:
        failures.append(f"determinant is {det}, expected 1")
    sig = signature(lattice)
    checks["signature"] = sig == (24, 0)
    if sig != (24, 0):
        failures.append(f"signature is {sig}, expected (24, 0)")

    glue_order = None
    root_count = None
    if spec.is_rootless:
        has_roots = _leech_has_roots(realization)
        checks["no_extra_roots"] = not has_roots
        if has_roots:
            failures.append("rootless lattice contains a norm-2 vector")
        else:
            root_count = 0
    else:
        code = glue_code(spec)
        glue_order = len(code)
        checks["glue_order"] = glue_order ** 2 == spec.root_determinant
        if not checks["glue_order"]:
            failures.append(
                f"glue group order {glue_order} squared != root determinant {spec.root_determinant}"
            )
        extra = _words_with_roots(spec, code)
        checks["no_extra_roots"] = not extra
        if extra:
            failures.append(f"glue cosets {[list(w) for w in extra[:3]]} contain roots")
        else:
            root_count = spec.root_count

    report = NiemeierReport(name=spec.name, checks=checks, failures=failures,
                            root_count=root_count, glue_order=glue_order)
    logger.info(
        "Verified Niemeier lattice",
        extra={"extra_data": {"name": spec.name, "ok": report.ok, "failures": failures}}
    )
    return report


def _words_with_roots(spec: NiemeierSpec, code: List[GlueWord]) -> List[GlueWord]:
    """Nonzero codewords whose coset minimum is at most 2."""
    offenders = []
    for word in code:
        if not any(word):
            continue
        minimum = sum(class_min_norm(t, k) for t, k in zip(spec.components, word))
        if minimum <= 2:
            offenders.append(word)
    return offenders


def glue_group(spec: NiemeierSpec) -> FiniteAbelianGroup:
    """N / (root lattice) as invariant factors; trivial for the rootless lattice."""
    if spec.is_rootless:
        return FiniteAbelianGroup()
    realization = realize(spec)
    coords = []
    for i in range(spec.rank):
        row = realization.to_lattice_coordinates([int(i == j) for j in range(spec.rank)])
        coords.append([int(c) for c in row])
    return FiniteAbelianGroup(invariant_factors=im.smith_form(coords).invariant_factors)
