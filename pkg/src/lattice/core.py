"""Integral lattices, sublattices and discriminant groups.

All objects are immutable pydantic models; every operation is a pure
function returning new objects.
"""
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, field_validator

from ..errors import InternalCheckError, LatticeError
from ..logging_config import get_logger
from . import integer_matrix as im

logger = get_logger("k3fib.lattice")

IntVector = Tuple[int, ...]
IntMatrix = Tuple[IntVector, ...]


def _integral(x) -> int:
    if isinstance(x, (str, bytes)):
        raise LatticeError(f"matrix entry {x!r} is not a number")
    try:
        n = int(x)
    except (TypeError, ValueError, OverflowError):
        raise LatticeError(f"matrix entry {x!r} is not a number") from None
    if n != x:
        raise LatticeError(f"matrix entry {x} is not an integer")
    return n


def _as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Integer matrix from any integral entries.

    Raises:
        LatticeError: If an entry is not an integer
    """
    return tuple(tuple(_integral(x) for x in row) for row in rows)


class IntLattice(BaseModel):
    """Nondegenerate integral lattice given by its Gram matrix."""

    model_config = ConfigDict(frozen=True, ignored_types=(cached_property,))

    gram: IntMatrix
    label: Optional[str] = None

    @field_validator("gram", mode="before")
    @classmethod
    def _coerce(cls, value):
        return _as_matrix(value)

    def __init__(self, **data):
        # Raised after validation so callers see LatticeError, not a wrapped ValidationError.
        if "gram" in data:
            data["gram"] = _as_matrix(data["gram"])
        super().__init__(**data)
        self._check()

    def _check(self) -> None:
        n = len(self.gram)
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise LatticeError(f"Gram row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise LatticeError(
                        f"Gram matrix is not symmetric at ({i},{j}): "
                        f"{self.gram[i][j]} != {self.gram[j][i]}"
                    )
        if n and im.determinant(self.gram) == 0:
            kernel = im.left_kernel(self.gram)
            raise LatticeError(f"Gram matrix is degenerate; kernel vector {list(kernel[0])}")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @cached_property
    def determinant(self) -> int:
        return im.determinant(self.gram)

    @cached_property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def inner(self, u: Sequence, v: Sequence):
        return im.bilinear(u, self.gram, v)

    def norm(self, v: Sequence):
        return im.bilinear(v, self.gram, v)

    def __str__(self) -> str:
        return self.label or f"lattice(rank={self.rank}, det={self.determinant})"


class Sublattice(BaseModel):
    """Sublattice of an ambient lattice given by independent integer basis vectors."""

    model_config = ConfigDict(frozen=True, ignored_types=(cached_property,))

    ambient: IntLattice
    basis: IntMatrix

    @field_validator("basis", mode="before")
    @classmethod
    def _coerce(cls, value):
        return _as_matrix(value)

    def __init__(self, **data):
        if "basis" in data:
            data["basis"] = _as_matrix(data["basis"])
        super().__init__(**data)
        self._check()

    def _check(self) -> None:
        for v in self.basis:
            if len(v) != self.ambient.rank:
                raise LatticeError(
                    f"basis vector of length {len(v)} in a rank {self.ambient.rank} lattice"
                )
        if im.rational_rank(self.basis) != len(self.basis):
            raise LatticeError("sublattice basis vectors are linearly dependent")

    @classmethod
    def spanned(cls, ambient: IntLattice, vectors: Sequence[Sequence[int]]) -> "Sublattice":
        """Sublattice generated by arbitrary (possibly dependent) vectors."""
        return cls(ambient=ambient, basis=im.hermite_rows(vectors))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @cached_property
    def induced_gram(self) -> IntMatrix:
        g = self.ambient.gram
        return tuple(
            tuple(im.bilinear(u, g, v) for v in self.basis) for u in self.basis
        )

    def as_lattice(self, label: Optional[str] = None) -> IntLattice:
        """The sublattice as a standalone lattice (raises if degenerate)."""
        return IntLattice(gram=self.induced_gram, label=label)

    def coordinates(self, v: Sequence[int]) -> List[Fraction]:
        """Rational coordinates of an ambient vector in this basis."""
        return im.solve_left(self.basis, v)


class FiniteAbelianGroup(BaseModel):
    """Finite abelian group ⊕ ℤ/dᵢ with d1 | d2 | ...; empty means trivial."""

    model_config = ConfigDict(frozen=True)

    invariant_factors: Tuple[int, ...] = ()

    def __init__(self, **data):
        super().__init__(**data)
        self._check()

    def _check(self) -> None:
        factors = self.invariant_factors
        if any(d <= 1 for d in factors):
            raise LatticeError(f"invariant factors must exceed 1, got {list(factors)}")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise LatticeError(f"invariant factors {list(factors)} do not form a divisibility chain")

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self) -> str:
        if self.is_trivial:
            return "{O}"
        return "+".join(f"Z/{d}Z" for d in self.invariant_factors)


class DiscGroup(BaseModel):
    """Discriminant group L*/L with the values of the quadratic form on its generators.

    Generator lifts are rational coordinate vectors in the basis of L.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    invariant_factors: Tuple[int, ...]
    generator_lifts: Tuple[Tuple[Fraction, ...], ...]
    q_values: Tuple[Fraction, ...]

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    def negated(self) -> "DiscGroup":
        """The same group carrying the opposite form."""
        return self.model_copy(update={"q_values": tuple(_mod2(-q) for q in self.q_values)})

    def q_orbit(self, index: int) -> Tuple[Fraction, ...]:
        """Values of q on all generators k·xᵢ with k a unit modulo the order of xᵢ.

        Comparing orbits makes tests independent of which generator the Smith
        form happened to pick.
        """
        d = self.invariant_factors[index]
        q = self.q_values[index]
        return tuple(sorted({_mod2(k * k * q) for k in range(1, d) if _gcd(k, d) == 1}))

    def form(self) -> List[Tuple[int, Fraction]]:
        return list(zip(self.invariant_factors, self.q_values))


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _mod2(q: Fraction) -> Fraction:
    return Fraction(q) % 2


def lattice_from_gram(gram: Sequence[Sequence[int]], label: Optional[str] = None) -> IntLattice:
    """Wrap a symmetric nondegenerate integer matrix (or the empty matrix)."""
    return IntLattice(gram=gram, label=label)


def direct_sum(a: IntLattice, b: IntLattice, *more: IntLattice) -> IntLattice:
    """Orthogonal direct sum with block-diagonal Gram matrix."""
    parts = (a, b) + more
    n = sum(p.rank for p in parts)
    gram = [[0] * n for _ in range(n)]
    offset = 0
    for p in parts:
        for i in range(p.rank):
            for j in range(p.rank):
                gram[offset + i][offset + j] = p.gram[i][j]
        offset += p.rank
    label = None
    if all(p.label for p in parts):
        label = "+".join(p.label for p in parts)
    return IntLattice(gram=gram, label=label)


def rescale(lattice: IntLattice, n: int) -> IntLattice:
    """L(n): the Gram matrix multiplied entrywise by n."""
    if n == 0:
        raise LatticeError("cannot rescale a lattice by 0")
    if n == 1:
        return lattice
    label = f"{lattice.label}({n})" if lattice.label else None
    return IntLattice(gram=[[n * x for x in row] for row in lattice.gram], label=label)


def determinant(lattice: IntLattice) -> int:
    return lattice.determinant


def signature(lattice: IntLattice) -> Tuple[int, int]:
    """(positive, negative) inertia of the Gram matrix."""
    return im.signature(lattice.gram)


def discriminant_group(lattice: IntLattice) -> DiscGroup:
    """L*/L from the Smith form U·G·V = D.

    The generator of order dᵢ is the i-th row of U divided by dᵢ.
    """
    if lattice.rank == 0:
        return DiscGroup(invariant_factors=(), generator_lifts=(), q_values=())
    snf = im.smith_form(lattice.gram)
    factors, lifts, q_values = [], [], []
    for i, d in enumerate(snf.diagonal):
        if d == 1:
            continue
        x = tuple(Fraction(c, d) for c in snf.u[i])
        factors.append(d)
        lifts.append(x)
        q_values.append(_mod2(lattice.norm(x)))
    group = DiscGroup(invariant_factors=tuple(factors), generator_lifts=tuple(lifts),
                      q_values=tuple(q_values))
    if group.order != abs(lattice.determinant):
        raise InternalCheckError(
            f"discriminant group order {group.order} != |det| {abs(lattice.determinant)}"
        )
    return group


def discriminant_form(lattice: IntLattice, negate: bool = False) -> List[Tuple[int, Fraction]]:
    """(order, q mod 2) per generator of L*/L for an even lattice.

    Args:
        lattice: Even nondegenerate lattice
        negate: Report the opposite form instead

    Raises:
        LatticeError: If the lattice is odd
    """
    if not lattice.is_even:
        raise LatticeError(f"discriminant form needs an even lattice, {lattice} is odd")
    group = discriminant_group(lattice)
    if negate:
        group = group.negated()
    return group.form()


def two_elementary_invariants(lattice: IntLattice) -> Tuple[int, int]:
    """(a, δ) of a 2-elementary lattice: A_L ≅ (ℤ/2)^a, δ = 0 iff q takes integer values."""
    group = discriminant_group(lattice)
    if any(d != 2 for d in group.invariant_factors):
        raise LatticeError(
            f"{lattice} is not 2-elementary: invariant factors {list(group.invariant_factors)}"
        )
    delta = 0 if all(q.denominator == 1 for q in group.q_values) else 1
    return len(group.invariant_factors), delta


def orthogonal_complement(lattice: IntLattice, sub: Sublattice) -> Sublattice:
    """Basis of {v ∈ L : v·b = 0 for every basis vector b of sub}."""
    if sub.rank == 0:
        return Sublattice(ambient=lattice, basis=im.identity(lattice.rank))
    pairing = im.mat_mul(lattice.gram, im.transpose(sub.basis))
    kernel = im.left_kernel(pairing)
    logger.debug(
        "Computed orthogonal complement",
        extra={"extra_data": {"ambient_rank": lattice.rank, "sub_rank": sub.rank,
                              "complement_rank": len(kernel)}}
    )
    return Sublattice(ambient=lattice, basis=kernel)


def saturation(lattice: IntLattice, sub: Sublattice) -> Sublattice:
    """Primitive closure (ℚ·sub) ∩ L."""
    if sub.rank == 0:
        return sub
    return Sublattice(ambient=lattice, basis=im.saturate_rows(sub.basis))


def quotient_group(big: Sublattice, small: Sublattice) -> FiniteAbelianGroup:
    """big/small for sublattices of equal rank with small ⊆ big.

    Raises:
        LatticeError: On rank mismatch or if small is not contained in big
    """
    if big.rank != small.rank:
        raise LatticeError(f"quotient needs equal ranks, got {big.rank} and {small.rank}")
    if small.rank == 0:
        return FiniteAbelianGroup()
    coords = []
    for v in small.basis:
        c = big.coordinates(v)
        if any(x.denominator != 1 for x in c):
            raise LatticeError("small lattice is not contained in big lattice")
        coords.append([int(x) for x in c])
    snf = im.smith_form(coords)
    return FiniteAbelianGroup(invariant_factors=snf.invariant_factors)


def is_primitive(lattice: IntLattice, sub: Sublattice) -> bool:
    """True iff the sublattice equals its saturation."""
    if sub.rank == 0:
        return True
    return all(d == 1 for d in im.smith_form(sub.basis).diagonal)
