"""The 24 Niemeier lattices as root systems plus glue codes.

Glue words name one discriminant class per root component:
  A_n: class i is the fundamental weight ω_i (i = 0..n)
  D_n: 0 = 0, 1 = ω_n (spinor), 2 = ω_1 (vector), 3 = ω_(n-1) (other spinor)
  E6: 1 = ω_1, 2 = ω_6;  E7: 1 = ω_7;  E8 has only class 0
"""
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import CatalogError
from ..lattice import integer_matrix as im
from ..roots import RootType, cartan_rows, parse_root_type

GlueWord = Tuple[int, ...]

LEECH = "Leech"


class NiemeierSpec(BaseModel):
    """One Niemeier lattice: root components in canonical order plus glue generators."""

    model_config = ConfigDict(frozen=True)

    name: str
    components: Tuple[RootType, ...]
    glue_words: Tuple[GlueWord, ...]

    @property
    def is_rootless(self) -> bool:
        return not self.components

    @property
    def rank(self) -> int:
        return sum(t.rank for t in self.components)

    @property
    def root_count(self) -> int:
        return sum(t.root_count for t in self.components)

    @property
    def root_determinant(self) -> int:
        result = 1
        for t in self.components:
            result *= t.determinant
        return result

    def component_offsets(self) -> List[int]:
        offsets, start = [], 0
        for t in self.components:
            offsets.append(start)
            start += t.rank
        return offsets


def root_type_name(components: Sequence[RootType]) -> str:
    """Canonical rendering such as "E7^2+D10" or "A8^3"."""
    parts: List[str] = []
    i = 0
    while i < len(components):
        j = i
        while j < len(components) and components[j] == components[i]:
            j += 1
        count = j - i
        parts.append(f"{components[i]}^{count}" if count > 1 else str(components[i]))
        i = j
    return "+".join(parts)


# --- discriminant classes -----------------------------------------------------

def class_count(t: RootType) -> int:
    if t.family == "A":
        return t.rank + 1
    if t.family == "D":
        return 4
    return 9 - t.rank


def class_add(t: RootType, a: int, b: int) -> int:
    """Group law on the class labels of t."""
    if t.family == "D":
        if t.rank % 2 == 0:
            return a ^ b
        return (a + b) % 4
    return (a + b) % class_count(t)


def class_weight_index(t: RootType, k: int) -> Optional[int]:
    """0-based Dynkin node whose fundamental weight represents class k; None for class 0."""
    if not 0 <= k < class_count(t):
        raise CatalogError(f"{t} has no discriminant class {k}")
    if k == 0:
        return None
    n = t.rank
    if t.family == "A":
        return k - 1
    if t.family == "D":
        return {1: n - 1, 2: 0, 3: n - 2}[k]
    if t.rank == 6:
        return {1: 0, 2: 5}[k]
    return 6


@lru_cache(maxsize=None)
def inverse_cartan(family: str, rank: int) -> Tuple[Tuple[Fraction, ...], ...]:
    t = RootType(family=family, rank=rank)
    return tuple(tuple(row) for row in im.rational_inverse(cartan_rows(t)))


def class_weight(t: RootType, k: int) -> Tuple[Fraction, ...]:
    """Fundamental weight of class k in simple-root coordinates."""
    node = class_weight_index(t, k)
    if node is None:
        return tuple(Fraction(0) for _ in range(t.rank))
    return inverse_cartan(t.family, t.rank)[node]


def class_min_norm(t: RootType, k: int) -> Fraction:
    """Least norm of a vector in the coset of class k."""
    if k == 0:
        return Fraction(0)
    n = t.rank
    if t.family == "A":
        return Fraction(k * (n + 1 - k), n + 1)
    if t.family == "D":
        return Fraction(1) if k == 2 else Fraction(n, 4)
    return Fraction(4, 3) if t.rank == 6 else Fraction(3, 2)


def glue_vector(spec: NiemeierSpec, word: GlueWord) -> List[Fraction]:
    """The word as a rational vector in simple-root coordinates of the whole root lattice."""
    if len(word) != len(spec.components):
        raise CatalogError(
            f"glue word {list(word)} has {len(word)} entries for {len(spec.components)} components"
        )
    vector: List[Fraction] = []
    for t, k in zip(spec.components, word):
        vector.extend(class_weight(t, k))
    return vector


def glue_code(spec: NiemeierSpec) -> List[GlueWord]:
    """Every word of the code generated by the glue words, zero word first."""
    zero = tuple(0 for _ in spec.components)
    code = {zero: None}
    frontier = [zero]
    while frontier:
        nxt = []
        for word in frontier:
            for gen in spec.glue_words:
                total = tuple(class_add(t, a, b) for t, a, b in zip(spec.components, word, gen))
                if total not in code:
                    code[total] = None
                    nxt.append(total)
        frontier = nxt
    return sorted(code)


# --- glue data ----------------------------------------------------------------

def _cyclic_shifts(word: Sequence[int]) -> List[List[int]]:
    return [list(word[-k:]) + list(word[:-k]) if k else list(word) for k in range(len(word))]


_F4_LOG = {1: 0, 2: 1, 3: 2}
_F4_EXP = (1, 2, 3)


def _f4_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return _F4_EXP[(_F4_LOG[a] + _F4_LOG[b]) % 3]


def hexacode_generators() -> List[GlueWord]:
    """F2-basis of the hexacode {(a, b, c, φ(1), φ(ω), φ(ω̄)) : φ(x) = ax² + bx + c} over F4 = {0, 1, ω=2, ω̄=3}."""
    words = []
    for a, b, c in [(1, 0, 0), (2, 0, 0), (0, 1, 0), (0, 2, 0), (0, 0, 1), (0, 0, 2)]:
        values = []
        for x in (1, 2, 3):
            values.append(_f4_mul(a, _f4_mul(x, x)) ^ _f4_mul(b, x) ^ c)
        words.append((a, b, c, *values))
    return words


def golay_generators() -> List[GlueWord]:
    """Twelve shifts of 1 + x² + x⁴ + x⁵ + x⁶ + x¹⁰ + x¹¹ extended by a parity bit."""
    base = [0] * 23
    for e in (0, 2, 4, 5, 6, 10, 11):
        base[e] = 1
    words = []
    for shift in range(12):
        word = [0] * 23
        for i, bit in enumerate(base):
            if bit:
                word[(i + shift) % 23] = 1
        words.append(tuple(word + [sum(word) % 2]))
    return words


_TERNARY_GOLAY_TAIL = ("011111", "101221", "110122", "121012", "122101", "112210")


def _ternary_golay_generators() -> List[GlueWord]:
    words = []
    for i, tail in enumerate(_TERNARY_GOLAY_TAIL):
        head = [1 if j == i else 0 for j in range(6)]
        words.append(tuple(head + [int(c) for c in tail]))
    return words


def _even_permutations(values: Sequence[int]) -> List[GlueWord]:
    result = []
    for perm in permutations(range(len(values))):
        inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
        if inversions % 2 == 0:
            result.append(tuple(values[p] for p in perm))
    return result


def _entries() -> List[Tuple[str, List[GlueWord]]]:
    """(components, glue generators) in table order."""
    return [
        ("E8 E8 E8", []),
        ("A8 A8 A8", [(1, 1, 4), (1, 4, 1)]),
        ("E8 D16", [(0, 1)]),
        ("E7 E7 D10", [(1, 0, 1), (0, 1, 3)]),
        ("E7 A17", [(1, 3)]),
        ("D24", [(1,)]),
        ("D12 D12", [(1, 2), (2, 1)]),
        ("D8 D8 D8", [(1, 2, 2), (2, 1, 2), (2, 2, 1)]),
        ("D9 A15", [(1, 2)]),
        ("E6 D7 A11", [(1, 1, 1)]),
        ("D6 A9 A9", [(0, 2, 4), (1, 5, 0), (3, 0, 5)]),
        ("A24", [(5,)]),
        ("A12 A12", [(1, 5)]),
        ("D6 D6 D6 D6", _even_permutations([0, 1, 2, 3])),
        ("E6 E6 E6 E6", [(1, 0, 1, 2), (1, 2, 0, 1), (1, 1, 2, 0)]),
        ("D5 D5 A7 A7", [(1, 2, 1, 1), (2, 1, 1, 7)]),
        ("A6 A6 A6 A6", [(1, 2, 1, 6), (1, 6, 2, 1), (1, 1, 6, 2)]),
        ("D4 A5 A5 A5 A5", [(0, 2, 0, 2, 4), (0, 2, 4, 0, 2), (0, 2, 2, 4, 0),
                            (1, 3, 3, 0, 0), (2, 3, 0, 3, 0), (3, 3, 0, 0, 3)]),
        (" ".join(["D4"] * 6), hexacode_generators()),
        (" ".join(["A4"] * 6), [tuple([1] + w) for w in _cyclic_shifts([0, 1, 4, 4, 1])]),
        (" ".join(["A3"] * 8), [tuple([3] + w) for w in _cyclic_shifts([2, 0, 0, 1, 0, 1, 1])]),
        (" ".join(["A2"] * 12), _ternary_golay_generators()),
        (" ".join(["A1"] * 24), golay_generators()),
        ("", []),
    ]


@lru_cache(maxsize=1)
def _catalog() -> Tuple[NiemeierSpec, ...]:
    specs = []
    for components_text, words in _entries():
        components = tuple(parse_root_type(tok) for tok in components_text.split())
        name = root_type_name(components) if components else LEECH
        specs.append(NiemeierSpec(name=name, components=components,
                                  glue_words=tuple(tuple(w) for w in words)))
    return tuple(specs)


def catalog() -> List[NiemeierSpec]:
    """All 24 Niemeier lattices in table order (rootless one last)."""
    return list(_catalog())


def catalog_index() -> Dict[str, int]:
    return {spec.name: i for i, spec in enumerate(_catalog())}


def get_spec(name: str) -> NiemeierSpec:
    """Look up a catalog entry by name ("A8^3", "E8+D16", "Leech", ...).

    Raises:
        CatalogError: If no entry has that name
    """
    for spec in _catalog():
        if spec.name.lower() == name.strip().lower():
            return spec
    names = ", ".join(s.name for s in _catalog())
    raise CatalogError(f"Unknown Niemeier lattice: {name}. Available: {names}")
