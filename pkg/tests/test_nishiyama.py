import pytest

from src.errors import EmbeddingError
from src.lattice import integer_matrix as im
from src.lattice import is_primitive, Sublattice
from src.niemeier import get_spec, realize
from src.nishiyama import admissible_targets, classify, find_embedding, frame, frame_for
from src.roots import cartan_rows, parse_root_type

A8 = parse_root_type("A8")
D8 = parse_root_type("D8")
E8 = parse_root_type("E8")

# (Niemeier, embedding target, roots orth., MW torsion, MW rank)
X9_TABLE = [
    ("A8^3", "A8", "A8^2", (3,), 0),
    ("E8+D16", "D16", "E8+D7", (), 1),
    ("E7^2+D10", "D10", "E7^2", (), 2),
    ("E7+A17", "A17", "E7+A8", (), 1),
    ("D24", "D24", "D15", (), 1),
    ("D12^2", "D12", "D12+A3", (2,), 1),
    ("D9+A15", "D9", "A15", (2,), 1),
    ("D9+A15", "A15", "D9+A6", (), 1),
    ("E6+D7+A11", "A11", "E6+D7+A2", (), 1),
    ("D6+A9^2", "A9", "D6+A9", (2,), 1),
    ("A24", "A24", "A15", (), 1),
    ("A12^2", "A12", "A12+A3", (), 1),
]

X3_X4_TABLE = [
    ("E8+D16", "D16", "E8+D8", (), 0),
    ("E7^2+D10", "D10", "E7^2+A1^2", (2,), 0),
    ("D24", "D24", "D16", (), 0),
    ("D12^2", "D12", "D12+D4", (2,), 0),
    ("D8^3", "D8", "D8^2", (2,), 0),
    ("D9+A15", "D9", "A15", (2,), 1),
]

X2_TABLE = [
    ("E8^3", "E8", "E8^2", (), 0),
    ("E8+D16", "E8", "D16", (2,), 0),
]


def summarize(rows):
    return [
        (r.niemeier, str(r.target), "+".join(
            f"{t}^{n}" if n > 1 else str(t)
            for t, n in _runs([str(x) for x in r.root_part])
        ), r.mw_torsion.invariant_factors, r.mw_rank)
        for r in rows
    ]


def _runs(items):
    runs = []
    for item in items:
        if runs and runs[-1][0] == item:
            runs[-1][1] += 1
        else:
            runs.append([item, 1])
    return runs


class TestAdmissibleTargets:
    def test_a8_has_twelve(self):
        assert len(admissible_targets(A8)) == 12

    def test_d8_has_six(self):
        assert len(admissible_targets(D8)) == 6

    def test_e8_has_two(self):
        pairs = admissible_targets(E8)
        assert [spec.name for spec, _ in pairs] == ["E8^3", "E8+D16"]

    def test_unsupported(self):
        with pytest.raises(EmbeddingError, match="Available: A8, D8, E8"):
            admissible_targets(parse_root_type("A7"))


class TestEmbedding:
    def test_cartan_match_and_primitivity(self):
        spec = get_spec("A24")
        embedding = find_embedding(A8, spec, 0)
        gram = realize(spec).root_gram
        images = embedding.root_images
        assert [[im.bilinear(u, gram, v) for v in images] for u in images] == \
            [list(r) for r in cartan_rows(A8)]
        realization = realize(spec)
        rows = [[int(c) for c in realization.to_lattice_coordinates(r)] for r in images]
        assert is_primitive(realization.lattice, Sublattice(ambient=realization.lattice, basis=rows))

    def test_inadmissible_component(self):
        spec = get_spec("E8+D16")
        with pytest.raises(EmbeddingError):
            find_embedding(A8, spec, 0)

    def test_e8_into_e8(self):
        result = frame(find_embedding(E8, get_spec("E8^3"), 0))
        assert [str(t) for t in result.root_part] == ["E8", "E8"]
        assert result.mw_rank == 0


class TestFrame:
    def test_a8_in_a8_cubed(self):
        result = frame_for(A8, "A8^3")
        assert [str(t) for t in result.root_part] == ["A8", "A8"]
        assert result.mw_rank == 0
        assert result.mw_torsion.invariant_factors == (3,)
        assert result.w.rank == 16

    def test_a8_in_a24(self):
        result = frame_for(A8, "A24")
        assert [str(t) for t in result.root_part] == ["A15"]
        assert result.mw_rank == 1
        assert result.mw_torsion.is_trivial

    def test_a8_in_d9(self):
        result = frame_for(A8, "D9+A15", parse_root_type("D9"))
        assert [str(t) for t in result.root_part] == ["A15"]
        assert result.mw_torsion.invariant_factors == (2,)

    def test_a8_in_d16(self):
        result = frame_for(A8, "E8+D16")
        assert [str(t) for t in result.root_part] == ["E8", "D7"]

    def test_complement_determinant(self):
        result = frame_for(D8, "D24")
        assert abs(result.w.as_lattice().determinant) == 4

    def test_kodaira_candidates_for_a1(self):
        result = frame_for(D8, "E7^2+D10")
        assert [[str(k) for k in ks] for ks in result.fibers] == \
            [["III*"], ["III*"], ["I2", "III"], ["I2", "III"]]


@pytest.mark.slow
class TestClassify:
    def test_a8(self):
        assert summarize(classify(A8)) == X9_TABLE

    def test_d8(self):
        assert summarize(classify(D8)) == X3_X4_TABLE

    def test_e8(self):
        assert summarize(classify(E8)) == X2_TABLE

    def test_deterministic(self):
        assert summarize(classify(E8)) == summarize(classify(E8))

    def test_worker_pool_agrees(self):
        assert summarize(classify(E8, workers=2)) == X2_TABLE
