from fractions import Fraction
from functools import reduce
from math import gcd

import networkx as nx
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.errors import ConfigError, CurveError
from src.graph import (
    class_key,
    curve_class,
    curve_graph,
    divisor,
    double_cover_config,
    fiber_class_of,
    fiber_decomposition,
    find_fibers,
    height,
    height_table,
    index_in_ns,
    induced_fiber,
    is_torsion_section,
    lift_name,
    load_config,
    ns_lattice,
    sections_of,
)
from src.graph.datasets import get_record, load_dataset
from src.graph.fibration_types import record_config
from src.lattice import integer_matrix as im
from src.roots import parse_kodaira


@pytest.fixture(scope="module")
def x9():
    return load_dataset("x9")


@pytest.fixture(scope="module")
def r9():
    return load_dataset("r9")


SUBLATTICE_BASIS = """\
surface res
curve A 4
curve B 9
curve C -1
meet A B 6
"""


def record_fiber(name, config_name="x9"):
    spec = get_record(config_name, name)
    working = record_config(load_dataset(config_name), spec)
    return working, divisor(working, spec.fiber), spec.kodaira_types


class TestCover:
    @pytest.mark.parametrize("name, sheet, expected", [
        ("C3", 1, "Th3_1"), ("C0", 2, "Th0_2"), ("D1", 2, "Phi1_2"), ("t1", 0, "T1"), ("O", 0, "O"),
    ])
    def test_lift_names(self, name, sheet, expected):
        assert lift_name(name, sheet) == expected

    def test_x9_curves(self, x9):
        assert len(x9.curves) == 21
        assert x9.smooth_branch
        assert x9.sections == ("O", "T1", "T2")
        assert x9.action_names == ["tau", "iota"]

    def test_tau_swaps_sheets(self, x9):
        tau = x9.generators["tau"]
        assert tau["Th3_1"] == "Th3_2"
        assert tau["Th3_2"] == "Th3_1"
        assert tau["T1"] == "T1"
        assert all(tau[tau[n]] == n for n in x9.real_names)

    def test_section_meets_both_sheets(self, x9):
        assert x9.meet("O", "Th0_1") == 1
        assert x9.meet("O", "Th0_2") == 1
        assert x9.meet("T1", "Th3_2") == 1
        assert x9.meet("T1", "T2") == 0
        assert x9.meet("Th0_1", "Th0_2") == 0

    def test_derived_name(self, r9):
        assert double_cover_config(r9).name == "x9"

    def test_second_fiber_lifts_to_phi(self):
        x3 = load_dataset("x3")
        assert "Phi1_1" in x3.names
        assert x3.meet("Phi1_1", "Phi2_1") == 2

    def test_k3_input_rejected(self, x9):
        with pytest.raises(ConfigError, match="not a rational elliptic surface"):
            double_cover_config(x9)


class TestDivisors:
    def test_ns_rank_and_discriminant(self, x9):
        ns = ns_lattice(x9)
        assert ns.rank == 18
        assert abs(ns.determinant) == 9
        assert ns.residual_index == 1
        assert ns.lattice.is_even

    def test_rational_surface_lattice(self, r9):
        ns = ns_lattice(r9)
        assert ns.rank == 10
        assert abs(ns.determinant) == 1

    def test_unknown_curve(self, x9):
        with pytest.raises(CurveError, match="Unknown curve: Th9_1"):
            divisor(x9, [("Th9_1", 1)])

    def test_rendering(self, x9):
        assert str(divisor(x9, [("Th1_1", 2), ("Th0_1", 1)])) == "Th0_1 + 2*Th1_1"
        assert str(divisor(x9, [("O", 1), ("O", -1)])) == "0"

    def test_fibers_of_one_fibration_share_a_class(self, x9):
        sheet_one = divisor(x9, [(f"Th{i}_1", 1) for i in range(9)])
        sheet_two = divisor(x9, [(f"Th{i}_2", 1) for i in range(9)])
        assert sheet_one != sheet_two
        assert class_key(x9, sheet_one) == class_key(x9, sheet_two)

    def test_synthetic_curve_expands(self):
        working, _, _ = record_fiber("i16-a24")
        m = curve_class(working, "M")
        assert m.coefficients["Th6_1"] == 3
        assert m.coefficients["Th1_1"] == -1
        assert "M" not in m.coefficients

    def test_index_three(self, x9):
        names = [f"Th{i}_1" for i in range(9)] + [f"Th{i}_2" for i in range(8)] + ["O"]
        assert index_in_ns(x9, [curve_class(x9, n) for n in names]) == 3

    def test_index_one_with_synthetic_curve(self):
        working, _, _ = record_fiber("i16-a24")
        spec = get_record("x9", "i16-a24")
        names = [n for n, _ in spec.fiber] + ["T2", "Th7_2"]
        assert index_in_ns(working, [curve_class(working, n) for n in names]) == 1

    def test_rank_deficient_classes(self, x9):
        with pytest.raises(CurveError, match="span rank 1"):
            index_in_ns(x9, [curve_class(x9, "O")])

    def test_index_counts_residual_index(self):
        config = load_config(SUBLATTICE_BASIS, name="sub")
        ns = ns_lattice(config)
        assert ns.basis == ("A", "C")
        assert ns.residual_index == 2
        assert ns.determinant == -1
        assert index_in_ns(config, [curve_class(config, "A"), curve_class(config, "C")]) == 2
        assert index_in_ns(config, [curve_class(config, "B"), curve_class(config, "C")]) == 3
        half = divisor(config, [("B", 1), ("A", -1)])
        assert index_in_ns(config, [half, curve_class(config, "C")]) == 1

    def test_lattice_is_cached_per_configuration(self, x9):
        assert ns_lattice(x9) is ns_lattice(x9)
        assert ns_lattice(load_dataset("x9")) is ns_lattice(x9)


def chordless_cycle_classes(config, length):
    graph = curve_graph(config, self_int=-2)
    keys = set()
    for cycle in nx.chordless_cycles(graph):
        if len(cycle) == length:
            keys.add(class_key(config, fiber_class_of(config, cycle, [1] * length)))
    return keys


class TestFibers:
    def test_two_sheets_give_one_class(self, x9):
        seeds = find_fibers(x9, parse_kodaira("I9"))
        assert len(seeds) == 1
        assert seeds[0].marks == (1,) * 9

    def test_i10_through_two_sections(self, x9):
        seeds = find_fibers(x9, parse_kodaira("I10"))
        assert len(seeds) == 3
        for seed in seeds:
            assert len([c for c in seed.support if c in ("O", "T1", "T2")]) == 2

    @pytest.mark.parametrize("n", [9, 10, 13, 16])
    def test_cycles_match_chordless_cycle_search(self, x9, n):
        seeds = find_fibers(x9, parse_kodaira(f"I{n}"))
        assert {class_key(x9, s.fiber_class) for s in seeds} == chordless_cycle_classes(x9, n)

    def test_marks_recomputed_from_support(self, x9):
        for seed in find_fibers(x9, parse_kodaira("I13")):
            assert class_key(x9, seed.fiber_class) == class_key(x9, fiber_class_of(x9, seed.support))

    def test_not_a_fiber(self, x9):
        with pytest.raises(CurveError, match="do not form a fiber"):
            fiber_class_of(x9, ["Th0_1", "Th1_1"])

    def test_sections_of_induced(self, x9):
        assert sections_of(x9, induced_fiber(x9)) == ["O", "T1", "T2"]

    def test_induced_decomposition(self, x9):
        fibers = fiber_decomposition(x9, induced_fiber(x9))
        assert [f.label for f in fibers] == ["I9", "I9"]
        assert all(f.complete for f in fibers)
        assert sum(f.rank for f in fibers) == 16

    def test_ambiguous_pair_resolved_by_expected(self):
        x3 = load_dataset("x3")
        fiber = induced_fiber(x3)
        loose = fiber_decomposition(x3, fiber)
        assert "I2|III" in [f.label for f in loose]
        expected = [parse_kodaira(k) for k in ("III*", "III*", "I2", "I2")]
        resolved = fiber_decomposition(x3, fiber, expected)
        assert sorted(f.label for f in resolved) == ["I2", "I2", "III*", "III*"]


KODAIRA_SEARCH = (
    [f"I{n}" for n in range(2, 13)] + [f"I{n}*" for n in range(8)] + ["III", "IV", "IV*", "III*", "II*"]
)


def sub_config(config, names):
    lines = ["surface k3"] + [f"curve {n} -2" for n in names]
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            if config.meet(a, b):
                lines.append(f"meet {a} {b} {config.meet(a, b)}")
    return load_config("\n".join(lines), name="sub")


def kernel_vectors(config, order, bound=6):
    """Exhaustive search for nonnegative v, entries ≤ bound, with v·C = 0 for every C in the support."""
    pos = {n: i for i, n in enumerate(order)}
    adjacent = {n: [(m, config.meet(n, m)) for m in order if m != n and config.meet(n, m)] for n in order}
    closing = {i: [] for i in range(len(order))}
    for n in order:
        closing[max([pos[n]] + [pos[m] for m, _ in adjacent[n]])].append(n)
    found = []
    values = {}

    def extend(i):
        if i == len(order):
            if any(values.values()):
                found.append(dict(values))
            return
        for x in range(bound + 1):
            values[order[i]] = x
            if all(values[n] == 0 or sum(w * values[m] for m, w in adjacent[n]) == 2 * values[n]
                   for n in closing[i]):
                extend(i + 1)
        del values[order[i]]

    extend(0)
    return found


def fiber_vectors(config, order):
    """Primitive kernel vectors with connected support."""
    graph = curve_graph(config)
    result = []
    for v in kernel_vectors(config, order):
        support = [n for n in order if v[n]]
        if reduce(gcd, (v[n] for n in support)) == 1 and nx.is_connected(graph.subgraph(support)):
            result.append([(n, v[n]) for n in support])
    return result


class TestFiberSearchAgainstExhaustiveSearch:
    def test_e8_tail_with_zero_section(self):
        x2 = load_dataset("x2")
        fiber = find_fibers(x2, parse_kodaira("II*"))[0]
        names = list(fiber.support) + sections_of(x2, fiber.fiber_class)[:1]
        sub = sub_config(x2, names)
        vectors = fiber_vectors(sub, names)
        assert len(vectors) == 1
        assert sorted(m for _, m in vectors[0]) == sorted(fiber.marks)

    @pytest.mark.slow
    @settings(max_examples=30, deadline=None)
    @given(st.data())
    def test_random_connected_subconfigurations(self, data):
        x2 = load_dataset("x2")
        graph = curve_graph(x2, x2.real_names)
        size = data.draw(st.integers(2, 12))
        chosen = [data.draw(st.sampled_from(x2.real_names))]
        while len(chosen) < size:
            frontier = sorted({m for n in chosen for m in graph[n]} - set(chosen), key=x2.real_names.index)
            if not frontier:
                break
            chosen.append(data.draw(st.sampled_from(frontier)))
        gram = [[x2.meet(a, b) for b in chosen] for a in chosen]
        assume(im.determinant(gram) != 0)
        sub = sub_config(x2, chosen)
        searched = {
            class_key(sub, seed.fiber_class)
            for k in KODAIRA_SEARCH for seed in find_fibers(sub, parse_kodaira(k))
        }
        exhaustive = {class_key(sub, divisor(sub, v)) for v in fiber_vectors(sub, chosen)}
        assert searched == exhaustive


class TestHeights:
    def test_induced_torsion(self, x9):
        report = height(x9, induced_fiber(x9), "T1", "O")
        assert report.euler_term == 4
        assert report.pairing_term == 0
        assert report.value == 0
        assert [c for _, c in report.contributions] == [Fraction(2), Fraction(2)]

    def test_rational_surface_uses_euler_two(self, r9):
        report = height(r9, induced_fiber(r9), "t1", "O")
        assert report.euler_term == 2
        assert report.value == 0

    def test_i16_section_of_height_nine_sixteenths(self):
        working, fiber, expected = record_fiber("i16-a24")
        report = height(working, fiber, "Th7_2", "T2", expected)
        assert report.value == Fraction(9, 16)
        assert report.contributions == (("I16", Fraction(55, 16)),)

    @pytest.mark.parametrize("record, zero, section", [
        ("i16-d9", "Th4_1", "Th5_2"),
        ("i8*+i4", "Th7_2", "Th3_2"),
        ("i2*+i10", "Th2_1", "Th7_2"),
    ])
    def test_torsion_sections(self, record, zero, section):
        working, fiber, expected = record_fiber(record)
        assert is_torsion_section(working, fiber, section, zero, expected)

    def test_non_section_rejected(self, x9):
        with pytest.raises(CurveError, match="meets the fiber 0 times"):
            height(x9, induced_fiber(x9), "Th0_1", "O")

    def test_table_keeps_undetermined_entries(self, x9):
        table = height_table(x9, induced_fiber(x9), ["T1", "T2"], "O")
        assert set(table) == {"T1", "T2"}
        assert all(report is not None and report.is_torsion for report in table.values())
