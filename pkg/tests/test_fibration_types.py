import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import ConfigError, CurveError
from src.graph import (
    build_record,
    classify_curves,
    classify_image,
    contract_to_minimal,
    divisor,
    field_degree_bounds,
    fibration_type,
    induced_fiber,
    load_config,
    ns_lattice,
    replay_contraction,
)
from src.graph.contraction import DERIVED_CONTRACTIONS, terminal_model
from src.graph.datasets import RECORDS, get_record, load_dataset, records_for
from src.graph.fibration_types import record_config
from src.lattice import integer_matrix as im

SWAPPED_CONIC = """
surface k3
smoothbranch true
curve A -2
curve B -2
curve E -2
meet A B 2
meet A E 1
meet B E 1
action tau (A B)
"""


@pytest.fixture(scope="module")
def x9():
    return load_dataset("x9")


def record_fiber(config_name, name):
    spec = get_record(config_name, name)
    working = record_config(load_dataset(config_name), spec)
    return working, divisor(working, spec.fiber)


class TestFibrationType:
    def test_induced_is_type_two(self, x9):
        assert fibration_type(x9, induced_fiber(x9)) == 2

    def test_preserved_fibration_is_type_one(self):
        working, fiber = record_fiber("x9", "i16-d9")
        assert fibration_type(working, fiber) == 1

    def test_moved_fibration_is_type_three(self):
        working, fiber = record_fiber("x9", "ii*+i3*")
        assert fibration_type(working, fiber) == 3

    def test_needs_smooth_branch(self):
        r9 = load_dataset("r9")
        with pytest.raises(CurveError, match="smooth branch"):
            fibration_type(r9, induced_fiber(r9))

    def test_unknown_involution(self, x9):
        with pytest.raises(ConfigError, match="Unknown action: sigma. Available: tau, iota"):
            fibration_type(x9, induced_fiber(x9), tau="sigma")


class TestImages:
    def test_zero_section(self, x9):
        image = classify_image(x9, "O")
        assert image.invariant
        assert image.kind == "section"
        assert image.m == 1

    def test_disjoint_swapped_pair(self, x9):
        image = classify_image(x9, "Th3_1")
        assert not image.invariant
        assert image.m == 0
        assert image.kind == "fiber component"

    def test_swapped_pair_meeting_twice(self):
        config = load_config(SWAPPED_CONIC, name="conic")
        assert classify_image(config, "A").kind == "2-section"
        assert classify_image(config, "A").m == 2
        assert classify_image(config, "E").kind == "section"

    def test_unknown_curve(self, x9):
        with pytest.raises(CurveError, match="Unknown curve: Q"):
            classify_image(x9, "Q")

    def test_roles_relative_to_a_fibration(self, x9):
        roles = classify_curves(x9, induced_fiber(x9))
        assert roles["T1"] == "section"
        assert roles["Th4_2"] == "fiber component"


def greedy_basis(config, order):
    """Rationally independent curves taken greedily in the given order."""
    rows = dict(zip(config.real_names, config.real_matrix))
    chosen = []
    for name in order:
        if im.rational_rank([rows[n] for n in chosen + [name]]) == len(chosen) + 1:
            chosen.append(name)
    return chosen


class TestBasisIndependence:
    def test_reversed_basis_differs(self, x9):
        basis = greedy_basis(x9, reversed(x9.real_names))
        assert len(basis) == ns_lattice(x9).rank
        assert tuple(basis) != ns_lattice(x9).basis

    @pytest.mark.parametrize("record_name", [r.name for r in RECORDS["x9"]])
    def test_types_agree_with_reversed_basis(self, record_name):
        working, fiber = record_fiber("x9", record_name)
        basis = greedy_basis(working, reversed(working.real_names))
        expected = get_record("x9", record_name).expected_type
        assert fibration_type(working, fiber, basis=basis) == fibration_type(working, fiber) == expected

    @pytest.mark.slow
    @settings(max_examples=25, deadline=None)
    @given(st.data())
    def test_types_agree_with_shuffled_basis(self, data):
        spec = data.draw(st.sampled_from(RECORDS["x9"] + RECORDS["x4"]))
        working, fiber = record_fiber(spec.config, spec.name)
        order = data.draw(st.permutations(working.real_names))
        basis = greedy_basis(working, order)
        assert fibration_type(working, fiber, basis=basis) == spec.expected_type


class TestFieldDegreeBounds:
    def test_induced(self, x9):
        report = field_degree_bounds(x9, induced_fiber(x9), "O")
        assert report.group_order == 4
        assert report.fibration_bound == 1
        assert report.mw_bound == 2
        assert report.moved_by == {"tau": (False, False), "iota": (False, True)}

    def test_bounds_divide_group_order(self):
        working, fiber = record_fiber("x9", "i11*")
        report = field_degree_bounds(working, fiber, "Th2_2")
        assert report.group_order % report.fibration_bound == 0
        assert report.group_order % report.mw_bound == 0
        assert report.mw_bound == 4

    def test_without_actions(self, x9):
        report = field_degree_bounds(x9, induced_fiber(x9), "O", generators=[])
        assert report.group_order == 1
        assert report.mw_bound == 1

    def test_unknown_generator(self, x9):
        with pytest.raises(ConfigError, match="Unknown action"):
            field_degree_bounds(x9, induced_fiber(x9), "O", generators=["sigma"])


class TestRecords:
    def test_counts(self):
        assert [len(RECORDS[name]) for name in ("x9", "x4", "x3", "x2")] == [12, 6, 6, 2]

    def test_lookup_is_case_insensitive(self):
        assert get_record("X9", "II*+I3*").kodaira == ("II*", "I3*")

    def test_unknown_record(self):
        with pytest.raises(ConfigError, match="Unknown record: i99 for x9. Available: induced"):
            get_record("x9", "i99")

    def test_no_records_for_rational_surfaces(self):
        assert records_for("r9") == []

    def test_i16_record(self, x9):
        record = build_record(x9, get_record("x9", "i16-a24"))
        assert record.fibration_type == 3
        assert str(record.heights["Th7_2"].value) == "9/16"
        assert [f.label for f in record.reducible_fibers] == ["I16"]

    @pytest.mark.slow
    @pytest.mark.parametrize(
        "config_name, record_name",
        [(c, r.name) for c, records in RECORDS.items() for r in records],
    )
    def test_reproduces_expected_values(self, config_name, record_name):
        spec = get_record(config_name, record_name)
        record = build_record(load_dataset(config_name), spec)
        assert record.fibration_type == spec.expected_type
        assert record.bounds.mw_bound == spec.mw_bound

    @pytest.mark.slow
    def test_x4_bound_exceeds_printed_value(self):
        spec = get_record("x4", "ii*+i4*")
        record = build_record(load_dataset("x4"), spec)
        assert record.fibration_type == 3
        assert record.bounds.group_order == 2
        assert record.bounds.moved_by["tau"] == (True, True)
        assert record.bounds.mw_bound == spec.mw_bound == 2
        assert spec.printed_mw_bound == 1
        assert record.matches_expected

    def test_printed_bounds_only_where_they_differ(self):
        differing = [(c, r.name) for c, records in RECORDS.items() for r in records
                     if r.printed_mw_bound is not None]
        assert differing == [("x4", "ii*+i4*")]
        assert all(get_record(c, n).note for c, n in differing)

    def test_i11_star_sections(self, x9):
        spec = get_record("x9", "i11*")
        assert spec.sections == ("Th2_2", "Th3_2")
        record = build_record(x9, spec)
        assert set(record.heights) == {"Th3_2"}
        assert {"Th2_2", "Th3_2"} <= set(record.sections)


class TestContraction:
    @pytest.mark.parametrize("rank, self_ints, expected", [
        (1, [], "P2"),
        (2, [0, 0], "P1xP1"),
        (2, [-1, 0], "F1"),
        (2, [-2, 2], "F2"),
        (3, [-1, -1, 0], "non-minimal (rank 3)"),
    ])
    def test_terminal_names(self, rank, self_ints, expected):
        assert terminal_model(rank, self_ints) == expected

    def test_r9_without_symmetry(self):
        models = {o.model for o in contract_to_minimal(load_dataset("r9"))}
        assert {"P2", "P1xP1"} <= models

    def test_r9_with_inversion(self):
        outcomes = contract_to_minimal(load_dataset("r9"), ["iota"])
        assert {o.model for o in outcomes} == {"P1xP1", "P2"}

    def test_r9_plane_model_under_inversion_is_equivariant(self):
        r9 = load_dataset("r9")
        model, log = DERIVED_CONTRACTIONS[("r9", "iota")]
        outcome = replay_contraction(r9, log, ["iota"])
        assert outcome.model == model == "P2"
        assert outcome.contracted == 9

    def test_r9_ruled_model_under_inversion(self):
        log = [["O"], ["t1", "t2"], ["C0"], ["C3", "C6"], ["C2", "C7"]]
        outcome = replay_contraction(load_dataset("r9"), log, ["iota"])
        assert outcome.model == "P1xP1"

    def test_plane_model_through_c1_c4_c7_needs_trivial_action(self):
        r9 = load_dataset("r9")
        log = [["O"], ["t1"], ["t2"], ["C0"], ["C3"], ["C6"], ["C1"], ["C4"], ["C7"]]
        assert replay_contraction(r9, log).model == "P2"
        with pytest.raises(ConfigError, match="not an orbit"):
            replay_contraction(r9, log, ["iota"])

    def test_replay_rejects_meeting_curves(self):
        with pytest.raises(ConfigError, match="not pairwise disjoint"):
            replay_contraction(load_dataset("r9"), [["C0"]])

    def test_replay_rejects_unfinished_contraction(self):
        with pytest.raises(ConfigError, match="can still be contracted"):
            replay_contraction(load_dataset("r9"), [["O"]])

    def test_r2(self):
        outcomes = contract_to_minimal(load_dataset("r2"))
        assert [o.model for o in outcomes] == ["F2", "P2"]
        assert {o.model: o.contracted for o in outcomes} == {"F2": 8, "P2": 9}

    def test_r3(self):
        models = {o.model for o in contract_to_minimal(load_dataset("r3"))}
        assert {"P2", "P1xP1", "F2"} <= models

    def test_r4(self):
        models = {o.model for o in contract_to_minimal(load_dataset("r4"))}
        assert {"P2", "P1xP1"} <= models

    def test_contracted_orbits_are_disjoint_curves(self):
        r9 = load_dataset("r9")
        for outcome in contract_to_minimal(r9, ["iota"]):
            for orbit in outcome.log:
                assert len(set(orbit)) == len(orbit)

    def test_k3_rejected(self, x9):
        with pytest.raises(ConfigError, match="not a rational elliptic surface"):
            contract_to_minimal(x9)
