"""Curated fibrations on the K3 double covers.

Each record lists one fiber of the fibration with multiplicities, the zero
section, the reducible fiber types, the τ-type and the Mordell-Weil field
degree bound it should reproduce.
"""
from typing import Dict, List, Tuple

from ...errors import ConfigError
from ..curve_config import parse_term
from ..fibration_types import RecordSpec


def _fiber(text: str) -> Tuple[Tuple[str, int], ...]:
    return tuple(parse_term(t) for t in text.split())


def _record(config: str, name: str, fiber: str, zero: str, kodaira: str, expected_type: int,
            mw_bound: int, sections: str = "", extra: Tuple[str, ...] = (), note: str = None,
            printed_mw_bound: int = None) -> RecordSpec:
    return RecordSpec(
        name=name, config=config, fiber=_fiber(fiber), zero=zero, kodaira=tuple(kodaira.split()),
        expected_type=expected_type, mw_bound=mw_bound, sections=tuple(sections.split()),
        extra_lines=extra, note=note, printed_mw_bound=printed_mw_bound,
    )


_M_LINES = (
    "curve M -2",
    "class M 1*Th6_2 2*T2 3*Th6_1 2*Th5_1 1*Th4_1 2*Th7_1 1*Th8_1 -1*Th1_1 -1*Th2_1",
    "meet M Th1_1 1",
    "meet M Th2_1 1",
    "meet M Th7_2 1",
    "meet M Th5_2 1",
)

_I8STAR_X9 = ("Th8_2 Th1_2 2*Th0_2 2*O 2*Th0_1 2*Th8_1 2*Th7_1 2*Th6_1 2*Th5_1 2*Th4_1 2*Th3_1 "
              "Th2_1 T1")

X9_RECORDS = [
    _record("x9", "induced", "Th0_1 Th1_1 Th2_1 Th3_1 Th4_1 Th5_1 Th6_1 Th7_1 Th8_1", "O", "I9 I9",
            2, 2, "O T1 T2"),
    _record("x9", "ii*+i3*", "Th6_2 2*Th7_2 3*Th8_2 4*Th0_2 5*O 6*Th0_1 4*Th8_1 2*Th7_1 3*Th1_1",
            "T2", "II* I3*", 3, 4, "T2 Th5_2"),
    _record("x9", "2iii*", "Th5_1 2*Th6_1 3*T2 4*Th6_2 3*Th5_2 2*Th4_2 Th3_2 2*Th7_2",
            "T1", "III* III*", 3, 4, "T1 Th2_2 Th4_1"),
    _record("x9", "iii*+i9", "Th0_1 2*Th8_1 3*Th7_1 4*Th6_1 3*Th5_1 2*Th4_1 Th3_1 2*T2",
            "O", "III* I9", 3, 4, "O T1 Th1_1 Th2_1"),
    _record("x9", "i11*", _I8STAR_X9, "Th2_2", "I8*", 3, 4, "Th2_2 Th3_2",
            note="the printed listing spans an I8* fiber"),
    _record("x9", "i8*+i4", _I8STAR_X9, "Th7_2", "I8* I4", 3, 4, "Th2_2 Th3_2 Th7_2"),
    _record("x9", "i16-d9",
            "Th0_1 Th1_1 Th2_1 Th3_1 T1 Th3_2 Th2_2 Th1_2 Th0_2 Th8_2 Th7_2 Th6_2 T2 Th6_1 Th7_1 Th8_1",
            "Th4_1", "I16", 1, 4, "Th4_1 Th5_1 Th4_2 Th5_2",
            note="the printed listing prints Th2_1 in place of Th2_2"),
    _record("x9", "i5*+i7", "Th5_1 T2 2*Th6_1 2*Th7_1 2*Th8_1 2*Th0_1 2*O 2*Th0_2 Th1_2 Th8_2",
            "Th4_1", "I5* I7", 3, 4, "Th4_1 Th2_2 Th6_2 Th7_2"),
    _record("x9", "iv*+i3*+i3", "Th6_2 2*T2 3*Th6_1 2*Th5_1 Th4_1 2*Th7_1 Th8_1",
            "Th0_1", "IV* I3* I3", 3, 4, "Th0_1 Th3_1 Th5_2 Th7_2"),
    _record("x9", "i2*+i10", "Th8_1 Th1_1 2*Th0_1 2*O 2*Th0_2 Th8_2 Th1_2",
            "Th7_1", "I2* I10", 1, 4, "Th7_1 Th7_2 Th2_1",
            note="near components corrected to Th8_1 and Th1_1"),
    _record("x9", "i16-a24",
            "Th6_1 Th5_1 Th4_1 Th3_1 Th2_1 M Th5_2 Th4_2 Th3_2 Th2_2 Th1_2 Th0_2 O Th0_1 Th8_1 Th7_1",
            "T2", "I16", 3, 4, "T2 Th7_2 Th8_2 Th6_2", extra=_M_LINES),
    _record("x9", "i13+i4", "T2 Th6_1 Th5_1 Th4_1 Th3_1 T1 Th3_2 Th2_2 Th1_2 Th0_2 Th8_2 Th7_2 Th6_2",
            "O", "I13 I4", 3, 4, "O Th2_1 Th7_1 Th4_2 Th5_2"),
]

X4_RECORDS = [
    _record("x4", "ii*+i4*", "Th0_1 2*Th2_1 3*Th3_1 4*Th4_1 5*Th5_1 6*Th6_1 4*Th8_1 2*T1 3*Th7_1",
            "O", "II* I4*", 3, 2, "O",
            note="tau is the only modelled action and moves this fibration", printed_mw_bound=1),
    _record("x4", "2iii*+2i2", "Th3_1 2*Th4_1 3*Th5_1 4*Th6_1 3*Th8_1 2*T1 Th8_2 2*Th7_1",
            "Th2_1", "III* III* I2 I2", 3, 2, "Th2_1 Th6_2"),
    _record("x4", "d16", "Th7_1 Th8_1 2*Th6_1 2*Th5_1 2*Th4_1 2*Th3_1 2*Th2_1 2*Th0_1 2*O 2*Th0_2 "
            "2*Th2_2 2*Th3_2 2*Th4_2 2*Th5_2 2*Th6_2 Th8_2 Th7_2",
            "T1", "I12*", 1, 1, "T1", note="T1 meets this fiber twice"),
    _record("x4", "d12+d4", "Th8_1 Th7_1 2*Th6_1 2*Th5_1 2*Th4_1 2*Th3_1 2*Th2_1 2*Th0_1 2*O "
            "2*Th0_2 2*Th2_2 Th1_2 Th3_2",
            "T1", "I8* I0*", 3, 2, "T1 Th4_2", note="the printed listing prints Th3_1 for Th3_2"),
    _record("x4", "induced", "Th0_1 Th1_1 2*Th2_1 2*Th3_1 2*Th4_1 2*Th5_1 2*Th6_1 Th7_1 Th8_1",
            "O", "I4* I4*", 2, 1, "O T1"),
    _record("x4", "a15", "Th8_1 Th6_1 Th5_1 Th4_1 Th3_1 Th2_1 Th0_1 O Th0_2 Th2_2 Th3_2 Th4_2 Th5_2 "
            "Th6_2 Th8_2 T1",
            "Th1_1", "I16", 1, 2, "Th1_1 Th7_1 Th1_2"),
]

X3_RECORDS = [
    _record("x3", "ii*+i4*", "Th0_2 2*O 3*Th0_1 4*Th1_1 5*Th2_1 6*Th3_1 4*Th4_1 2*Th5_1 3*Th7_1",
            "Th1_2", "II* I4*", 3, 2, "Th1_2"),
    _record("x3", "induced", "Th0_1 2*Th1_1 3*Th2_1 4*Th3_1 3*Th4_1 2*Th5_1 Th6_1 2*Th7_1",
            "O", "III* III* I2 I2", 2, 1, "O T1"),
    _record("x3", "d16", "Phi1_1 Phi1_2 2*O 2*Th0_1 2*Th1_1 2*Th2_1 2*Th3_1 2*Th4_1 2*Th5_1 2*Th6_1 "
            "2*T1 2*Th6_2 2*Th5_2 2*Th4_2 2*Th3_2 Th2_2 Th7_2",
            "Th1_2", "I12*", 3, 2, "Th1_2"),
    _record("x3", "d12+d4", "Th2_1 Th7_1 2*Th3_1 2*Th4_1 2*Th5_1 2*Th6_1 2*T1 2*Th6_2 2*Th5_2 "
            "2*Th4_2 2*Th3_2 Th2_2 Th7_2",
            "Th1_2", "I8* I0*", 1, 2, "Th1_1 Th1_2"),
    _record("x3", "2i4*", "Phi1_1 Phi1_2 2*O 2*Th0_1 2*Th1_1 2*Th2_1 2*Th3_1 Th4_1 Th7_1",
            "Th5_1", "I4* I4*", 3, 2, "Th5_1",
            note="the listed support is an I4* fiber of the II*+I4* type"),
    _record("x3", "a15", "Th3_1 Th4_1 Th5_1 Th6_1 T1 Th6_2 Th5_2 Th4_2 Th3_2 Th2_2 Th1_2 Th0_2 O "
            "Th0_1 Th1_1 Th2_1",
            "Th7_1", "I16", 1, 2, "Th7_1 Th7_2 Phi1_1"),
]

X2_RECORDS = [
    _record("x2", "induced", "Th0_1 2*Th1_1 3*Th2_1 4*Th3_1 5*Th4_1 6*Th5_1 4*Th6_1 2*Th7_1 3*Th8_1",
            "O", "II* II*", 2, 1, "O"),
    _record("x2", "d16", "Th6_1 Th8_1 2*Th5_1 2*Th4_1 2*Th3_1 2*Th2_1 2*Th1_1 2*Th0_1 2*O 2*Th0_2 "
            "2*Th1_2 2*Th2_2 2*Th3_2 2*Th4_2 2*Th5_2 Th6_2 Th8_2",
            "Th7_1", "I12*", 1, 2, "Th7_1 Th7_2"),
]

RECORDS: Dict[str, List[RecordSpec]] = {
    "x9": X9_RECORDS,
    "x4": X4_RECORDS,
    "x3": X3_RECORDS,
    "x2": X2_RECORDS,
}


def records_for(config_name: str) -> List[RecordSpec]:
    """Records of a configuration, empty when none are curated."""
    return list(RECORDS.get(config_name.lower(), []))


def get_record(config_name: str, name: str) -> RecordSpec:
    """Look up a record by configuration and record name.

    Raises:
        ConfigError: If no such record exists
    """
    for record in records_for(config_name):
        if record.name == name.lower():
            return record
    available = ", ".join(r.name for r in records_for(config_name)) or "none"
    raise ConfigError(f"Unknown record: {name} for {config_name}. Available: {available}")
