"""Double covers of rational elliptic surfaces branched along two smooth fibers."""
import re
from typing import Dict, List, Tuple

from ..errors import ConfigError
from ..logging_config import get_logger
from .curve_config import CurveConfig, validate_config

logger = get_logger("k3fib.graph")

_LIFT_PREFIX = {"C": "Th", "D": "Phi"}


def lift_name(name: str, sheet: int = 0) -> str:
    """Name of a lifted curve: fiber components become ``Th3_1``/``Phi1_2``, sections ``T1``/``O``."""
    match = re.match(r"^([A-Za-z]+)(.*)$", name)
    prefix, rest = match.groups() if match else (name, "")
    if sheet:
        return f"{_LIFT_PREFIX.get(prefix, prefix)}{rest}_{sheet}"
    return name.upper() if prefix.islower() else name


def double_cover_config(r: CurveConfig) -> CurveConfig:
    """Pull a rational configuration back to the K3 double cover.

    Each fiber component C of the reference fibration lifts to two disjoint
    copies C_1, C_2, one per sheet; each section lifts to one curve meeting
    both copies as it met C, and two sections meet twice as often. The cover
    involution ``tau`` swaps the sheets and every action of r lifts to both.

    Raises:
        ConfigError: If r is not a valid rational configuration with a reference fibration
    """
    if r.surface != "res":
        raise ConfigError(f"{r.name or 'configuration'} is not a rational elliptic surface")
    if not r.fibers:
        raise ConfigError(f"{r.name or 'configuration'} has no reference fibration to branch along")
    report = validate_config(r)
    if not report.ok:
        raise ConfigError(f"invalid configuration {r.name or ''}".rstrip(), report.violations)

    components: List[str] = []
    for _, support in r.fibers:
        components.extend(c for c in support if c not in components)
    sections = list(r.sections)
    stray = [n for n in r.real_names if n not in components and n not in sections]
    if stray:
        raise ConfigError("curves outside the reference fibration cannot be lifted", stray)

    lifts: Dict[Tuple[str, int], str] = {}
    curves: List[Tuple[str, int]] = []
    for sheet in (1, 2):
        for c in components:
            lifts[(c, sheet)] = lift_name(c, sheet)
            curves.append((lifts[(c, sheet)], -2))
    for s in sections:
        lifts[(s, 0)] = lift_name(s)
        curves.append((lifts[(s, 0)], -2))

    meets: List[Tuple[str, str, int]] = []
    for sheet in (1, 2):
        for i, a in enumerate(components):
            for b in components[i + 1:]:
                m = r.meet(a, b)
                if m:
                    meets.append((lifts[(a, sheet)], lifts[(b, sheet)], m))
    for s in sections:
        for sheet in (1, 2):
            for c in components:
                m = r.meet(s, c)
                if m:
                    meets.append((lifts[(s, 0)], lifts[(c, sheet)], m))
    for i, s in enumerate(sections):
        for t in sections[i + 1:]:
            m = r.meet(s, t)
            if m:
                meets.append((lifts[(s, 0)], lifts[(t, 0)], 2 * m))

    def lift_cycles(mapping: Dict[str, str]) -> Tuple[Tuple[str, ...], ...]:
        lifted = {}
        for c in components:
            for sheet in (1, 2):
                lifted[lifts[(c, sheet)]] = lifts[(mapping[c], sheet)]
        for s in sections:
            lifted[lifts[(s, 0)]] = lifts[(mapping[s], 0)]
        return _cycles(lifted, [n for n, _ in curves])

    tau = {lifts[(c, 1)]: lifts[(c, 2)] for c in components}
    tau.update({v: k for k, v in tau.items()})
    tau.update({lifts[(s, 0)]: lifts[(s, 0)] for s in sections})
    actions = [("tau", _cycles(tau, [n for n, _ in curves]))]
    for name, mapping in r.generators.items():
        actions.append((name, lift_cycles(mapping)))

    fibers = []
    for fid, support in r.fibers:
        for sheet in (1, 2):
            fibers.append((f"{fid}_{sheet}", tuple(lifts[(c, sheet)] for c in support)))

    cover_name = r.name.replace("r", "x", 1) if r.name and r.name.startswith("r") else None
    cover = CurveConfig(
        name=cover_name,
        surface="k3",
        smooth_branch=True,
        curves=tuple(curves),
        meets=tuple(meets),
        fibers=tuple(fibers),
        sections=tuple(lifts[(s, 0)] for s in sections),
        zero=lifts[(r.zero, 0)] if r.zero else None,
        actions=tuple(actions),
    )
    logger.debug(
        "Lifted configuration to the double cover",
        extra={"extra_data": {"source": r.name, "cover": cover_name, "curves": len(curves)}}
    )
    return cover


def _cycles(mapping: Dict[str, str], order: List[str]) -> Tuple[Tuple[str, ...], ...]:
    seen = set()
    cycles = []
    for start in order:
        if start in seen or mapping[start] == start:
            seen.add(start)
            continue
        cycle = [start]
        seen.add(start)
        nxt = mapping[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = mapping[nxt]
        cycles.append(tuple(cycle))
    return tuple(cycles)
