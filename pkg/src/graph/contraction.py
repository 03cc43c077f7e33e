"""Equivariant blow-downs of a rational elliptic surface to minimal models."""
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import ConfigError
from ..logging_config import get_logger
from .curve_config import CurveConfig

logger = get_logger("k3fib.graph")

PICARD_RANK = 10

# Equivariant plane models found by the search that the printed analysis of the
# configuration rules out, keyed by (configuration, action).
DERIVED_CONTRACTIONS: Dict[Tuple[str, str], Tuple[str, Tuple[Tuple[str, ...], ...]]] = {
    ("r9", "iota"): ("P2", (("O",), ("t1", "t2"), ("C3", "C6"), ("C2", "C7"), ("C1", "C8"))),
}


class ContractionOutcome(BaseModel):
    """A terminal model and one sequence of orbit contractions reaching it."""

    model_config = ConfigDict(frozen=True)

    model: str
    log: Tuple[Tuple[str, ...], ...]

    @property
    def contracted(self) -> int:
        return sum(len(orbit) for orbit in self.log)


def terminal_model(rank: int, self_intersections: Sequence[int]) -> str:
    """Name a surface with no contractible orbit left from its Picard rank."""
    if rank == 1:
        return "P2"
    if rank == 2:
        lowest = min(self_intersections, default=0)
        if lowest <= -2:
            return f"F{-lowest}"
        if lowest == -1:
            return "F1"
        return "P1xP1"
    return f"non-minimal (rank {rank})"


def _setup(config: CurveConfig, actions: Optional[Sequence[str]]):
    if config.surface != "res":
        raise ConfigError(f"{config.name or 'configuration'} is not a rational elliptic surface")
    group = config.group(list(actions or []))
    names = config.real_names
    orbit_of: Dict[str, FrozenSet[str]] = {n: frozenset(g[n] for g in group) for n in names}
    pairs = {(a, b): config.meet(a, b) for a in names for b in names}
    return names, orbit_of, pairs


def _contractible(orbit: FrozenSet[str], pairs: Dict[Tuple[str, str], int]) -> bool:
    return all(pairs[(n, n)] == -1 for n in orbit) and not any(
        pairs[(a, b)] for a in orbit for b in orbit if a != b
    )


def _contract(pairs: Dict[Tuple[str, str], int], survivors: Sequence[str],
              orbit: FrozenSet[str]) -> Dict[Tuple[str, str], int]:
    return {
        (a, b): pairs[(a, b)] + sum(pairs[(a, e)] * pairs[(b, e)] for e in orbit)
        for a in survivors for b in survivors
    }


def contract_to_minimal(config: CurveConfig, actions: Optional[Sequence[str]] = ()) -> List[ContractionOutcome]:
    """Every terminal model reachable by contracting orbits of disjoint (-1)-curves.

    Each step contracts one orbit of the group generated by ``actions`` whose
    members are (-1)-curves meeting pairwise zero times. All orders are
    explored depth first; states are keyed by the set of contracted curves.

    Args:
        config: Rational elliptic surface configuration
        actions: Generators of the acting group (none for the trivial group)

    Returns:
        One outcome per terminal model, ordered by model name

    Raises:
        ConfigError: If the configuration is not a rational surface or an action is unknown
    """
    names, orbit_of, start = _setup(config, actions)

    outcomes: Dict[str, ContractionOutcome] = {}
    visited = set()

    def explore(contracted: FrozenSet[str], pairs: Dict[Tuple[str, str], int], log: Tuple[Tuple[str, ...], ...]):
        if contracted in visited:
            return
        visited.add(contracted)
        alive = [n for n in names if n not in contracted]
        orbits = []
        for n in alive:
            orbit = orbit_of[n]
            if orbit not in orbits and _contractible(orbit, pairs):
                orbits.append(orbit)
        if not orbits:
            rank = PICARD_RANK - len(contracted)
            model = terminal_model(rank, [pairs[(n, n)] for n in alive])
            if model not in outcomes:
                outcomes[model] = ContractionOutcome(model=model, log=log)
            return
        for orbit in orbits:
            survivors = [n for n in alive if n not in orbit]
            ordered = tuple(n for n in names if n in orbit)
            explore(contracted | orbit, _contract(pairs, survivors, orbit), log + (ordered,))

    explore(frozenset(), start, ())
    result = sorted(outcomes.values(), key=lambda o: o.model)
    logger.info(
        "Contraction search finished",
        extra={"extra_data": {"config": config.name, "actions": list(actions or []),
                              "states": len(visited), "models": [o.model for o in result]}}
    )
    return result


def replay_contraction(config: CurveConfig, log: Sequence[Sequence[str]],
                       actions: Optional[Sequence[str]] = ()) -> ContractionOutcome:
    """Contract the given orbits in order and name the surface left.

    Raises:
        ConfigError: If a step is not a whole orbit of pairwise disjoint (-1)-curves,
            or contractible orbits remain at the end
    """
    names, orbit_of, pairs = _setup(config, actions)
    alive = list(names)
    for step in log:
        orbit = frozenset(step)
        unknown = [n for n in orbit if n not in alive]
        if unknown:
            raise ConfigError(f"cannot contract {', '.join(sorted(unknown))}: not a remaining curve")
        if any(orbit_of[n] != orbit for n in orbit):
            raise ConfigError(f"{' '.join(sorted(orbit))} is not an orbit of {list(actions or [])}")
        if not _contractible(orbit, pairs):
            raise ConfigError(f"{' '.join(sorted(orbit))} are not pairwise disjoint (-1)-curves")
        alive = [n for n in alive if n not in orbit]
        pairs = _contract(pairs, alive, orbit)
    left = [orbit_of[n] for n in alive if _contractible(orbit_of[n], pairs)]
    if left:
        raise ConfigError(f"{' '.join(sorted(left[0]))} can still be contracted")
    model = terminal_model(PICARD_RANK - (len(names) - len(alive)), [pairs[(n, n)] for n in alive])
    return ContractionOutcome(model=model, log=tuple(tuple(n for n in names if n in s) for s in log))
