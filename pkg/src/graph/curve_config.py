"""Curve configurations: named negative curves, their intersections and symmetries.

Line-oriented text format, ``#`` starts a comment::

    surface k3|res
    smoothbranch true|false
    curve NAME SELFINT
    meet A B m
    fibration fiber ID NAME...
    fibration section NAME
    fibration zero NAME
    action NAME (a b)(c d) fix e f
    class NAME coef*CURVE ...

Each ``action`` line is one generator; curves it does not mention are fixed.
A ``class`` line turns an already declared curve into a synthetic curve given
by a combination of real curves; its pairings are derived from that relation
and any stated ``meet``/self-intersection values are checked against them.
"""
import re
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict

from ..errors import ConfigError
from ..lattice import integer_matrix as im
from ..logging_config import get_logger

logger = get_logger("k3fib.graph")

Permutation = Dict[str, str]

_FINGERPRINT_FIELDS = ("name", "surface", "smooth_branch", "curves", "meets", "fibers",
                       "sections", "zero", "actions", "classes")


class CurveConfig(BaseModel):
    """Parsed curve configuration. Build with :func:`parse_config`."""

    model_config = ConfigDict(frozen=True, ignored_types=(cached_property,))

    name: Optional[str] = None
    surface: str = "k3"
    smooth_branch: bool = False
    curves: Tuple[Tuple[str, int], ...] = ()
    meets: Tuple[Tuple[str, str, int], ...] = ()
    fibers: Tuple[Tuple[str, Tuple[str, ...]], ...] = ()
    sections: Tuple[str, ...] = ()
    zero: Optional[str] = None
    actions: Tuple[Tuple[str, Tuple[Tuple[str, ...], ...]], ...] = ()
    classes: Tuple[Tuple[str, Tuple[Tuple[str, int], ...]], ...] = ()

    @property
    def fingerprint(self) -> tuple:
        """Hashable snapshot of every field."""
        return tuple(getattr(self, f) for f in _FINGERPRINT_FIELDS)

    @classmethod
    def from_fingerprint(cls, fingerprint: tuple) -> "CurveConfig":
        return cls(**dict(zip(_FINGERPRINT_FIELDS, fingerprint)))

    @cached_property
    def names(self) -> List[str]:
        return [n for n, _ in self.curves]

    @cached_property
    def index(self) -> Dict[str, int]:
        return {n: i for i, n in enumerate(self.names)}

    @cached_property
    def synthetic(self) -> Dict[str, Dict[str, int]]:
        return {n: dict(terms) for n, terms in self.classes}

    @cached_property
    def real_names(self) -> List[str]:
        return [n for n in self.names if n not in self.synthetic]

    @property
    def has_reference_fibration(self) -> bool:
        return bool(self.fibers)

    @property
    def action_names(self) -> List[str]:
        return [n for n, _ in self.actions]

    def self_intersection(self, name: str) -> int:
        return dict(self.curves)[name]

    @cached_property
    def stated_pairings(self) -> Dict[Tuple[str, str], int]:
        """Pairings as written (first statement wins), both orders filled in."""
        table: Dict[Tuple[str, str], int] = {}
        for a, b, m in self.meets:
            table.setdefault((a, b), m)
            table.setdefault((b, a), m)
        return table

    def expand(self, name: str) -> Dict[str, int]:
        """Coefficients over real curves of a (possibly synthetic) curve."""
        if name in self.synthetic:
            return dict(self.synthetic[name])
        if name not in self.index:
            raise ConfigError(f"unknown curve {name}")
        return {name: 1}

    @cached_property
    def real_matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """Intersection matrix of the real curves, in listed order."""
        real = self.real_names
        pos = {n: i for i, n in enumerate(real)}
        self_ints = dict(self.curves)
        matrix = [[0] * len(real) for _ in real]
        for n in real:
            matrix[pos[n]][pos[n]] = self_ints[n]
        for (a, b), m in self.stated_pairings.items():
            if a in pos and b in pos and a != b:
                matrix[pos[a]][pos[b]] = m
        return tuple(tuple(r) for r in matrix)

    def real_pairing(self, a: Dict[str, int], b: Dict[str, int]) -> int:
        pos = {n: i for i, n in enumerate(self.real_names)}
        total = 0
        for x, cx in a.items():
            row = self.real_matrix[pos[x]]
            for y, cy in b.items():
                total += cx * cy * row[pos[y]]
        return total

    def meet(self, a: str, b: str) -> int:
        """Intersection number of two curves (derived for synthetic curves)."""
        return self.real_pairing(self.expand(a), self.expand(b))

    @cached_property
    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        """Intersection matrix of every curve, synthetic ones included, in listed order."""
        names = self.names
        expanded = [self.expand(n) for n in names]
        return tuple(
            tuple(self.real_pairing(expanded[i], expanded[j]) for j in range(len(names)))
            for i in range(len(names))
        )

    @cached_property
    def generators(self) -> Dict[str, Permutation]:
        """Each action line as a permutation of the real curves."""
        result: Dict[str, Permutation] = {}
        for action, cycles in self.actions:
            mapping = {n: n for n in self.real_names}
            for cycle in cycles:
                for i, x in enumerate(cycle):
                    mapping[x] = cycle[(i + 1) % len(cycle)]
            result[action] = mapping
        return result

    def group(self, generator_names: Optional[Sequence[str]] = None) -> List[Permutation]:
        """Every element of the group generated by the named actions (identity first).

        Raises:
            ConfigError: If a generator name is unknown
        """
        names = list(generator_names) if generator_names is not None else self.action_names
        unknown = [n for n in names if n not in self.generators]
        if unknown:
            raise ConfigError(
                f"Unknown action: {', '.join(unknown)}. Available: {', '.join(self.action_names) or 'none'}"
            )
        gens = [self.generators[n] for n in names]
        identity = {n: n for n in self.real_names}
        key = lambda p: tuple(p[n] for n in self.real_names)  # noqa: E731
        elements = {key(identity): identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for element in frontier:
                for g in gens:
                    composed = {n: g[element[n]] for n in self.real_names}
                    k = key(composed)
                    if k not in elements:
                        elements[k] = composed
                        nxt.append(composed)
            frontier = nxt
        return list(elements.values())

    def reference_fiber(self, fiber_id: Optional[str] = None) -> Tuple[str, ...]:
        """Support of a reference fiber (the first one by default)."""
        if not self.fibers:
            raise ConfigError(f"configuration {self.name or ''} has no reference fibration")
        if fiber_id is None:
            return self.fibers[0][1]
        for fid, support in self.fibers:
            if fid == fiber_id:
                return support
        raise ConfigError(f"Unknown fiber: {fiber_id}. Available: {', '.join(f for f, _ in self.fibers)}")


class ConfigReport(BaseModel):
    """Result of validate_config."""

    model_config = ConfigDict(frozen=True)

    name: Optional[str]
    curve_count: int
    violations: List[str]

    @property
    def ok(self) -> bool:
        return not self.violations


_TERM = re.compile(r"^([+-]?\d*)\*?([A-Za-z][\w']*)$")


def parse_term(token: str) -> Tuple[str, int]:
    match = _TERM.match(token)
    if not match:
        raise ValueError(f"bad class term '{token}'")
    coef_text, name = match.groups()
    if coef_text in ("", "+"):
        coef = 1
    elif coef_text == "-":
        coef = -1
    else:
        coef = int(coef_text)
    return name, coef


def parse_config(text: str, name: Optional[str] = None) -> CurveConfig:
    """Parse configuration text.

    Syntax problems are collected and raised together; semantic checks live
    in :func:`validate_config`.

    Raises:
        ConfigError: With one violation per malformed line
    """
    problems: List[str] = []
    surface = "k3"
    smooth_branch = False
    curves: List[Tuple[str, int]] = []
    meets: List[Tuple[str, str, int]] = []
    fibers: List[Tuple[str, Tuple[str, ...]]] = []
    sections: List[str] = []
    zero: Optional[str] = None
    actions: List[Tuple[str, Tuple[Tuple[str, ...], ...]]] = []
    classes: List[Tuple[str, Tuple[Tuple[str, int], ...]]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        keyword = tokens[0].lower()
        try:
            if keyword == "surface":
                if len(tokens) != 2 or tokens[1].lower() not in ("k3", "res"):
                    raise ValueError("expected 'surface k3|res'")
                surface = tokens[1].lower()
            elif keyword == "smoothbranch":
                if len(tokens) != 2 or tokens[1].lower() not in ("true", "false"):
                    raise ValueError("expected 'smoothbranch true|false'")
                smooth_branch = tokens[1].lower() == "true"
            elif keyword == "curve":
                if len(tokens) != 3:
                    raise ValueError("expected 'curve NAME SELFINT'")
                curves.append((tokens[1], int(tokens[2])))
            elif keyword == "meet":
                if len(tokens) != 4:
                    raise ValueError("expected 'meet A B m'")
                meets.append((tokens[1], tokens[2], int(tokens[3])))
            elif keyword == "fibration":
                if len(tokens) < 3:
                    raise ValueError("expected 'fibration fiber|section|zero ...'")
                kind = tokens[1].lower()
                if kind == "fiber":
                    if len(tokens) < 4:
                        raise ValueError("expected 'fibration fiber ID NAME...'")
                    fibers.append((tokens[2], tuple(tokens[3:])))
                elif kind == "section":
                    sections.extend(tokens[2:])
                elif kind == "zero":
                    if len(tokens) != 3:
                        raise ValueError("expected 'fibration zero NAME'")
                    zero = tokens[2]
                else:
                    raise ValueError(f"unknown fibration entry '{kind}'")
            elif keyword == "action":
                if len(tokens) < 2:
                    raise ValueError("expected 'action NAME (a b)...'")
                rest = line.split(None, 2)[2] if len(tokens) > 2 else ""
                cycle_part = re.split(r"\bfix\b", rest, maxsplit=1)[0]
                leftover = re.sub(r"\([^)]*\)", "", cycle_part).strip()
                if leftover:
                    raise ValueError(f"unexpected text '{leftover}' in action")
                cycles = tuple(
                    tuple(c.split()) for c in re.findall(r"\(([^)]*)\)", cycle_part) if c.split()
                )
                actions.append((tokens[1], cycles))
            elif keyword == "class":
                if len(tokens) < 3:
                    raise ValueError("expected 'class NAME coef*CURVE ...'")
                classes.append((tokens[1], tuple(parse_term(t) for t in tokens[2:])))
            else:
                raise ValueError(f"unknown keyword '{tokens[0]}'")
        except ValueError as e:
            problems.append(f"line {lineno}: {e}")

    if problems:
        raise ConfigError(f"cannot parse configuration {name or ''}".rstrip(), problems)
    return CurveConfig(
        name=name, surface=surface, smooth_branch=smooth_branch, curves=tuple(curves),
        meets=tuple(meets), fibers=tuple(fibers), sections=tuple(sections), zero=zero,
        actions=tuple(actions), classes=tuple(classes),
    )


def format_config(config: CurveConfig) -> str:
    """Render a configuration in the text format (round-trips through parse_config)."""
    lines = []
    if config.name:
        lines.append(f"# {config.name}")
    lines.append(f"surface {config.surface}")
    lines.append(f"smoothbranch {'true' if config.smooth_branch else 'false'}")
    for n, s in config.curves:
        lines.append(f"curve {n} {s}")
    for a, b, m in config.meets:
        lines.append(f"meet {a} {b} {m}")
    for fid, support in config.fibers:
        lines.append(f"fibration fiber {fid} {' '.join(support)}")
    for s in config.sections:
        lines.append(f"fibration section {s}")
    if config.zero:
        lines.append(f"fibration zero {config.zero}")
    for action, cycles in config.actions:
        cycle_text = "".join(f"({' '.join(c)})" for c in cycles)
        moved = {x for c in cycles for x in c}
        fixed = [n for n in config.real_names if n not in moved]
        lines.append(f"action {action} {cycle_text} fix {' '.join(fixed)}".rstrip())
    for n, terms in config.classes:
        lines.append(f"class {n} " + " ".join(f"{c}*{t}" for t, c in terms))
    return "\n".join(lines) + "\n"


def extend_config(config: CurveConfig, lines: Iterable[str]) -> CurveConfig:
    """The configuration with extra text lines appended."""
    extra = "\n".join(lines)
    if not extra.strip():
        return config
    return parse_config(format_config(config) + extra + "\n", name=config.name)


def fiber_marks(config: CurveConfig, support: Sequence[str]) -> Optional[List[int]]:
    """Multiplicities making the support a fiber class, or None.

    The support Gram must be negative semidefinite with a one-dimensional
    kernel; the marks are the positive primitive kernel vector.
    """
    gram = [[config.meet(a, b) for b in support] for a in support]
    positive, negative = im.signature(gram)
    if positive or negative != len(support) - 1:
        return None
    kernel = im.left_kernel(gram)
    if len(kernel) != 1:
        return None
    vector = list(kernel[0])
    if all(x <= 0 for x in vector):
        vector = [-x for x in vector]
    if any(x <= 0 for x in vector):
        return None
    return vector


def validate_config(config: CurveConfig) -> ConfigReport:
    """Check names, symmetry, self-intersection conventions, actions and the reference fibration."""
    violations: List[str] = []
    seen = set()
    for n, _ in config.curves:
        if n in seen:
            violations.append(f"curve {n} declared twice")
        seen.add(n)
    known = set(config.names)

    def check_known(where: str, names: Iterable[str]) -> bool:
        missing = [n for n in names if n not in known]
        for n in missing:
            violations.append(f"{where} refers to unknown curve {n}")
        return not missing

    raw: Dict[Tuple[str, str], int] = {}
    for a, b, m in config.meets:
        if not check_known(f"meet {a} {b}", (a, b)):
            continue
        if a == b:
            violations.append(f"meet {a} {a}: use 'curve' for self-intersection")
            continue
        if m < 0:
            violations.append(f"meet {a} {b}: distinct curves cannot meet negatively ({m})")
        if (a, b) in raw and raw[(a, b)] != m:
            violations.append(f"pairing {a}.{b} stated as both {raw[(a, b)]} and {m}")
        if (b, a) in raw and raw[(b, a)] != m:
            violations.append(f"pairing is not symmetric: {b}.{a} = {raw[(b, a)]} but {a}.{b} = {m}")
        raw[(a, b)] = m

    synthetic = config.synthetic
    for n, terms in config.classes:
        if n not in known:
            violations.append(f"class {n} defines an undeclared curve")
            continue
        for t, _ in terms:
            if t not in known:
                violations.append(f"class {n} refers to unknown curve {t}")
            elif t in synthetic:
                violations.append(f"class {n} refers to synthetic curve {t}")
    if violations:
        return ConfigReport(name=config.name, curve_count=len(config.curves), violations=violations)

    self_ints = dict(config.curves)
    for n in config.names:
        derived = config.meet(n, n)
        if n in synthetic and derived != self_ints[n]:
            violations.append(f"synthetic curve {n}: stated self-intersection {self_ints[n]}, derived {derived}")
    for n in synthetic:
        for other in config.names:
            if other == n:
                continue
            derived = config.meet(n, other)
            stated = config.stated_pairings.get((n, other))
            if stated is not None and stated != derived:
                violations.append(f"synthetic curve {n}: stated {n}.{other} = {stated}, derived {derived}")
            if derived < 0:
                violations.append(f"synthetic curve {n} meets {other} negatively ({derived})")

    if config.surface == "k3":
        for n, s in config.curves:
            if s != -2:
                violations.append(f"curve {n} on a K3 surface must have self-intersection -2, got {s}")
    else:
        fiber_curves = {c for _, support in config.fibers for c in support}
        for n, s in config.curves:
            if n in config.sections and s != -1:
                violations.append(f"section {n} must have self-intersection -1, got {s}")
            elif n in fiber_curves and s != -2:
                violations.append(f"fiber component {n} must have self-intersection -2, got {s}")

    matrix = config.real_matrix
    real = config.real_names
    pos = {n: i for i, n in enumerate(real)}
    for action, cycles in config.actions:
        moved = [x for c in cycles for x in c]
        if not check_known(f"action {action}", moved):
            continue
        if len(set(moved)) != len(moved):
            violations.append(f"action {action} moves a curve twice")
            continue
        if any(x in synthetic for x in moved):
            violations.append(f"action {action} moves a synthetic curve")
            continue
        mapping = config.generators[action]
        broken = [
            (a, b) for a in real for b in real
            if matrix[pos[mapping[a]]][pos[mapping[b]]] != matrix[pos[a]][pos[b]]
        ]
        if broken:
            a, b = broken[0]
            violations.append(
                f"action {action} does not preserve intersections: {a}.{b} = {matrix[pos[a]][pos[b]]} "
                f"but {mapping[a]}.{mapping[b]} = {matrix[pos[mapping[a]]][pos[mapping[b]]]}"
            )
    names = [a for a, _ in config.actions]
    if len(set(names)) != len(names):
        violations.append("action names must be unique")

    if config.fibers:
        fiber_ok = True
        for fid, support in config.fibers:
            if not check_known(f"fiber {fid}", support):
                fiber_ok = False
            elif fiber_marks(config, support) is None:
                # Lists of components of larger fibers are allowed past the first one.
                if fid == config.fibers[0][0]:
                    violations.append(f"fiber {fid} is not a fiber configuration")
                    fiber_ok = False
        check_known("fibration section", config.sections)
        if config.zero is not None:
            check_known("fibration zero", [config.zero])
            if config.zero not in config.sections:
                violations.append(f"zero section {config.zero} is not listed as a section")
        if fiber_ok and all(s in known for s in config.sections):
            support = config.fibers[0][1]
            marks = fiber_marks(config, support)
            for s in config.sections:
                degree = sum(m * config.meet(s, c) for m, c in zip(marks, support))
                if degree != 1:
                    violations.append(f"section {s} meets the reference fiber {degree} times")

    report = ConfigReport(name=config.name, curve_count=len(config.curves), violations=violations)
    if violations:
        logger.warning(
            "Configuration failed validation",
            extra={"extra_data": {"config": config.name, "violations": violations}}
        )
    return report


def load_config(text: str, name: Optional[str] = None) -> CurveConfig:
    """Parse and validate.

    Raises:
        ConfigError: If parsing or validation fails
    """
    config = parse_config(text, name=name)
    report = validate_config(config)
    if not report.ok:
        raise ConfigError(f"invalid configuration {name or ''}".rstrip(), report.violations)
    return config
