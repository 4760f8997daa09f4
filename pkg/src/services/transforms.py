# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Grid conversions, curve products and curve divisions."""

import logging
from dataclasses import dataclass, field
from typing import (
    Any,
    Callable,
    Dict,
    Hashable,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Set,
    Tuple,
    TypeVar,
    Union,
)

from src.services.geometry import RingPoint, undirected
from src.services.grids import GridKind, grid_member, edge_member, grid_table, neighbors, vertex_figure
from src.services.lsystem import (
    DRAW,
    MultiLsys,
    SimpleLsys,
    iterate,
    iterate_simple,
    substitute,
    swap_word,
    tokenize,
)
from src.services.validity import GridPath, tile_word, turtle, vertex_passes

logger = logging.getLogger(__name__)

# Constants
RING = 12
DEGREES_PER_UNIT = 30
PC_MODE = "PC"
EC_MODE = "EC"
WIGGLY = "wiggly"
BALANCED = "balanced"
PART_LETTERS = "ABCDEGHIJKLMNOPQSUVWXYZ"
WORD_STAGES = ("rewrite", "drop_prefix", "drop_suffix", "track")
COPIED = ""
END_MARGIN = 2
ESCAPE_MARGIN = 0.5

Node = TypeVar("Node", bound=Hashable)


class SourceMismatchError(ValueError):
    """Raised when a conversion is applied to a curve of the wrong grid or class."""


class GridMismatchError(ValueError):
    """Raised when two curves on different grids are combined."""


class DegenerateDivisionError(ValueError):
    """Raised when a division makes some letters a pure cyclic permutation of each other."""


class UnknownConversionError(ValueError):
    """Raised for a conversion name that is not in the registry."""


@dataclass(frozen=True)
class CurveClass:
    wiggly: bool
    balanced: bool

    def satisfies(self, requirement: Optional[str]) -> bool:
        if requirement is None:
            return True
        return self.wiggly if requirement == WIGGLY else self.balanced


def classify_word(word: str) -> CurveClass:
    plus, minus, zero = word.count("+"), word.count("-"), word.count("0")
    return CurveClass(wiggly=zero == 0, balanced=zero > 0 and plus == minus == zero)


def classify(sys: SimpleLsys) -> CurveClass:
    """Wiggly: no straight turns. Balanced: as many +, - and 0 (triangular grid only)."""
    result = classify_word(sys.production)
    if sys.grid is not GridKind.TRIANGULAR:
        return CurveClass(result.wiggly, False)
    return result


@dataclass(frozen=True, eq=False)
class ConversionStage:
    """One step of a conversion pipeline."""

    kind: str
    rules: Mapping[str, str] = field(default_factory=dict)
    when: Mapping[str, Mapping[int, str]] = field(default_factory=dict)
    increments: Mapping[str, int] = field(default_factory=dict)
    modulus: int = 3
    prefix: str = ""
    suffix: str = ""
    units: Tuple[int, int] = (60, 60)
    rows: Tuple[int, int] = (2, 4)
    include: str = ""

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ConversionStage":
        if len(data) != 1:
            raise ValueError(f"A stage needs exactly one kind, got {sorted(data)}")
        kind, body = next(iter(data.items()))
        if kind == "rewrite":
            return cls(kind, rules={str(k): str(v or "") for k, v in body.items()})
        if kind == "drop_prefix":
            return cls(kind, prefix=str(body))
        if kind == "drop_suffix":
            return cls(kind, suffix=str(body))
        if kind == "track":
            return cls(
                kind,
                rules={str(k): str(v or "") for k, v in body["rules"].items()},
                when={str(k): {int(d): str(r) for d, r in v.items()} for k, v in body.get("when", {}).items()},
                increments={str(k): int(v) for k, v in body.get("increments", {"+": 1, "-": -1}).items()},
                modulus=int(body.get("modulus", 3)),
            )
        if kind == "remap":
            return cls(
                kind,
                rules={str(k): str(v or "") for k, v in body["map"].items()},
                units=(int(body.get("from", 60)), int(body.get("to", 60))),
            )
        if kind == "rows":
            return cls(kind, rows=(int(body[0]), int(body[1])))
        if kind == "include":
            return cls(kind, include=str(body))
        raise ValueError(f"Unknown conversion stage kind: {kind}")


@dataclass(frozen=True, eq=False)
class ConversionSpec:
    """A named conversion from curves on a searchable grid to a curve on a target grid."""

    name: str
    source: GridKind
    target: GridKind
    angle: int
    stages: Tuple[ConversionStage, ...]
    mode: str = PC_MODE
    curve_class: Optional[str] = None
    input: str = "curve"
    sign: str = "+"
    iterate: int = 2
    drawing: str = DRAW
    example: str = ""
    verified: bool = True
    note: str = ""

    @property
    def key(self) -> str:
        return f"{self.source.short_name}:{self.name}"

    @classmethod
    def from_dict(cls, source: GridKind, data: Mapping[str, Any]) -> "ConversionSpec":
        return cls(
            name=str(data["name"]),
            source=source,
            target=GridKind.parse(str(data["target"])),
            angle=int(data["angle"]),
            stages=tuple(ConversionStage.from_dict(stage) for stage in data.get("stages", [])),
            mode=str(data.get("mode", PC_MODE)),
            curve_class=data.get("class"),
            input=str(data.get("input", "curve")),
            sign=str(data.get("sign", "+")),
            iterate=int(data.get("iterate", 2)),
            drawing=str(data.get("drawing", DRAW)),
            example=str(data.get("example", "")),
            verified=bool(data.get("verified", True)),
            note=str(data.get("note", "")),
        )


@dataclass
class _Stream:
    """
    Intermediate conversion state: a turtle word at an angle, or absolute directions in 30 degree units.

    labels runs parallel to the word's symbols (or to the steps) and names the rule that last emitted each.
    """

    word: Optional[str]
    angle: int
    steps: Optional[List[int]] = None
    drawing: str = DRAW
    labels: List[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.labels:
            size = len(self.steps) if self.steps is not None else len(self.word or "")
            self.labels = [COPIED] * size


def _trace(word: str, angle: int, drawing: str) -> List[int]:
    step = angle // DEGREES_PER_UNIT
    heading = 0
    directions = []
    for symbol in word:
        if symbol in drawing:
            directions.append(heading)
        elif symbol == "+":
            heading = (heading + step) % RING
        elif symbol == "-":
            heading = (heading - step) % RING
    return directions


def _steps_to_word(steps: Sequence[int], angle: int, labels: Sequence[str]) -> Tuple[str, List[str]]:
    unit = angle // DEGREES_PER_UNIT
    count = RING // unit
    pieces = []
    emitted: List[str] = []
    previous = 0
    for direction, label in zip(steps, labels):
        if direction % unit:
            raise ValueError(f"Direction {direction} is not a multiple of {angle} degrees")
        turn = ((direction - previous) // unit) % count
        piece = ("-" * (count - turn) if turn > count // 2 else "+" * turn) + DRAW
        pieces.append(piece)
        emitted.extend([label] * len(piece))
        previous = direction
    return "".join(pieces), emitted


def _as_steps(stream: _Stream) -> Tuple[List[int], List[str]]:
    if stream.steps is not None:
        return stream.steps, stream.labels
    word = stream.word or ""
    labels = [label for symbol, label in zip(word, stream.labels) if symbol in stream.drawing]
    return _trace(word, stream.angle, stream.drawing), labels


def _as_word(stream: _Stream) -> Tuple[str, List[str]]:
    if stream.word is not None:
        return stream.word, stream.labels
    return _steps_to_word(stream.steps or [], stream.angle, stream.labels)


def _rewrite(
    word: str, labels: Sequence[str], keys: Iterable[str], replace: Callable[[str], Optional[str]]
) -> Tuple[str, List[str]]:
    """Replace tokens simultaneously; every emitted symbol is labelled with the token it replaced."""
    pieces = []
    emitted: List[str] = []
    index = 0
    for token in tokenize(word, keys):
        replacement = replace(token)
        if replacement is None:
            pieces.append(token)
            emitted.extend(labels[index : index + len(token)])
        else:
            pieces.append(replacement)
            emitted.extend([token] * len(replacement))
        index += len(token)
    return "".join(pieces), emitted


def _apply_track(word: str, labels: Sequence[str], stage: ConversionStage) -> Tuple[str, List[str]]:
    direction = 0

    def replace(token: str) -> Optional[str]:
        nonlocal direction
        replacement = None
        if token in stage.rules:
            replacement = stage.when.get(token, {}).get(direction % stage.modulus, stage.rules[token])
        direction = (direction + stage.increments.get(token, 0)) % stage.modulus
        return replacement

    return _rewrite(word, labels, set(stage.rules) | set(stage.increments), replace)


def _apply_remap(steps: Sequence[int], labels: Sequence[str], stage: ConversionStage) -> Tuple[List[int], List[str]]:
    source_unit = stage.units[0] // DEGREES_PER_UNIT
    target_unit = stage.units[1] // DEGREES_PER_UNIT
    result: List[int] = []
    emitted: List[str] = []
    for direction in steps:
        key = str(direction // source_unit + 1)
        if direction % source_unit:
            raise ValueError(f"Direction {direction} does not fit the {stage.units[0]} degree numbering")
        replacement = stage.rules.get(key)
        if replacement is None:
            raise ValueError(f"No remap entry for direction {key}")
        result.extend(((int(ch) - 1) * target_unit) % RING for ch in replacement)
        emitted.extend([key] * len(replacement))
    return result, emitted


def _apply_rows(steps: Sequence[int], stage: ConversionStage) -> List[int]:
    even_up, odd_up = stage.rows
    ups = (even_up, odd_up)
    row = 0
    result = []
    for direction in steps:
        if direction in (0, 6):
            result.append(direction)
        elif direction == 3:
            result.append(ups[row % 2])
            row += 1
        elif direction == 9:
            result.append((ups[(row - 1) % 2] + 6) % RING)
            row -= 1
        else:
            raise ValueError(f"Row redirection needs horizontal and vertical steps, got direction {direction}")
    return result


def _run(spec: ConversionSpec, stream: _Stream, registry: Any) -> _Stream:
    for stage in spec.stages:
        if stage.kind == "include":
            inner = registry.get(stage.include, source=spec.source)
            stream = _run(inner, stream, registry)
            if stream.word is not None:
                stream = _Stream(stream.word, inner.angle, drawing=inner.drawing, labels=stream.labels)
            continue
        if stage.kind in WORD_STAGES:
            word, labels = _as_word(stream)
            if stage.kind == "rewrite":
                word, labels = _rewrite(word, labels, stage.rules.keys(), stage.rules.get)
            elif stage.kind == "drop_prefix":
                if word.startswith(stage.prefix):
                    word, labels = word[len(stage.prefix) :], labels[len(stage.prefix) :]
            elif stage.kind == "drop_suffix":
                if word.endswith(stage.suffix):
                    cut = len(word) - len(stage.suffix)
                    word, labels = word[:cut], labels[:cut]
            else:
                word, labels = _apply_track(word, labels, stage)
            stream = _Stream(word, stream.angle, drawing=stream.drawing, labels=list(labels))
        elif stage.kind == "remap":
            steps, labels = _apply_remap(*_as_steps(stream), stage)
            stream = _Stream(None, stage.units[1], steps, labels=labels)
        elif stage.kind == "rows":
            steps, labels = _as_steps(stream)
            stream = _Stream(None, DEGREES_PER_UNIT, _apply_rows(steps, stage), labels=list(labels))
    return stream


def default_registry() -> Any:
    from src.services.managers import ConversionRegistry  # pylint: disable=import-outside-toplevel

    return ConversionRegistry.default()


def registry() -> List[ConversionSpec]:
    """All conversions of the default registry."""
    return default_registry().list_specs()


def convert_with_origins(
    word: str,
    spec: ConversionSpec,
    curve_class: Optional[CurveClass] = None,
    conversions: Any = None,
) -> Tuple[GridPath, List[str]]:
    """
    Rewrite a word of the source grid into a curve on the target grid, naming the origin of every edge.

    Args:
        word: Iterate or tile word of a curve on the source grid
        spec: The conversion
        curve_class: Class of the curve; classified from the word when omitted
        conversions: Registry used to resolve included conversions

    Returns:
        Tuple[GridPath, List[str]]: The converted curve, starting at the origin, and for each of its
        edges the rule key (rewrite token or remapped direction number) that last emitted it;
        edges copied unchanged from the source word are labelled with the empty string

    Raises:
        SourceMismatchError: If the word's class does not meet the conversion's requirement
    """
    curve_class = classify_word(word) if curve_class is None else curve_class
    if not curve_class.satisfies(spec.curve_class):
        raise SourceMismatchError(f"{spec.name} needs a {spec.curve_class} curve")
    conversions = default_registry() if conversions is None else conversions
    stream = _run(spec, _Stream(word, spec.source.turn_degrees), conversions)
    if stream.steps is not None:
        path = GridPath(spec.target, spec.target.point_type.zero(), tuple(stream.steps))
        return path, list(stream.labels)
    final = stream.word or ""
    origins = [label for symbol, label in zip(final, stream.labels) if symbol in spec.drawing]
    return turtle(final, spec.target, angle=spec.angle, drawing=spec.drawing), origins


def convert(
    word: str,
    spec: ConversionSpec,
    curve_class: Optional[CurveClass] = None,
    conversions: Any = None,
) -> GridPath:
    """Rewrite a word of the source grid into a curve on the target grid."""
    return convert_with_origins(word, spec, curve_class, conversions)[0]


def source_word(sys: SimpleLsys, spec: ConversionSpec, n: Optional[int] = None, sign: Optional[str] = None) -> str:
    """The word a conversion starts from: an iterate of the curve or the word of one of its tiles."""
    n = spec.iterate if n is None else n
    if spec.input == "tile":
        return tile_word(sys, sign or spec.sign, n)
    return iterate_simple(sys, n)


def convert_curve(
    sys: SimpleLsys,
    spec: ConversionSpec,
    n: Optional[int] = None,
    sign: Optional[str] = None,
    conversions: Any = None,
) -> GridPath:
    """Convert the curve's iterate (or tile) as the conversion prescribes."""
    return convert_curve_with_origins(sys, spec, n, sign, conversions)[0]


def convert_curve_with_origins(
    sys: SimpleLsys,
    spec: ConversionSpec,
    n: Optional[int] = None,
    sign: Optional[str] = None,
    conversions: Any = None,
) -> Tuple[GridPath, List[str]]:
    """As convert_curve, with the rule that emitted each edge."""
    if sys.grid is not spec.source:
        raise SourceMismatchError(f"{spec.name} converts curves on {spec.source.value}, not {sys.grid.value}")
    return convert_with_origins(source_word(sys, spec, n, sign), spec, classify(sys), conversions)


def _placements(path: GridPath, grid: GridKind):
    ring = grid.ring_order
    start = path.start
    relative = [p - start for p in path.points]
    for offset, _ in grid_table(grid).classes:
        for reflect in (False, True):
            for rotation in range(ring):
                points = [offset + (p.conj() if reflect else p).rotate(rotation) for p in relative]
                directions = [((-d if reflect else d) + rotation) % ring for d in path.directions]
                yield points, directions


def fit_to_grid(path: GridPath, grid: GridKind) -> Optional[GridPath]:
    """Place the path on the grid by a rotation, reflection and vertex-class offset, if possible."""
    if path.grid.point_type is not grid.point_type:
        return None
    for points, directions in _placements(path, grid):
        if not grid_member(grid, points[0]):
            continue
        if all(edge_member(grid, p, d) for p, d in zip(points, directions)):
            return GridPath(grid, points[0], tuple(directions), path.closed)
    return None


def _ball(grid: GridKind, center: RingPoint, radius: int) -> Dict[RingPoint, int]:
    distances = {center: 0}
    frontier = [center]
    for distance in range(1, radius + 1):
        nxt = []
        for p in frontier:
            for q in neighbors(grid, p):
                if q not in distances:
                    distances[q] = distance
                    nxt.append(q)
        frontier = nxt
    return distances


def _near_ends(grid: GridKind, ends: Set[RingPoint]) -> Set[RingPoint]:
    near: Set[RingPoint] = set()
    for end in ends:
        near.update(_ball(grid, end, END_MARGIN))
    return near


def _enclosed(
    visited: Set[RingPoint],
    seeds: Iterable[Node],
    step: Callable[[Node], List[Node]],
    position: Callable[[Node], RingPoint],
) -> Set[Node]:
    """
    Nodes reachable from the seeds through step() that cannot escape the path.

    A flood escapes once it gets farther from the centroid of the visited vertices than any of them,
    or once it joins a flood that escaped.
    """
    coords = [p.to_complex() for p in visited]
    center = sum(coords) / len(coords)
    limit = max(abs(z - center) for z in coords) + ESCAPE_MARGIN
    outside: Set[Node] = set()
    enclosed: Set[Node] = set()
    for seed in seeds:
        if seed in outside or seed in enclosed:
            continue
        component = {seed}
        frontier = [seed]
        escaped = False
        while frontier and not escaped:
            node = frontier.pop()
            escaped = abs(position(node).to_complex() - center) > limit
            for nxt in step(node):
                if nxt in outside:
                    escaped = True
                elif nxt not in component:
                    component.add(nxt)
                    frontier.append(nxt)
        (outside if escaped else enclosed).update(component)
    return enclosed


def verify_pc(path: GridPath, grid: GridKind) -> bool:
    """
    Check that the path is point-covering on the grid.

    The path must fit the grid and visit no vertex twice. Unvisited vertices that the path cuts off
    from the rest of the plane are holes; a hole is only allowed within two steps of an end.
    """
    if len(path) <= 1:
        return True
    placed = fit_to_grid(path, grid)
    if placed is None:
        logger.debug("Path does not fit %s", grid.value)
        return False
    points = placed.points[:-1] if placed.closed else placed.points
    visited: Set[RingPoint] = set(points)
    if len(visited) != len(points):
        return False

    def step(p: RingPoint) -> List[RingPoint]:
        return [q for q in neighbors(grid, p) if q not in visited]

    seeds = {q for p in visited for q in step(p)}
    holes = _enclosed(visited, seeds, step, lambda p: p)
    holes -= _near_ends(grid, {placed.points[0], placed.points[-1]})
    if holes:
        logger.debug("%s vertices are skipped by the path, e.g. %s", len(holes), next(iter(holes)))
        return False
    return True


def _separated(passes: Sequence[Tuple[Optional[int], Optional[int]]], x: int, y: int) -> bool:
    for first, second in passes:
        if first is None or second is None:
            continue
        low, high = min(first, second), max(first, second)
        if (low < x < high) != (low < y < high):
            return True
    return False


def verify_ec(path: GridPath, grid: GridKind) -> bool:
    """
    Check that the path is edge-covering on the grid.

    The path must fit the grid and traverse no edge twice. Untraversed edges that the path cuts off
    from the rest of the plane are holes; floods of untraversed edges may touch the path at a vertex
    but never cross one of its passes there, and they stop at the ends. A hole is only allowed
    within two steps of an end.
    """
    if len(path) <= 1:
        return True
    placed = fit_to_grid(path, grid)
    if placed is None:
        logger.debug("Path does not fit %s", grid.value)
        return False
    edges = placed.undirected_edges
    traversed = set(edges)
    if len(traversed) != len(edges):
        return False
    visited = set(placed.points)
    ends = {placed.points[0], placed.points[-1]}
    passes = vertex_passes(placed)
    half = grid.ring_order // 2

    def rays(p: RingPoint) -> List[int]:
        figure = vertex_figure(grid, p) or frozenset()
        return [k for k in sorted(figure) if undirected(p, p + p.unit(k)) not in traversed]

    # A node (p, k) is the sector around p that holds the untraversed ray k.
    def step(node: Tuple[RingPoint, int]) -> List[Tuple[RingPoint, int]]:
        p, k = node
        q = p + p.unit(k)
        if q in ends:
            return []
        arrival = (k + half) % grid.ring_order
        return [(q, r) for r in rays(q) if not _separated(passes.get(q, ()), arrival, r)]

    seeds = [(p, k) for p in visited - ends for k in rays(p)]
    holes = {p for p, _ in _enclosed(visited, seeds, step, lambda node: node[0])} - _near_ends(grid, ends)
    if holes:
        logger.debug("Edges at %s vertices are skipped by the path, e.g. at %s", len(holes), next(iter(holes)))
        return False
    return True


def verify(path: GridPath, spec: ConversionSpec) -> bool:
    """Verify a converted path in the conversion's mode."""
    return verify_ec(path, spec.target) if spec.mode == EC_MODE else verify_pc(path, spec.target)


def product(l1: SimpleLsys, l2: SimpleLsys) -> SimpleLsys:
    """
    The curve whose production is l1's with l2's production in place of every F.

    Raises:
        GridMismatchError: If the curves live on different grids
    """
    if l1.grid is not l2.grid:
        raise GridMismatchError(f"Cannot multiply curves on {l1.grid.value} and {l2.grid.value}")
    return SimpleLsys(l1.grid, substitute(l1.production, {DRAW: l2.production}))


def alternating_system(sys: SimpleLsys) -> MultiLsys:
    """F draws the curve with G in place of F; G draws its sign-swapped production."""
    return MultiLsys(
        axiom=DRAW,
        rules={DRAW: sys.production.replace(DRAW, "G"), "G": swap_word(sys.production)},
        drawing=frozenset({DRAW, "G"}),
        angle=sys.grid.turn_degrees,
    )


def sign_flip_system(sys: SimpleLsys) -> MultiLsys:
    """F maps to the sign-swapped production while every turn flips its sign."""
    return MultiLsys(
        axiom=DRAW,
        rules={DRAW: swap_word(sys.production), "+": "-", "-": "+"},
        drawing=frozenset(DRAW),
        angle=sys.grid.turn_degrees,
    )


def _split(word: str, counted: Set[str], quotas: Sequence[int]) -> List[str]:
    """Cut word after each quota of counted letters; symbols between parts start the next part."""
    parts: List[str] = []
    current: List[str] = []
    seen = 0
    index = 0
    for symbol in word:
        current.append(symbol)
        if symbol in counted:
            seen += 1
            if index < len(quotas) - 1 and seen == quotas[index]:
                parts.append("".join(current))
                current = []
                seen = 0
                index += 1
    parts.append("".join(current))
    if len(parts) != len(quotas) or seen != quotas[-1]:
        raise ValueError(f"Part lengths {list(quotas)} do not match the word {word!r}")
    return parts


def _check_degenerate(rules: Mapping[str, str]) -> None:
    """
    Reject maps that only permute letters, such as B -> C, C -> E, E -> B, or a fixed point B -> B.

    A map counts when its production holds exactly one letter, turns aside; its letter never grows,
    so a cycle of such maps at any length never subdivides. Longer productions always grow.
    """
    letters = {letter for letter in rules if letter.isalpha()}
    single: Dict[str, str] = {}
    for letter in letters:
        produced = [symbol for symbol in rules[letter] if symbol in letters]
        if len(produced) == 1:
            single[letter] = produced[0]
    for letter in single:
        seen = {letter}
        current = single[letter]
        while current in single:
            if current in seen:
                raise DegenerateDivisionError(f"Productions {sorted(seen)} only permute letters")
            seen.add(current)
            current = single[current]


def divide(sys: SimpleLsys, parts: Union[int, Sequence[int]]) -> MultiLsys:
    """
    Cut every edge of the curve into letters s1..sd and regroup the production over them.

    Args:
        sys: Curve to divide
        parts: Number d of equal parts, or the number of letters in each part (summing to d * R)

    Returns:
        MultiLsys: Axiom s1..sd with one production per new letter

    Raises:
        DegenerateDivisionError: If some productions only permute letters
    """
    quotas = [sys.order] * parts if isinstance(parts, int) else list(parts)
    count = len(quotas)
    if count < 1 or any(q < 1 for q in quotas):
        raise ValueError("Division needs positive part lengths")
    if count == 1:
        return sys.to_multi()
    if sum(quotas) != count * sys.order:
        raise ValueError(f"Part lengths must sum to {count * sys.order}")
    if count > len(PART_LETTERS):
        raise ValueError(f"At most {len(PART_LETTERS)} parts are supported")
    letters = PART_LETTERS[:count]
    word = substitute(sys.production, {DRAW: letters})
    rules = dict(zip(letters, _split(word, set(letters), quotas)))
    _check_degenerate(rules)
    logger.debug("Divided %s into %s", sys, rules)
    return MultiLsys(axiom=letters, rules=rules, drawing=frozenset(letters), angle=sys.grid.turn_degrees)


def divide_multi(
    sys: MultiLsys,
    substitution: Mapping[str, str],
    parts: Optional[Mapping[str, Sequence[int]]] = None,
) -> MultiLsys:
    """
    Divide a multi-letter system: replace each letter by its part letters and split its production.

    Args:
        sys: System with several non-constant letters
        substitution: Part letters per letter, e.g. {"L": "AB", "R": "CD"}
        parts: Letters per part for each substituted letter; equal parts when omitted

    Returns:
        MultiLsys: The divided system
    """
    if all(len(value) == 1 and value == key for key, value in substitution.items()):
        return sys
    new_letters = set("".join(substitution.values()))
    rules: Dict[str, str] = {}
    for letter, production in sys.rules.items():
        if letter not in substitution:
            rules[letter] = production
            continue
        targets = substitution[letter]
        word = substitute(production, substitution)
        total = sum(1 for symbol in word if symbol in new_letters)
        quotas = list(parts[letter]) if parts and letter in parts else [total // len(targets)] * len(targets)
        rules.update(zip(targets, _split(word, new_letters, quotas)))
    _check_degenerate(rules)
    drawing = {symbol for symbol in sys.drawing if symbol not in substitution}
    for letter, targets in substitution.items():
        if letter in sys.drawing:
            drawing.update(targets)
    return MultiLsys(
        axiom=substitute(sys.axiom, substitution), rules=rules, drawing=frozenset(drawing), angle=sys.angle
    )


def substituted_iterate(sys: MultiLsys, substitution: Mapping[str, str], n: int) -> str:
    """Iterate n of sys with every letter replaced by its part letters."""
    return substitute(iterate(sys, n), substitution)
