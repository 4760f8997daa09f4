# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Turtle interpretation and the staged validity checks for simple L-systems."""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.services.geometry import DirectedEdge, RingPoint, chords_noncrossing, sq_dist, undirected, winding_interior
from src.services.grids import Face, GridKind, faces_in_window
from src.services.lsystem import DRAW, MalformedSystemError, MultiLsys, SimpleLsys, is_trihex_word, iterate

logger = logging.getLogger(__name__)

# Constants
TILE_AXIOMS: Dict[GridKind, Dict[str, str]] = {
    GridKind.SQUARE: {"+": "F+F+F+F", "-": "F-F-F-F"},
    GridKind.TRIANGULAR: {"+": "F+F+F", "-": "F-F-F"},
    GridKind.TRIHEXAGONAL: {"+": "F+F+F+F+F+F", "-": "F--F--F"},
}
CLOSING_TURNS: Dict[GridKind, Dict[str, str]] = {
    GridKind.SQUARE: {"+": "+", "-": "-"},
    GridKind.TRIANGULAR: {"+": "+", "-": "-"},
    GridKind.TRIHEXAGONAL: {"+": "+", "-": "--"},
}

Edge = Tuple[RingPoint, RingPoint]


class InadmissibleSymbolError(ValueError):
    """Raised when a word uses a turn the grid does not admit."""


class Stage(Enum):
    """Validity stages in the order they are evaluated."""

    TURN = "Turn"
    DIST = "Dist"
    OBV = "Obv"
    TILES_SA = "Tiles-SA"
    TILES_FILL = "Tiles-Fill"


@dataclass(frozen=True)
class GridPath:
    """Sequence of unit edges starting at start, one direction index per edge."""

    grid: GridKind
    start: RingPoint
    directions: Tuple[int, ...]
    closed: bool = False

    @cached_property
    def points(self) -> List[RingPoint]:
        points = [self.start]
        for k in self.directions:
            points.append(points[-1] + self.start.unit(k))
        return points

    @property
    def end(self) -> RingPoint:
        return self.points[-1]

    @property
    def edges(self) -> List[DirectedEdge]:
        return [DirectedEdge(p, k) for p, k in zip(self.points, self.directions)]

    @cached_property
    def undirected_edges(self) -> List[Edge]:
        pts = self.points
        return [undirected(p, q) for p, q in zip(pts, pts[1:])]

    def __len__(self) -> int:
        return len(self.directions)


@dataclass(frozen=True)
class Tile:
    """Closed tile path with the faces it encloses and the grid edges between two enclosed faces."""

    sign: str
    k: int
    path: GridPath
    interior_faces: Tuple[Face, ...]
    interior_edges: FrozenSet[Edge]


@dataclass(frozen=True)
class CheckResult:
    passed: bool
    stage: Optional[Stage] = None

    def __str__(self) -> str:
        return "pass" if self.passed else f"fail: {self.stage.value if self.stage else 'unknown'}"


def turn_step(grid: GridKind, angle: Optional[int] = None) -> int:
    """Ring units per '+' for a turn angle in degrees (grid default when angle is None)."""
    degrees = grid.turn_degrees if angle is None else angle
    unit = 360 // grid.ring_order
    if degrees % unit:
        raise InadmissibleSymbolError(f"Turn angle {degrees} is not a multiple of {unit} on {grid.value}")
    return degrees // unit


def _validate_word(word: str, grid: GridKind, drawing: FrozenSet[str]) -> None:
    if grid is GridKind.SQUARE and "0" in word:
        raise InadmissibleSymbolError("The square grid has no straight turn 0")
    if grid is GridKind.TRIHEXAGONAL:
        stripped = "".join(DRAW if ch in drawing else ch for ch in word if ch in "+-0" or ch in drawing)
        if not is_trihex_word(stripped):
            raise InadmissibleSymbolError(f"Tri-hexagonal words only turn by + and --: {word!r}")


def trace_directions(
    word: str,
    grid: GridKind,
    start_dir: int = 0,
    angle: Optional[int] = None,
    drawing: Iterable[str] = DRAW,
) -> List[int]:
    """Absolute direction index of every drawn edge of word."""
    drawing_set = frozenset(drawing)
    if angle is None:
        _validate_word(word, grid, drawing_set)
    step = turn_step(grid, angle)
    order = grid.ring_order
    heading = start_dir % order
    directions: List[int] = []
    for symbol in word:
        if symbol in drawing_set:
            directions.append(heading)
        elif symbol == "+":
            heading = (heading + step) % order
        elif symbol == "-":
            heading = (heading - step) % order
    return directions


def turtle(
    word: str,
    grid: GridKind,
    start: Optional[RingPoint] = None,
    start_dir: int = 0,
    angle: Optional[int] = None,
    drawing: Iterable[str] = DRAW,
) -> GridPath:
    """
    Interpret word as turtle moves: drawing letters step one unit, + and - turn by the angle.

    Args:
        word: Word to interpret; letters that do not draw are ignored
        grid: Grid giving the ring and the default turn angle
        start: Start point, the origin by default
        start_dir: Initial heading as a direction index
        angle: Turn angle in degrees; when omitted the grid's turn alphabet is enforced
        drawing: Letters that draw an edge

    Returns:
        GridPath: The traced path; closed when it returns to its start
    """
    origin = grid.point_type.zero() if start is None else start
    directions = tuple(trace_directions(word, grid, start_dir, angle, drawing))
    path = GridPath(grid, origin, directions)
    if directions and path.end == origin:
        path = GridPath(grid, origin, directions, closed=True)
    return path


def check_turn(sys: SimpleLsys) -> bool:
    """Net rotation of the motif is zero."""
    production = sys.production
    net = (production.count("+") - production.count("-")) * sys.grid.turn_degrees
    return net == 0


def check_dist(sys: SimpleLsys) -> bool:
    """Squared distance from start to end of the motif equals the order."""
    path = turtle(sys.production, sys.grid)
    return sq_dist(path.start, path.end) == sys.order


def vertex_passes(path: GridPath) -> Dict[RingPoint, List[Tuple[Optional[int], Optional[int]]]]:
    """In and out rays of every pass through each vertex; None marks the open ends of the path."""
    half = path.grid.ring_order // 2
    order = path.grid.ring_order
    points = path.points
    directions = path.directions
    passes: Dict[RingPoint, List[Tuple[Optional[int], Optional[int]]]] = defaultdict(list)
    for i in range(1, len(directions)):
        passes[points[i]].append(((directions[i - 1] + half) % order, directions[i]))
    if directions:
        if path.closed:
            passes[points[0]].append(((directions[-1] + half) % order, directions[0]))
        else:
            passes[points[0]].append((None, directions[0]))
            passes[points[-1]].append(((directions[-1] + half) % order, None))
    return passes


def check_self_avoiding(path: GridPath) -> bool:
    """No edge is traversed twice and the curve never crosses itself at a shared vertex."""
    edges = path.undirected_edges
    if len(set(edges)) != len(edges):
        return False
    return all(chords_noncrossing(chords) for chords in vertex_passes(path).values() if len(chords) > 1)


def tile_word(sys: SimpleLsys, sign: str, k: int, closing: bool = True) -> str:
    """The k-th iterate of the grid's tile axiom, optionally followed by its closing turn."""
    if sign not in ("+", "-"):
        raise ValueError(f"Tile sign must be + or -, got {sign!r}")
    axioms = TILE_AXIOMS.get(sys.grid)
    if axioms is None:
        raise ValueError(f"No tile axiom for {sys.grid.value}")
    word = iterate(MultiLsys(axiom=axioms[sign], rules={DRAW: sys.production}, angle=sys.grid.turn_degrees), k)
    if closing:
        word += CLOSING_TURNS[sys.grid][sign]
    return word


def interior_of(path: GridPath) -> Tuple[Tuple[Face, ...], FrozenSet[Edge]]:
    """Faces enclosed by a closed path and the edges shared by two enclosed faces."""
    faces = faces_in_window(path.grid, path.points)
    by_scale: Dict[int, List[Face]] = defaultdict(list)
    for face in faces:
        by_scale[face.scale].append(face)
    inside: List[Face] = []
    for scale, group in by_scale.items():
        flags = winding_interior(path.points, [face.center for face in group], scale)
        inside.extend(face for face, flag in zip(group, flags) if flag)
    counts: Counter = Counter(edge for face in inside for edge in face.edges())
    shared = frozenset(edge for edge, count in counts.items() if count == 2)
    return tuple(inside), shared


def build_tile(sys: SimpleLsys, sign: str, k: int = 1) -> Tile:
    """
    Build the tile of the k-th iterate.

    Raises:
        ValueError: If the tile path does not close, which means the curve fails its checks
    """
    path = turtle(tile_word(sys, sign, k, closing=False), sys.grid)
    if not path.closed:
        raise ValueError(f"Tile {sign}{k} of {sys} does not close")
    faces, edges = interior_of(path)
    return Tile(sign, k, path, faces, edges)


def tile_fills(tile: Tile) -> bool:
    """Every edge between two enclosed faces is traversed."""
    return tile.interior_edges <= set(tile.path.undirected_edges)


def _tile_stage(sys: SimpleLsys) -> Optional[Stage]:
    tiles = []
    for sign in ("+", "-"):
        try:
            tile = build_tile(sys, sign, 1)
        except ValueError:
            return Stage.TILES_SA
        if not check_self_avoiding(tile.path):
            return Stage.TILES_SA
        tiles.append(tile)
    if not all(tile_fills(tile) for tile in tiles):
        return Stage.TILES_FILL
    return None


def check_tiles(sys: SimpleLsys) -> bool:
    """Both first tiles are self-avoiding and traverse every interior edge."""
    return _tile_stage(sys) is None


def full_check(sys: SimpleLsys) -> CheckResult:
    """Run Turn, Dist, Obv, Tiles-SA and Tiles-Fill in order, stopping at the first failure."""
    production = sys.production
    if not (production.startswith(DRAW) and production.endswith(DRAW)):
        raise MalformedSystemError(f"Production {production!r} must start and end with F")
    if not check_turn(sys):
        return CheckResult(False, Stage.TURN)
    if not check_dist(sys):
        return CheckResult(False, Stage.DIST)
    if not check_self_avoiding(turtle(production, sys.grid)):
        return CheckResult(False, Stage.OBV)
    stage = _tile_stage(sys)
    if stage is not None:
        return CheckResult(False, stage)
    return CheckResult(True)

