# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Uniform tilings: grid kinds, vertex/edge membership and face enumeration."""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Type

from src.services.geometry import ExactPoint, OctagonalPoint, RingPoint, undirected

logger = logging.getLogger(__name__)

# Constants
SEARCHABLE_ALIASES = {
    "tri": "(3^6)",
    "triangular": "(3^6)",
    "square": "(4^4)",
    "sq": "(4^4)",
    "trihex": "(3.6.3.6)",
    "kagome": "(3.6.3.6)",
    "hex": "(6^3)",
    "honeycomb": "(6^3)",
}


class GridKind(Enum):
    """The eleven uniform tilings, by vertex symbol (plus the mirror image of (3^4.6))."""

    TRIANGULAR = "(3^6)"
    SQUARE = "(4^4)"
    HEXAGONAL = "(6^3)"
    TRIHEXAGONAL = "(3.6.3.6)"
    ELONGATED_TRIANGULAR = "(3^3.4^2)"
    TRUNCATED_SQUARE = "(4.8.8)"
    SNUB_SQUARE = "(3.3.4.3.4)"
    TRUNCATED_TRIHEXAGONAL = "(4.6.12)"
    SNUB_HEXAGONAL = "(3^4.6)"
    SNUB_HEXAGONAL_MIRROR = "(3^4.6)*"
    TRUNCATED_HEXAGONAL = "(3.12.12)"
    RHOMBITRIHEXAGONAL = "(3.4.6.4)"

    @property
    def symbol(self) -> str:
        return self.value.rstrip("*")

    @property
    def enantiomer(self) -> bool:
        return self is GridKind.SNUB_HEXAGONAL_MIRROR

    @property
    def searchable(self) -> bool:
        return self in (GridKind.TRIANGULAR, GridKind.SQUARE, GridKind.TRIHEXAGONAL)

    @property
    def point_type(self) -> Type[RingPoint]:
        return OctagonalPoint if self is GridKind.TRUNCATED_SQUARE else ExactPoint

    @property
    def ring_order(self) -> int:
        return self.point_type.ORDER

    @property
    def short_name(self) -> str:
        return {GridKind.TRIANGULAR: "tri", GridKind.SQUARE: "square", GridKind.TRIHEXAGONAL: "trihex"}.get(
            self, self.value
        )

    @property
    def turn_degrees(self) -> int:
        """Default turn angle of '+' for searchable grids."""
        return {GridKind.TRIANGULAR: 120, GridKind.SQUARE: 90, GridKind.TRIHEXAGONAL: 60}.get(self, 30)

    @property
    def directions(self) -> FrozenSet[int]:
        """Admissible direction indices in the grid's ring."""
        figures: FrozenSet[int] = frozenset()
        for _, figure in _tables()[self].classes:
            figures |= figure
        return figures

    @classmethod
    def parse(cls, text: str) -> "GridKind":
        """Parse a grid tag such as 'tri', 'square', '(4.8.8)' or '(3^4.6)*'."""
        key = text.strip()
        key = SEARCHABLE_ALIASES.get(key.lower(), key)
        key = key.replace("⁶", "^6").replace("⁴", "^4").replace("³", "^3").replace("²", "^2")
        if not key.startswith("("):
            key = f"({key})"
        for kind in cls:
            if kind.value == key:
                return kind
        raise ValueError(f"Unknown grid: {text}")


@dataclass(frozen=True)
class GridTable:
    """Periodic description of a tiling: lattice periods and vertex classes with their edge directions."""

    periods: Tuple[RingPoint, RingPoint]
    classes: Tuple[Tuple[RingPoint, FrozenSet[int]], ...]


@dataclass(frozen=True)
class Face:
    """Grid face: center scaled by scale, and its boundary vertices in cyclic order."""

    center: RingPoint
    scale: int
    vertices: Tuple[RingPoint, ...]

    def edges(self) -> List[Tuple[RingPoint, RingPoint]]:
        ring = self.vertices + self.vertices[:1]
        return [undirected(p, q) for p, q in zip(ring, ring[1:])]


def _e(*coefficients: int) -> ExactPoint:
    return ExactPoint(*coefficients)


def _unit(k: int) -> ExactPoint:
    return ExactPoint.unit(k)


def _figure(*directions: int, order: int = 12) -> FrozenSet[int]:
    return frozenset(k % order for k in directions)


# Vertices of a 12-gon around which the (4.6.12) and (3.12.12) classes are placed.
_DODECAGON = (
    (0, 0, 0, 0),
    (0, -1, 0, 0),
    (0, -1, -1, 0),
    (0, -1, -1, -1),
    (1, -1, -2, -1),
    (1, 0, -2, -2),
    (2, 0, -2, -2),
    (2, 1, -2, -2),
    (2, 1, -1, -2),
    (2, 1, -1, -1),
    (1, 1, 0, -1),
    (1, 0, 0, 0),
)

_RHOMBI_HEXAGON = ((0, 0, 0, 0), (0, -1, 0, 1), (0, -2, 0, 1), (0, -2, 0, 0), (0, -1, 0, -1), (0, 0, 0, -1))
_SNUB_HEXAGON = ((0, 0, 0, 0), (0, 0, -1, 0), (1, 0, -2, 0), (2, 0, -2, 0), (2, 0, -1, 0), (1, 0, 0, 0))


def _dedupe(periods: Tuple[RingPoint, RingPoint], classes: Iterable[Tuple[RingPoint, FrozenSet[int]]]) -> tuple:
    kept: List[Tuple[RingPoint, FrozenSet[int]]] = []
    for offset, figure in classes:
        if any(figure == other and _solve_lattice(offset - base, periods) is not None for base, other in kept):
            continue
        kept.append((offset, figure))
    return tuple(kept)


def _build_tables() -> Dict[GridKind, GridTable]:
    o = ExactPoint.zero()
    tables: Dict[GridKind, GridTable] = {
        GridKind.SQUARE: GridTable((_unit(0), _unit(3)), ((o, _figure(0, 3, 6, 9)),)),
        GridKind.TRIANGULAR: GridTable((_unit(0), _unit(2)), ((o, _figure(0, 2, 4, 6, 8, 10)),)),
        GridKind.HEXAGONAL: GridTable(
            (_e(1, 0, 1, 0), _e(2, 0, -1, 0)),
            ((o, _figure(0, 4, 8)), (_unit(0), _figure(2, 6, 10))),
        ),
        GridKind.TRIHEXAGONAL: GridTable(
            (_e(2, 0, 0, 0), _e(0, 0, 2, 0)),
            (
                (o, _figure(0, 4, 6, 10)),
                (_unit(0), _figure(0, 2, 6, 8)),
                (_e(1, 0, -1, 0), _figure(2, 4, 8, 10)),
            ),
        ),
        GridKind.SNUB_SQUARE: GridTable(
            (_e(1, 1, 0, 0), _e(-1, 0, 1, 1)),
            (
                (o, _figure(0, 2, 4, 7, 9)),
                (_unit(0), _figure(1, 4, 6, 9, 11)),
                (_unit(2), _figure(1, 3, 6, 8, 10)),
                (_unit(4), _figure(0, 3, 5, 7, 10)),
            ),
        ),
        GridKind.ELONGATED_TRIANGULAR: GridTable(
            (_unit(0), _e(0, 0, 1, 1)),
            ((o, _figure(0, 2, 4, 6, 9)), (_unit(2), _figure(0, 3, 6, 8, 10))),
        ),
    }

    oct_zero = OctagonalPoint.zero()
    tables[GridKind.TRUNCATED_SQUARE] = GridTable(
        (OctagonalPoint(1, 1, 1, 0), OctagonalPoint(-1, 0, 1, 1)),
        (
            (oct_zero, _figure(0, 2, 5, order=8)),
            (OctagonalPoint(1, 0, 0, 0), _figure(2, 4, 7, order=8)),
            (OctagonalPoint(1, 0, 1, 0), _figure(1, 4, 6, order=8)),
            (OctagonalPoint(0, 0, 1, 0), _figure(0, 3, 6, order=8)),
        ),
    )

    dodecagon = [_e(*v) for v in _DODECAGON]
    periods = (_e(-1, 0, 2, 3), _e(-2, -3, 1, 3))
    tables[GridKind.TRUNCATED_TRIHEXAGONAL] = GridTable(
        periods,
        _dedupe(
            periods,
            ((v, _figure(j, j + 3, j + 7) if j % 2 == 0 else _figure(j, j + 4, j + 7)) for j, v in enumerate(dodecagon)),
        ),
    )
    periods = (_e(2, 2, 0, -1), _e(0, 1, 2, 1))
    tables[GridKind.TRUNCATED_HEXAGONAL] = GridTable(
        periods,
        _dedupe(
            periods,
            ((v, _figure(j, j + 2, j + 7) if j % 2 == 0 else _figure(j, j + 5, j + 7)) for j, v in enumerate(dodecagon)),
        ),
    )
    tables[GridKind.RHOMBITRIHEXAGONAL] = GridTable(
        (_e(1, 2, 0, -1), _e(0, 1, 1, 1)),
        tuple(
            (_e(*h), _figure(*(k + 2 * j for k in (0, 2, 5, 9)))) for j, h in enumerate(_RHOMBI_HEXAGON)
        ),
    )
    snub = GridTable(
        (_e(2, 0, 1, 0), _e(-1, 0, 3, 0)),
        tuple(
            (_e(*h), _figure(*(k for k in range(0, 12, 2) if k != (10 + 2 * j) % 12)))
            for j, h in enumerate(_SNUB_HEXAGON)
        ),
    )
    tables[GridKind.SNUB_HEXAGONAL] = snub
    tables[GridKind.SNUB_HEXAGONAL_MIRROR] = GridTable(
        (snub.periods[0].conj(), snub.periods[1].conj()),
        tuple((offset.conj(), frozenset((-k) % 12 for k in figure)) for offset, figure in snub.classes),
    )
    return tables


@lru_cache(maxsize=1)
def _tables() -> Dict[GridKind, GridTable]:
    tables = _build_tables()
    logger.debug("Built period tables for %s grids", len(tables))
    return tables


def grid_table(kind: GridKind) -> GridTable:
    return _tables()[kind]


def _solve_lattice(p: RingPoint, periods: Tuple[RingPoint, RingPoint]) -> Optional[Tuple[int, int]]:
    """Integer (m, n) with p = m*T1 + n*T2, or None."""
    t1 = periods[0].coefficients
    t2 = periods[1].coefficients
    target = p.coefficients
    for i in range(4):
        for j in range(i + 1, 4):
            det = t1[i] * t2[j] - t1[j] * t2[i]
            if det == 0:
                continue
            m = Fraction(target[i] * t2[j] - target[j] * t2[i], det)
            n = Fraction(t1[i] * target[j] - t1[j] * target[i], det)
            if m.denominator != 1 or n.denominator != 1:
                return None
            mi, ni = int(m), int(n)
            if all(mi * a + ni * b == c for a, b, c in zip(t1, t2, target)):
                return (mi, ni)
            return None
    return None


def vertex_figure(kind: GridKind, p: RingPoint) -> Optional[FrozenSet[int]]:
    """Directions of the grid edges at p, or None when p is not a vertex."""
    table = _tables()[kind]
    if not isinstance(p, kind.point_type):
        return None
    for offset, figure in table.classes:
        if _solve_lattice(p - offset, table.periods) is not None:
            return figure
    return None


def grid_member(kind: GridKind, p: RingPoint) -> bool:
    """True iff p is a vertex of the tiling anchored at the origin with an edge along direction 0."""
    return vertex_figure(kind, p) is not None


def edge_member(kind: GridKind, origin: RingPoint, direction: int) -> bool:
    """True iff the unit segment leaving origin along direction is a grid edge."""
    figure = vertex_figure(kind, origin)
    return figure is not None and direction % kind.ring_order in figure


def neighbors(kind: GridKind, p: RingPoint) -> List[RingPoint]:
    figure = vertex_figure(kind, p)
    if figure is None:
        return []
    return [p + p.unit(k) for k in sorted(figure)]


def lattice_uw(kind: GridKind, p: RingPoint) -> Tuple[int, int]:
    """Integer coordinates of a searchable-grid point in the basis (1, i) or (1, omega6)."""
    if kind is GridKind.SQUARE:
        if p.b or p.c:
            raise ValueError(f"{p} is not a square-grid point")
        return (p.a, p.d)
    if p.b or p.d:
        raise ValueError(f"{p} is not a triangular-lattice point")
    return (p.a, p.c)


def faces_in_window(kind: GridKind, points: Sequence[RingPoint]) -> List[Face]:
    """
    Enumerate the faces of a searchable grid near a set of points.

    Args:
        kind: One of the three searchable grids
        points: Points that must lie strictly inside the enumerated window

    Returns:
        List[Face]: Faces whose vertices lie within one unit of the points' bounding box
    """
    if not kind.searchable:
        raise ValueError(f"Face enumeration is only available for searchable grids, not {kind.value}")
    coords = [lattice_uw(kind, p) for p in points]
    u_min = min(u for u, _ in coords) - 2
    u_max = max(u for u, _ in coords) + 2
    w_min = min(w for _, w in coords) - 2
    w_max = max(w for _, w in coords) + 2
    faces: List[Face] = []
    for u in range(u_min, u_max + 1):
        for w in range(w_min, w_max + 1):
            faces.extend(_faces_at(kind, u, w))
    return faces


def _is_hex_center(u: int, w: int) -> bool:
    return u % 2 == 0 and w % 2 == 1


def _faces_at(kind: GridKind, u: int, w: int) -> List[Face]:
    if kind is GridKind.SQUARE:
        corners = (_e(u, 0, 0, w), _e(u + 1, 0, 0, w), _e(u + 1, 0, 0, w + 1), _e(u, 0, 0, w + 1))
        return [Face(_e(2 * u + 1, 0, 0, 2 * w + 1), 2, corners)]

    up = ((u, w), (u + 1, w), (u, w + 1))
    down = ((u + 1, w), (u + 1, w + 1), (u, w + 1))
    triangles = [
        (_e(3 * u + 1, 0, 3 * w + 1, 0), up),
        (_e(3 * u + 2, 0, 3 * w + 2, 0), down),
    ]
    faces = []
    for center, corners in triangles:
        if kind is GridKind.TRIHEXAGONAL and any(_is_hex_center(a, c) for a, c in corners):
            continue
        faces.append(Face(center, 3, tuple(_e(a, 0, c, 0) for a, c in corners)))
    if kind is GridKind.TRIHEXAGONAL and _is_hex_center(u, w):
        center = _e(u, 0, w, 0)
        ring = tuple(center + _unit(2 * j) for j in range(6))
        faces.append(Face(center, 1, ring))
    return faces
