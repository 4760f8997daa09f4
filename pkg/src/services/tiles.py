# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Tiles of curves, their self-similar decomposition and the matching complex numeration systems."""

import cmath
import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from src.config import config
from src.services.geometry import ExactPoint, RingPoint
from src.services.grids import GridKind, faces_in_window
from src.services.lsystem import SimpleLsys, iterate_simple
from src.services.validity import GridPath, Tile, build_tile, turtle

logger = logging.getLogger(__name__)

# Constants
ONE_PLUS_I_DOUBLED = ExactPoint(2, 0, 0, 2)
ANGLE_TOLERANCE = 1e-9
DEFAULT_WINDOW_RADIUS = 3
TILING_GENERATORS = {
    GridKind.SQUARE: (ExactPoint(1, 0, 0, 1), ExactPoint(1, 0, 0, -1)),
    GridKind.TRIANGULAR: (ExactPoint(1, 0, 0, 0), ExactPoint(0, 0, 1, 0)),
    GridKind.TRIHEXAGONAL: (ExactPoint(2, 0, 0, 0), ExactPoint(0, 0, 2, 0)),
}


class CongruenceError(ValueError):
    """Raised when a part of a decomposition is not a rotated copy of the previous iterate."""


@dataclass(frozen=True)
class NumerationSystem:
    """Complex base B with digit set D on the Gaussian or Eisenstein integers."""

    base: ExactPoint
    digits: Tuple[ExactPoint, ...]
    grid: GridKind

    @property
    def size(self) -> int:
        return len(self.digits)


@dataclass(frozen=True)
class Decomposition:
    """Iterate n split into R parts, each a rotated and translated copy of iterate n - 1."""

    n: int
    path: GridPath
    parts: Tuple[GridPath, ...]
    rotations: Tuple[int, ...]


def tile_iterate(sys: SimpleLsys, sign: str, k: int) -> Tile:
    """Tile of the k-th iterate with its enclosed faces."""
    return build_tile(sys, sign, k)


def decompose(sys: SimpleLsys, n: int) -> Decomposition:
    """
    Split iterate n into R consecutive blocks and check each against iterate n - 1.

    Raises:
        CongruenceError: If a block is not a rotation of the previous iterate
    """
    if n < 1:
        raise ValueError("decompose needs n >= 1")
    path = turtle(iterate_simple(sys, n), sys.grid)
    reference = turtle(iterate_simple(sys, n - 1), sys.grid).directions
    block = len(reference)
    ring = sys.grid.ring_order
    parts = []
    rotations = []
    points = path.points
    for j in range(sys.order):
        directions = path.directions[j * block : (j + 1) * block]
        shift = (directions[0] - reference[0]) % ring
        if any((d - r) % ring != shift for d, r in zip(directions, reference)):
            raise CongruenceError(f"Part {j} of iterate {n} of {sys} is not congruent to iterate {n - 1}")
        parts.append(GridPath(sys.grid, points[j * block], tuple(directions)))
        rotations.append(shift)
    return Decomposition(n, path, tuple(parts), tuple(rotations))


def _digit_faces(tile: Tile):
    faces = tile.interior_faces
    if tile.path.grid is GridKind.TRIHEXAGONAL:
        return [face for face in faces if face.scale == 1], ExactPoint(2, 0, 0, 0)
    if tile.path.grid is GridKind.SQUARE:
        return list(faces), ONE_PLUS_I_DOUBLED
    return list(faces), ExactPoint(3, 0, 0, 0)


def _central_center(centers: Sequence[RingPoint]) -> RingPoint:
    count = len(centers)
    total = centers[0].zero()
    for center in centers:
        total = total + center
    return min(centers, key=lambda c: ((c * count - total).norm(), c.coefficients))


def extract_digits(sys: SimpleLsys, sign: str = "+") -> FrozenSet[ExactPoint]:
    """
    Digits of the numeration system of the tile: its enclosed cells relative to the central cell.

    Digits are reported with the y axis pointing down. For triangular orders divisible by 3 there
    is no central triangle; the one nearest the mean with the smallest coefficients is digit 0.
    """
    tile = build_tile(sys, sign, 1)
    faces, divisor = _digit_faces(tile)
    if not faces:
        raise ValueError(f"Tile {sign}1 of {sys} encloses no digit cells")
    centers = [face.center for face in faces]
    origin = _central_center(centers)
    digits = set()
    for center in centers:
        quotient = (center - origin).divide(divisor)
        if quotient is None:
            raise ValueError(f"Enclosed cells of {sys} do not share one digit lattice")
        digits.add(quotient.conj())
    return frozenset(digits)


def unit_group(grid: GridKind) -> List[ExactPoint]:
    """Units of the Gaussian (square) or Eisenstein (triangular, tri-hex) integers."""
    step = 3 if grid is GridKind.SQUARE else 2
    return [ExactPoint.unit(k) for k in range(0, 12, step)]


def _lattice_points(grid: GridKind, radius: int) -> List[ExactPoint]:
    points = []
    for x in range(-radius, radius + 1):
        for y in range(-radius, radius + 1):
            points.append(ExactPoint(x, 0, 0, y) if grid is GridKind.SQUARE else ExactPoint(x, 0, y, 0))
    return points


def find_bases(grid: GridKind, order: int) -> List[ExactPoint]:
    """
    Lattice integers B with |B|^2 = order, one per class of unit multiples, by increasing argument.

    Representatives are taken with argument in (-45, 45] degrees on the square grid and in
    (-30, 30] degrees on the triangular lattice.
    """
    half_width = math.pi / 4 if grid is GridKind.SQUARE else math.pi / 6
    bound = math.isqrt(order) + 2
    found = []
    for candidate in _lattice_points(grid, 2 * bound):
        if candidate.norm() != order:
            continue
        angle = cmath.phase(candidate.to_complex())
        if -half_width + ANGLE_TOLERANCE < angle <= half_width + ANGLE_TOLERANCE:
            found.append((angle, candidate))
    found.sort(key=lambda item: item[0])
    return [candidate for _, candidate in found]


def is_complete_residue_system(base: ExactPoint, digits: Sequence[ExactPoint]) -> bool:
    """True iff the digits are |B|^2 many and pairwise incongruent modulo B."""
    if base.norm() != len(digits):
        return False
    for i, first in enumerate(digits):
        for second in digits[i + 1 :]:
            if (first - second).divide(base) is not None:
                return False
    return True


def digit_expansion(
    z: ExactPoint, ns: NumerationSystem, max_steps: Optional[int] = None
) -> Optional[Tuple[ExactPoint, ...]]:
    """
    Digits of z in the system, most significant first.

    Returns:
        Optional[Tuple[ExactPoint, ...]]: The expansion, or None when z has no finite expansion
        (a cycle, no matching digit, or more than max_steps digits)
    """
    limit = config["max_digit_steps"] if max_steps is None else max_steps
    expansion: List[ExactPoint] = []
    seen = set()
    while z != z.zero():
        if z in seen or len(expansion) >= limit:
            return None
        seen.add(z)
        for digit in ns.digits:
            quotient = (z - digit).divide(ns.base)
            if quotient is not None:
                break
        else:
            return None
        expansion.append(digit)
        z = quotient
    return tuple(reversed(expansion))


def fundamental_region_points(ns: NumerationSystem, depth: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Points sum(d_k * B^-k, k = 1..depth) of the fundamental region.

    Returns:
        Tuple[np.ndarray, np.ndarray]: (N, 2) coordinates and the index of each point's leading digit
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    base = ns.base.to_complex()
    digits = np.array([d.to_complex() for d in ns.digits], dtype=complex)
    points = np.zeros(1, dtype=complex)
    for _ in range(depth):
        points = (points[:, None] + digits[None, :]).ravel() / base
    labels = np.tile(np.arange(len(digits)), len(points) // len(digits))
    return np.column_stack([points.real, points.imag]), labels


def _numbers_with_digits(ns: NumerationSystem, k: int) -> set:
    numbers = {ns.base.zero()}
    power = ns.base.one()
    for _ in range(k):
        numbers = {n + d * power for n in numbers for d in ns.digits}
        power = power * ns.base
    return numbers


def neighbors_closed(ns: NumerationSystem, k: int) -> bool:
    """True iff every unit is a k-digit number, i.e. the central cell is surrounded at level k."""
    numbers = _numbers_with_digits(ns, k)
    return all(unit in numbers for unit in unit_group(ns.grid))


def k0_diagnostic(ns: NumerationSystem, max_k: int = 4) -> Optional[int]:
    """Smallest k such that the central cell stays surrounded for every level from k to max_k."""
    holds = [neighbors_closed(ns, k) for k in range(1, max_k + 1)]
    for k in range(1, max_k + 1):
        if all(holds[k - 1 :]):
            logger.debug("Neighbourhood criterion holds from level %s", k)
            return k
    return None


def numeration_system(sys: SimpleLsys, sign: str = "+") -> Optional[NumerationSystem]:
    """The digits of the tile with the first base that makes them a complete residue system."""
    digits = tuple(sorted(extract_digits(sys, sign)))
    for base in find_bases(sys.grid, len(digits)):
        if is_complete_residue_system(base, digits):
            return NumerationSystem(base, digits, sys.grid)
    logger.warning("No base makes the digits of %s a complete residue system", sys)
    return None


def tiling_lattice(sys: SimpleLsys, k: int = 1) -> Tuple[RingPoint, RingPoint]:
    """Translation vectors under which copies of the k-th tile cover every grid edge once."""
    generators = TILING_GENERATORS.get(sys.grid)
    if generators is None:
        raise ValueError(f"No tiling lattice for {sys.grid.value}")
    endpoint = turtle(iterate_simple(sys, k), sys.grid).end
    return (endpoint * generators[0], endpoint * generators[1])


def tiling_covers_window(
    sys: SimpleLsys, sign: str = "+", k: int = 1, radius: int = DEFAULT_WINDOW_RADIUS
) -> bool:
    """
    Check that translated copies of the tile traverse every grid edge near the origin exactly once.

    Args:
        sys: A passing curve
        sign: Tile sign
        k: Tile iterate
        radius: Window radius in edge lengths around the origin

    Returns:
        bool: True iff every window edge is covered once
    """
    tile = build_tile(sys, sign, k)
    first, second = tiling_lattice(sys, k)
    extent = max(abs(p.to_complex()) for p in tile.path.points)
    shortest = min(abs(first.to_complex()), abs(second.to_complex()))
    span = int(math.ceil((extent + radius + 2) / shortest)) + 1
    limit = radius * radius

    window = set()
    corner_points = [
        ExactPoint(x, 0, 0, y) if sys.grid is GridKind.SQUARE else ExactPoint(x, 0, y, 0)
        for x in (-2 * radius, 2 * radius)
        for y in (-2 * radius, 2 * radius)
    ]
    for face in faces_in_window(sys.grid, corner_points):
        for p, q in face.edges():
            if p.norm() <= limit and q.norm() <= limit:
                window.add((p, q))

    coverage: Counter = Counter()
    for m in range(-span, span + 1):
        for n in range(-span, span + 1):
            shift = first * m + second * n
            for p, q in tile.path.undirected_edges:
                edge = (p + shift, q + shift)
                if edge in window:
                    coverage[edge] += 1
    uncovered = [edge for edge in window if coverage[edge] != 1]
    if uncovered:
        logger.debug("Tiling of %s leaves %s window edges not covered once", sys, len(uncovered))
    return not uncovered
