# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Vector-graphics rendering of curves, tiles, tilings, carousels and numeration point clouds."""

import colorsys
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import svgwrite  # type: ignore[import-untyped]

from src.config import config
from src.services.grids import GridKind
from src.services.lsystem import SimpleLsys, iterate_simple
from src.services.search import symmetry_letters
from src.services.tiles import NumerationSystem, decompose, fundamental_region_points, tiling_lattice
from src.services.validity import GridPath, build_tile, turtle

logger = logging.getLogger(__name__)

# Constants
PRECISION = 6
DUPLICATE_TOLERANCE = 1e-9
MAX_ROUNDING = 0.5
FLAT_COLOR = "#1f3b73"
CLOUD_DOT_RADIUS = 0.01
COLOR_SCHEMES = ("flat", "parts", "origin")

Polyline = np.ndarray


@dataclass(frozen=True)
class RenderOptions:
    """Rounding parameter e, stroke width, colour scheme and view box padding."""

    rounding: float = field(default_factory=lambda: float(config.get("rounding", 0.0)))
    stroke_width: float = 0.1
    color: str = "flat"
    padding: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.rounding <= MAX_ROUNDING:
            raise ValueError(f"Rounding must lie in [0, {MAX_ROUNDING}], got {self.rounding}")
        if self.color not in COLOR_SCHEMES:
            raise ValueError(f"Unknown colour scheme: {self.color}")


def palette(count: int) -> List[str]:
    """Fixed palette of count colours by even hue rotation."""
    colors = []
    for j in range(max(count, 1)):
        r, g, b = colorsys.hls_to_rgb(j / max(count, 1), 0.42, 0.75)
        colors.append(f"#{round(r * 255):02x}{round(g * 255):02x}{round(b * 255):02x}")
    return colors


def path_coordinates(path: GridPath) -> np.ndarray:
    """Vertex coordinates of the path as an (N + 1, 2) array, y axis pointing down."""
    values = np.array([p.to_complex() for p in path.points], dtype=complex)
    return np.column_stack([values.real, -values.imag])


def _drawing(
    polylines: Sequence[Tuple[Polyline, str]],
    opts: RenderOptions,
    dots: Optional[Sequence[Tuple[np.ndarray, str]]] = None,
) -> svgwrite.Drawing:
    everything = [pts for pts, _ in polylines if len(pts)] + [pts for pts, _ in dots or [] if len(pts)]
    stacked = np.vstack(everything) if everything else np.zeros((1, 2))
    minx, miny = stacked.min(axis=0) - opts.padding
    maxx, maxy = stacked.max(axis=0) + opts.padding
    dwg = svgwrite.Drawing(profile="full")
    dwg.attribs["viewBox"] = (
        f"{round(float(minx), PRECISION)} {round(float(miny), PRECISION)} "
        f"{round(float(maxx - minx), PRECISION)} {round(float(maxy - miny), PRECISION)}"
    )
    group = dwg.g(id="curves", fill="none", stroke_linecap="round", stroke_linejoin="round")
    for pts, color in polylines:
        if len(pts) < 2:
            continue
        group.add(
            dwg.polyline(
                points=[(round(float(x), PRECISION), round(float(y), PRECISION)) for x, y in pts],
                stroke=color,
                stroke_width=opts.stroke_width,
            )
        )
    dwg.add(group)
    if dots:
        cloud = dwg.g(id="points", stroke="none")
        for pts, color in dots:
            for x, y in pts:
                cloud.add(
                    dwg.circle(
                        center=(round(float(x), PRECISION), round(float(y), PRECISION)), r=CLOUD_DOT_RADIUS, fill=color
                    )
                )
        dwg.add(cloud)
    return dwg


def _segments(coords: np.ndarray, rounding: float, closed: bool) -> Tuple[np.ndarray, np.ndarray]:
    """Start and end of every edge after cutting a fraction at each turn."""
    deltas = coords[1:] - coords[:-1]
    starts = coords[:-1] + rounding * deltas
    ends = coords[1:] - rounding * deltas
    if not closed:
        starts[0] = coords[0]
        ends[-1] = coords[-1]
    return starts, ends


def _dedupe(points: np.ndarray) -> np.ndarray:
    if len(points) < 2:
        return points
    keep = np.ones(len(points), dtype=bool)
    keep[1:] = np.any(np.abs(np.diff(points, axis=0)) > DUPLICATE_TOLERANCE, axis=1)
    return points[keep]


def block_polylines(
    coords: np.ndarray, blocks: Sequence[int], rounding: float = 0.0, closed: bool = False
) -> List[Polyline]:
    """
    Rounded polylines of consecutive blocks of edges.

    The bridge across a cut corner belongs to the block it leaves.

    Args:
        coords: Vertices of the path
        blocks: Number of edges in each block, summing to the number of edges
        rounding: The fraction e in [0, 1/2]
        closed: Whether the last vertex joins the first

    Returns:
        List[Polyline]: One polyline per block, without repeated points
    """
    edge_count = len(coords) - 1
    if edge_count < 1:
        return [np.asarray(coords, dtype=float)]
    starts, ends = _segments(np.asarray(coords, dtype=float), rounding, closed)
    polylines = []
    first = 0
    for size in blocks:
        last = min(first + size, edge_count)
        if last <= first:
            continue
        points = np.empty((2 * (last - first), 2), dtype=float)
        points[0::2] = starts[first:last]
        points[1::2] = ends[first:last]
        if last < edge_count:
            points = np.vstack([points, starts[last : last + 1]])
        elif closed:
            points = np.vstack([points, starts[:1]])
        polylines.append(_dedupe(points))
        first = last
    return polylines


def rounded_points(coords: np.ndarray, rounding: float, closed: bool = False) -> Polyline:
    """Rounded polyline of the whole path: e = 0 keeps the raw vertices, e = 1/2 joins edge midpoints."""
    return block_polylines(coords, [len(coords) - 1], rounding, closed)[0]


def render_path(path: GridPath, opts: Optional[RenderOptions] = None, blocks: Optional[Sequence[int]] = None):
    """
    Render one path, optionally coloured by consecutive blocks of edges.

    Args:
        path: The path to draw
        opts: Rendering options
        blocks: Edge counts of the coloured blocks; one flat block when omitted

    Returns:
        svgwrite.Drawing: The document
    """
    opts = opts or RenderOptions()
    coords = path_coordinates(path)
    if blocks is None or opts.color == "flat":
        return _drawing([(rounded_points(coords, opts.rounding, path.closed), FLAT_COLOR)], opts)
    colors = palette(len(blocks))
    polylines = block_polylines(coords, blocks, opts.rounding, path.closed)
    return _drawing(list(zip(polylines, colors)), opts)


def origin_blocks(origins: Sequence[str]) -> Tuple[List[int], List[str]]:
    """Runs of equal origins: the edge count and the origin of each run."""
    runs = [(origin, len(list(group))) for origin, group in itertools.groupby(origins)]
    return [size for _, size in runs], [origin for origin, _ in runs]


def render_origins(path: GridPath, origins: Sequence[str], opts: Optional[RenderOptions] = None):
    """
    Render a converted path with every edge coloured by the rule that emitted it.

    Args:
        path: The converted path
        origins: One rule key per edge, as returned with the conversion
        opts: Rendering options

    Returns:
        svgwrite.Drawing: The document, one colour per distinct origin
    """
    opts = opts or RenderOptions(color="origin")
    if len(origins) != len(path):
        raise ValueError(f"Got {len(origins)} origins for {len(path)} edges")
    if opts.color == "flat" or not origins:
        return render_path(path, opts)
    blocks, labels = origin_blocks(origins)
    keys = sorted(set(labels))
    colors = dict(zip(keys, palette(len(keys))))
    polylines = block_polylines(path_coordinates(path), blocks, opts.rounding, path.closed)
    logger.debug("Colouring %s edges by %s origins", len(path), len(keys))
    return _drawing([(points, colors[label]) for points, label in zip(polylines, labels)], opts)


def render_decomposition(sys: SimpleLsys, n: int, opts: Optional[RenderOptions] = None):
    """Iterate n with its R parts (copies of iterate n - 1) in R colours."""
    opts = opts or RenderOptions(color="parts")
    decomposition = decompose(sys, n)
    return render_path(decomposition.path, opts, [len(part) for part in decomposition.parts])


def _rotated_coords(coords: np.ndarray, degrees: float, center: np.ndarray) -> np.ndarray:
    angle = math.radians(degrees)
    rotation = np.array([[math.cos(angle), -math.sin(angle)], [math.sin(angle), math.cos(angle)]])
    return (coords - center) @ rotation.T + center


def render_tiling(sys: SimpleLsys, sign: str = "+", k: int = 1, span: int = 1, opts: Optional[RenderOptions] = None):
    """
    Translated copies of the tile on the lattice of motif displacements.

    On the tri-hexagonal grid the triangular tiles of sign - alternate between two orientations,
    every other copy being turned by 120 degrees about its centre.

    Args:
        sys: A passing curve
        sign: Tile sign
        k: Tile iterate
        span: Copies m * v1 + n * v2 for -span <= m, n <= span
        opts: Rendering options

    Returns:
        svgwrite.Drawing: The document
    """
    opts = opts or RenderOptions()
    tile = build_tile(sys, sign, k)
    first, second = tiling_lattice(sys, k)
    v1 = np.array([first.to_complex().real, -first.to_complex().imag])
    v2 = np.array([second.to_complex().real, -second.to_complex().imag])
    outline = rounded_points(path_coordinates(tile.path), opts.rounding, closed=True)
    center = path_coordinates(tile.path)[:-1].mean(axis=0)
    alternate = sys.grid is GridKind.TRIHEXAGONAL and sign == "-"
    copies = []
    colors = palette(2) if alternate else [FLAT_COLOR]
    for m in range(-span, span + 1):
        for n in range(-span, span + 1):
            shape = outline
            odd = alternate and (m + n) % 2 == 1
            if odd:
                shape = _rotated_coords(outline, 120.0, center)
            copies.append((shape + m * v1 + n * v2, colors[1 if odd else 0]))
    logger.debug("Tiling of %s with %s copies", sys, len(copies))
    return _drawing(copies, opts)


def carousel_copies(sys: SimpleLsys) -> int:
    """Copies meeting at the centre: 3 (or 6) on triangular lattices, 2 (or 4) on the square grid."""
    base = 2 if sys.grid is GridKind.SQUARE else 3
    return 2 * base if "r" in symmetry_letters(sys) else base


def render_carousel(sys: SimpleLsys, n: int = 2, opts: Optional[RenderOptions] = None):
    """Rotated copies of iterate n arranged around their common start point."""
    opts = opts or RenderOptions()
    coords = path_coordinates(turtle(iterate_simple(sys, n), sys.grid))
    count = carousel_copies(sys)
    colors = palette(count)
    origin = coords[0]
    polylines = []
    for j in range(count):
        rotated = _rotated_coords(coords, 360.0 * j / count, origin)
        polylines.append((rounded_points(rotated, opts.rounding), colors[j]))
    return _drawing(polylines, opts)


def render_cloud(ns: NumerationSystem, depth: int, opts: Optional[RenderOptions] = None):
    """Points of the fundamental region coloured by their leading digit."""
    opts = opts or RenderOptions(padding=0.1)
    points, labels = fundamental_region_points(ns, depth)
    points = points * np.array([1.0, -1.0])
    colors = palette(ns.size)
    dots = [(points[labels == j], colors[j]) for j in range(ns.size)]
    return _drawing([], opts, dots)


def save(document, out: str) -> None:
    """Write the document to a file."""
    document.saveas(out, pretty=False)
    logger.info("Wrote %s", out)
