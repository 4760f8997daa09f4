# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Exhaustive curve search with shape canonicalization, symmetry and similarity letters."""

import itertools
import logging
import math
import time
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from src.config import config
from src.services.geometry import RingPoint
from src.services.grids import GridKind
from src.services.lsystem import (
    SIMILARITY_ORDER,
    SYMMETRY_ORDER,
    TURN_ALPHABETS,
    CurveRecord,
    SimpleLsys,
    reverse_word,
    swap_word,
    turn_tokens,
)
from src.services.validity import TILE_AXIOMS, full_check, turtle

logger = logging.getLogger(__name__)

# Constants
SQUARE_STEPS = {0: (1, 0), 3: (0, 1), 6: (-1, 0), 9: (0, -1)}
HEX_STEPS = {0: (1, 0), 2: (0, 1), 4: (-1, 1), 6: (-1, 0), 8: (0, -1), 10: (1, -1)}
TURN_UNITS = {"0": 0, "+": 1, "-": -1, "--": -2}
SHARDS_PER_JOB = 4
DISTANCE_SLACK = 1e-9

ShapeKey = Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]


@dataclass
class SearchReport:
    """Result of searching one grid at one order."""

    grid: GridKind
    order: int
    records: List[CurveRecord] = field(default_factory=list)
    duration: float = 0.0

    @property
    def curve_count(self) -> int:
        return len(self.records)

    @property
    def shape_count(self) -> int:
        return sum(1 for record in self.records if record.similarity is None)


def _grid_alphabet(grid: GridKind) -> Tuple[str, ...]:
    alphabet = TURN_ALPHABETS.get(grid)
    if alphabet is None:
        raise ValueError(f"Searching is only defined on the triangular, square and tri-hexagonal grids, not {grid.value}")
    return alphabet


def _first_alphabet(grid: GridKind) -> Tuple[str, ...]:
    return tuple(token for token in _grid_alphabet(grid) if not token.startswith("-"))


def _assemble(turns: Sequence[str]) -> str:
    return "F" + "".join(turn + "F" for turn in turns)


def enumerate_words(grid: GridKind, order: int) -> Iterator[str]:
    """
    All candidate productions of the given order in listing order.

    Symbols are ordered 0 < + < - (+ < -- on the tri-hexagonal grid); words whose first turn
    is a minus are skipped.
    """
    if order < 1:
        raise ValueError("order must be positive")
    if order == 1:
        yield "F"
        return
    alphabet = _grid_alphabet(grid)
    for first in _first_alphabet(grid):
        for rest in itertools.product(alphabet, repeat=order - 2):
            yield _assemble((first,) + rest)


class _PrunedSearch:
    """Depth-first word extension that drops prefixes no valid curve can have."""

    def __init__(self, grid: GridKind, order: int):
        self.grid = grid
        self.order = order
        self.alphabet = _grid_alphabet(grid)
        self.ring = grid.ring_order
        self.half = self.ring // 2
        self.step = grid.turn_degrees // (360 // self.ring)
        self.moves = SQUARE_STEPS if grid is GridKind.SQUARE else HEX_STEPS
        self.square = grid is GridKind.SQUARE
        self.radius = math.sqrt(order)
        self.reach = self._reachable_sums(order)

    def _reachable_sums(self, order: int) -> List[Set[int]]:
        deltas = {TURN_UNITS[token] for token in self.alphabet}
        reach: List[Set[int]] = [{0}]
        for _ in range(order):
            reach.append({s + d for s in reach[-1] for d in deltas})
        return reach

    def _norm(self, u: int, w: int) -> int:
        return u * u + w * w if self.square else u * u + u * w + w * w

    def _distance_ok(self, u: int, w: int, remaining: int) -> bool:
        distance = math.sqrt(self._norm(u, w))
        return self.radius - remaining - DISTANCE_SLACK <= distance <= self.radius + remaining + DISTANCE_SLACK

    def words(self, prefix: Sequence[str] = ()) -> Iterator[str]:
        if self.order == 1:
            if not prefix:
                yield "F"
            return
        edges = {((0, 0), (1, 0))}
        chords: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
        turns: List[str] = []
        yield from self._extend((1, 0), 0, 0, edges, chords, turns, prefix)

    def _crosses(self, existing: List[Tuple[int, int]], chord: Tuple[int, int]) -> bool:
        a, b = chord
        for c, d in existing:
            if (a < c < b) != (a < d < b):
                return True
        return False

    def _extend(self, pos, heading, turn_sum, edges, chords, turns, prefix) -> Iterator[str]:
        depth = len(turns)
        if depth == self.order - 1:
            if turn_sum == 0 and self._norm(*pos) == self.order:
                yield _assemble(turns)
            return
        if depth < len(prefix):
            choices: Sequence[str] = (prefix[depth],)
        elif depth == 0:
            choices = _first_alphabet(self.grid)
        else:
            choices = self.alphabet
        remaining_turns = self.order - 2 - depth
        for token in choices:
            delta = TURN_UNITS[token]
            new_sum = turn_sum + delta
            if -new_sum not in self.reach[remaining_turns]:
                continue
            new_heading = (heading + delta * self.step) % self.ring
            du, dw = self.moves[new_heading]
            nxt = (pos[0] + du, pos[1] + dw)
            edge = (pos, nxt) if pos <= nxt else (nxt, pos)
            if edge in edges:
                continue
            if not self._distance_ok(nxt[0], nxt[1], self.order - depth - 2):
                continue
            back = (heading + self.half) % self.ring
            chord = (back, new_heading) if back < new_heading else (new_heading, back)
            at_vertex = chords.setdefault(pos, [])
            if self._crosses(at_vertex, chord):
                continue
            edges.add(edge)
            at_vertex.append(chord)
            turns.append(token)
            yield from self._extend(nxt, new_heading, new_sum, edges, chords, turns, prefix)
            turns.pop()
            at_vertex.pop()
            edges.discard(edge)

    def tiles_avoid(self, word: str) -> bool:
        """The Tiles-SA stage on integer lattice coordinates: both first tiles close and never cross."""
        axioms = TILE_AXIOMS[self.grid].values()
        return all(self._closed_self_avoiding(axiom.replace("F", word)) for axiom in axioms)

    def _closed_self_avoiding(self, word: str) -> bool:
        pos = (0, 0)
        heading = 0
        points = [pos]
        headings: List[int] = []
        for symbol in word:
            if symbol == "F":
                du, dw = self.moves[heading]
                pos = (pos[0] + du, pos[1] + dw)
                points.append(pos)
                headings.append(heading)
            elif symbol == "+":
                heading = (heading + self.step) % self.ring
            elif symbol == "-":
                heading = (heading - self.step) % self.ring
        if pos != (0, 0):
            return False
        edges = set()
        for p, q in zip(points, points[1:]):
            edge = (p, q) if p <= q else (q, p)
            if edge in edges:
                return False
            edges.add(edge)
        chords: Dict[Tuple[int, int], List[Tuple[int, int]]] = defaultdict(list)
        # Index -1 wraps the closing pass through the start.
        for i, out in enumerate(headings):
            back = (headings[i - 1] + self.half) % self.ring
            chord = (back, out) if back < out else (out, back)
            if self._crosses(chords[points[i]], chord):
                return False
            chords[points[i]].append(chord)
        return True


def candidate_words(grid: GridKind, order: int, prefix: Sequence[str] = ()) -> Iterator[str]:
    """Words in listing order that survive partial-path pruning; a superset of the passing curves."""
    return _PrunedSearch(grid, order).words(prefix)


def _search_shard(job: Tuple[str, int, Tuple[str, ...]]) -> List[str]:
    grid_value, order, prefix = job
    grid = GridKind(grid_value)
    search = _PrunedSearch(grid, order)
    found = [
        word
        for word in search.words(prefix)
        if search.tiles_avoid(word) and full_check(SimpleLsys(grid, word)).passed
    ]
    logger.debug("Shard %s of R%s on %s: %s curves", "".join(prefix) or "*", order, grid.value, len(found))
    return found


def _shard_prefixes(grid: GridKind, order: int, jobs: int) -> List[Tuple[str, ...]]:
    alphabet = _grid_alphabet(grid)
    first = _first_alphabet(grid)
    length = 1
    while len(first) * len(alphabet) ** (length - 1) < SHARDS_PER_JOB * jobs and length < order - 1:
        length += 1
    return [(head,) + tail for head in first for tail in itertools.product(alphabet, repeat=length - 1)]


def _edge_points(production: str, grid: GridKind) -> List[Tuple[RingPoint, RingPoint]]:
    return turtle(production, grid).undirected_edges


def _normalized(edges: Sequence[Tuple[RingPoint, RingPoint]]) -> ShapeKey:
    anchor = min(min(p, q) for p, q in edges)
    shifted = []
    for p, q in edges:
        p, q = p - anchor, q - anchor
        if q < p:
            p, q = q, p
        shifted.append((p.coefficients, q.coefficients))
    return tuple(sorted(shifted))


def _transform(edges: Sequence[Tuple[RingPoint, RingPoint]], steps: int, reflect: bool) -> List[Tuple[RingPoint, RingPoint]]:
    def image(p: RingPoint) -> RingPoint:
        return (p.conj() if reflect else p).rotate(steps)

    return [(image(p), image(q)) for p, q in edges]


def _rotation_steps(grid: GridKind) -> int:
    return 3 if grid is GridKind.SQUARE else 2


def shape_key(sys: SimpleLsys) -> ShapeKey:
    """Canonical undirected edge set of the motif under the grid's rotations, reflections and translations."""
    edges = _edge_points(sys.production, sys.grid)
    step = _rotation_steps(sys.grid)
    return min(
        _normalized(_transform(edges, steps, reflect))
        for steps in range(0, 12, step)
        for reflect in (False, True)
    )


def _congruent(a: Sequence[Tuple[RingPoint, RingPoint]], b: Sequence[Tuple[RingPoint, RingPoint]]) -> bool:
    return _normalized(a) == _normalized(b)


def symmetry_letters(sys: SimpleLsys, strict: Optional[bool] = None) -> str:
    """
    Symmetry letters of a passing curve, in the order d m r q z.

    Args:
        sys: Curve whose first edge points along direction 0
        strict: Raise instead of warning when q or z appear without m and r

    Returns:
        str: The letters, empty for an asymmetric shape
    """
    strict = config["strict_symmetry"] if strict is None else strict
    edges = _edge_points(sys.production, sys.grid)
    letters = set()
    if sys.grid is not GridKind.TRIHEXAGONAL and reverse_word(swap_word(sys.production)) == sys.production:
        letters.add("d")
    if _congruent(edges, _transform(edges, 6, False)):
        letters.add("r")
    if _congruent(edges, _transform(edges, 0, True)):
        letters.add("m")
    if sys.grid is GridKind.SQUARE:
        if _congruent(edges, _transform(edges, 3, False)):
            letters.add("q")
        if _congruent(edges, _transform(edges, 3, True)):
            letters.add("z")
    if letters & {"q", "z"} and not {"m", "r"} <= letters:
        message = f"Symmetry letters {''.join(sorted(letters))} of {sys} have q or z without m and r"
        if strict:
            raise ValueError(message)
        logger.warning(message)
        letters -= {"q", "z"}
    return "".join(letter for letter in SYMMETRY_ORDER if letter in letters)


def similarity_letters(new: SimpleLsys, old: SimpleLsys) -> str:
    """
    Transformations mapping the shape of new onto the shape of old, in the order P M R Z T X.

    P: identical up to translation; M: after reflecting y; R: after reversing the traversal;
    Z: after both; T: turns equal after reversing one production; X: as T with signs swapped.

    The shapes are compared as undirected edge sets, so reversing the traversal amounts to turning
    the edge set by 180 degrees about the midpoint of the chord: R is that half turn, and Z is the
    half turn composed with the reflection.
    """
    new_edges = _edge_points(new.production, new.grid)
    old_edges = _edge_points(old.production, old.grid)
    letters = set()
    if _congruent(new_edges, old_edges):
        letters.add("P")
    if _congruent(new_edges, _transform(old_edges, 0, True)):
        letters.add("M")
    if _congruent(new_edges, _transform(old_edges, 6, False)):
        letters.add("R")
    if _congruent(new_edges, _transform(old_edges, 6, True)):
        letters.add("Z")
    new_turns = turn_tokens(new.production)
    old_turns = turn_tokens(old.production)
    if new_turns[::-1] == old_turns:
        letters.add("T")
    if new.grid is not GridKind.TRIHEXAGONAL and [swap_word(t) for t in new_turns[::-1]] == old_turns:
        letters.add("X")
    return "".join(letter for letter in SIMILARITY_ORDER if letter in letters)


def annotate(grid: GridKind, order: int, productions: Sequence[str]) -> List[CurveRecord]:
    """Assign IDs in order and attach symmetry and similarity letters."""
    records: List[CurveRecord] = []
    first_by_shape: Dict[ShapeKey, Tuple[int, SimpleLsys]] = {}
    for curve_id, production in enumerate(productions, start=1):
        sys = SimpleLsys(grid, production)
        key = shape_key(sys)
        similarity = None
        if key in first_by_shape:
            target_id, target = first_by_shape[key]
            similarity = (target_id, tuple(similarity_letters(sys, target)))
        else:
            first_by_shape[key] = (curve_id, sys)
        records.append(CurveRecord(production, order, curve_id, symmetry_letters(sys), similarity))
    return records


def run_search(grid: GridKind, order: int, jobs: Optional[int] = None) -> SearchReport:
    """
    Search all curves of one order on one grid.

    Args:
        grid: Triangular, square or tri-hexagonal grid
        order: Curve order R
        jobs: Worker processes; defaults to the configured job count

    Returns:
        SearchReport: Records with IDs in listing order
    """
    jobs = max(1, config["jobs"] if jobs is None else jobs)
    started = time.perf_counter()
    if jobs == 1 or order < 3:
        productions = _search_shard((grid.value, order, ()))
    else:
        shards = [(grid.value, order, prefix) for prefix in _shard_prefixes(grid, order, jobs)]
        logger.debug("Searching R%s on %s in %s shards with %s workers", order, grid.value, len(shards), jobs)
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            productions = [word for found in executor.map(_search_shard, shards) for word in found]
    report = SearchReport(grid, order, annotate(grid, order, productions))
    report.duration = time.perf_counter() - started
    logger.info(
        "Search R%s on %s: %s curves, %s shapes in %.2fs",
        order,
        grid.value,
        report.curve_count,
        report.shape_count,
        report.duration,
    )
    return report


def count_curves(grid: GridKind, order: int, jobs: Optional[int] = None) -> Tuple[int, int]:
    """Number of curves and of distinct shapes at one order."""
    report = run_search(grid, order, jobs)
    return report.curve_count, report.shape_count


def _is_sum_of_two_squares(n: int) -> bool:
    return any(math.isqrt(n - x * x) ** 2 == n - x * x for x in range(math.isqrt(n) + 1))


def _is_loeschian(n: int) -> bool:
    limit = math.isqrt(n) + 1
    return any(x * x + x * y + y * y == n for x in range(limit) for y in range(limit))


def allowed_orders(grid: GridKind, max_order: int) -> List[int]:
    """Orders at which curves can exist, excluding the trivial order 1."""
    if max_order < 1:
        raise ValueError("max_order must be positive")
    if grid is GridKind.SQUARE:
        return [n for n in range(2, max_order + 1) if n % 2 == 1 and _is_sum_of_two_squares(n)]
    if grid is GridKind.TRIANGULAR:
        return [n for n in range(2, max_order + 1) if _is_loeschian(n)]
    if grid is GridKind.TRIHEXAGONAL:
        return [n for n in range(2, max_order + 1) if n % 6 == 1 and _is_loeschian(n)]
    raise ValueError(f"No admissible orders for {grid.value}")


def export_records(grid: GridKind, records: Sequence[CurveRecord]) -> str:
    """Machine-readable form: one key=value record per line."""
    lines = []
    for record in records:
        fields = [
            f"grid={grid.short_name}",
            f"order={record.order}",
            f"id={record.id}",
            f"production={record.production}",
            f"symmetry={record.symmetry or '-'}",
        ]
        if record.similarity is not None:
            target, letters = record.similarity
            fields.append(f"same={target}")
            fields.append(f"letters={''.join(letters) or '-'}")
        lines.append(" ".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")
