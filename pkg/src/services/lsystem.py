# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Words, simple and multi-letter L-systems, and the curve listing format."""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

from src.services.grids import GridKind

logger = logging.getLogger(__name__)

# Constants
DRAW = "F"
TURN_SYMBOLS = frozenset("+-0")
SYMMETRY_ORDER = "dmrqz"
SIMILARITY_ORDER = "PMRZTX"
LISTING_LINE = re.compile(r"^(?:\s*\d+:)?\s*F\s+(?P<production>\S+)\s+R(?P<order>\d+)-(?P<id>\d+)\s+#(?P<rest>.*)$")
SAME_PATTERN = re.compile(r"^same\s*=\s*(?P<target>\d+)(?P<letters>(?:\s+[A-Za-z])*)(?P<extra>.*)$")

TURN_ALPHABETS: Dict[GridKind, Tuple[str, ...]] = {
    GridKind.SQUARE: ("+", "-"),
    GridKind.TRIANGULAR: ("0", "+", "-"),
    GridKind.TRIHEXAGONAL: ("+", "--"),
}


class MalformedSystemError(ValueError):
    """Raised when an L-system cannot be iterated or violates its shape constraints."""


class ListingParseError(ValueError):
    """Raised for a listing line that does not follow the curve listing format."""

    def __init__(self, line_number: int, line: str):
        super().__init__(f"line {line_number}: cannot parse {line!r}")
        self.line_number = line_number
        self.line = line


def tokenize(word: str, keys: Iterable[str] = ()) -> List[str]:
    """
    Split a word into symbols, matching the longest multi-character key first.

    Args:
        word: The word to split
        keys: Multi-character symbols such as "--" or "+F"

    Returns:
        List[str]: The symbols in order
    """
    long_keys = sorted({key for key in keys if len(key) > 1}, key=len, reverse=True)
    if not long_keys:
        return list(word)
    tokens: List[str] = []
    i = 0
    while i < len(word):
        for key in long_keys:
            if word.startswith(key, i):
                tokens.append(key)
                i += len(key)
                break
        else:
            tokens.append(word[i])
            i += 1
    return tokens


def substitute(word: str, mapping: Mapping[str, str]) -> str:
    """Replace every symbol of word that has a mapping; other symbols are copied."""
    return "".join(mapping.get(token, token) for token in tokenize(word, mapping.keys()))


def swap_word(word: str) -> str:
    return word.translate(str.maketrans("+-", "-+"))


def reverse_word(word: str) -> str:
    return word[::-1]


def is_trihex_word(word: str) -> bool:
    """True iff every turn of word is a single '+' or the pair '--'."""
    for run in re.findall(r"[^F]+", word):
        if run not in ("+", "--"):
            return False
    return "0" not in word


@dataclass(frozen=True)
class SimpleLsys:
    """L-system with the single non-constant letter F and axiom F."""

    grid: GridKind
    production: str

    def __post_init__(self):
        if not self.production or set(self.production) - TURN_SYMBOLS - {DRAW}:
            raise MalformedSystemError(f"Production {self.production!r} uses symbols other than F + - 0")

    @property
    def order(self) -> int:
        return self.production.count(DRAW)

    @property
    def turns(self) -> List[str]:
        """Turn tokens between consecutive edges of the motif."""
        return turn_tokens(self.production)

    def to_multi(self) -> "MultiLsys":
        return MultiLsys(axiom=DRAW, rules={DRAW: self.production}, drawing=frozenset(DRAW), angle=self.grid.turn_degrees)

    def __str__(self) -> str:
        return f"{self.production}@{self.grid.short_name}"


@dataclass(frozen=True)
class MultiLsys:
    """General L-system: axiom, one production per non-constant letter, drawing letters and turn angle."""

    axiom: str
    rules: Mapping[str, str]
    drawing: FrozenSet[str] = field(default_factory=lambda: frozenset(DRAW))
    angle: int = 90

    def __hash__(self) -> int:
        return hash((self.axiom, tuple(sorted(self.rules.items())), self.drawing, self.angle))

    def is_constant(self, symbol: str) -> bool:
        return symbol not in self.rules and (symbol in TURN_SYMBOLS or symbol in self.drawing or not symbol.isalnum())


def turn_tokens(production: str) -> List[str]:
    """Turn runs between the F symbols of a production ('' for a straight join)."""
    parts = production.split(DRAW)
    return parts[1:-1]


def order(sys: SimpleLsys) -> int:
    """Number of F in the production of F."""
    return sys.order


def iterate(sys: MultiLsys, n: int) -> str:
    """
    Apply the productions n times to the axiom.

    Args:
        sys: The L-system
        n: Number of rewriting steps

    Returns:
        str: The n-th iterate

    Raises:
        MalformedSystemError: If a non-constant letter has no production
    """
    if n < 0:
        raise ValueError("iterate needs a non-negative step count")
    word = sys.axiom
    keys = list(sys.rules.keys())
    for _ in range(n):
        pieces = []
        for token in tokenize(word, keys):
            production = sys.rules.get(token)
            if production is None:
                if not sys.is_constant(token):
                    raise MalformedSystemError(f"Letter {token!r} has no production")
                production = token
            pieces.append(production)
        word = "".join(pieces)
    return word


def iterate_simple(sys: SimpleLsys, n: int) -> str:
    return iterate(sys.to_multi(), n)


def reverse(sys: SimpleLsys) -> SimpleLsys:
    """The same curve traversed backwards."""
    return SimpleLsys(sys.grid, reverse_word(sys.production))


def swap_signs(sys: SimpleLsys) -> SimpleLsys:
    """Exchange + and - in the production."""
    return SimpleLsys(sys.grid, swap_word(sys.production))


def _direction_count(grid: GridKind) -> int:
    return 360 // grid.turn_degrees


def _turn_delta(token: str) -> int:
    return token.count("+") - token.count("-")


def motif_headings(sys: SimpleLsys) -> List[int]:
    """Headings of the motif edges in multiples of the grid's turn angle."""
    count = _direction_count(sys.grid)
    heading = 0
    headings = [0]
    for token in sys.turns:
        heading = (heading + _turn_delta(token)) % count
        headings.append(heading)
    return headings


def directed_edge_maps(sys: SimpleLsys) -> MultiLsys:
    """
    Describe the curve by its edge directions: letter k stands for an edge in direction k.

    The map of letter k is the map of letter k-1 with every letter incremented.
    """
    if not sys.grid.searchable:
        raise ValueError(f"Direction maps need a searchable grid, not {sys.grid.value}")
    count = _direction_count(sys.grid)
    headings = motif_headings(sys)
    rules = {
        str(k + 1): "".join(str((k + h) % count + 1) for h in headings) for k in range(count)
    }
    return MultiLsys(axiom="1", rules=rules, drawing=frozenset(rules), angle=sys.grid.turn_degrees)


def turn_maps(sys: SimpleLsys) -> MultiLsys:
    """Describe the curve by its succession of turns: T -> (turns of X) T."""
    if not sys.grid.searchable:
        raise ValueError(f"Turn maps need a searchable grid, not {sys.grid.value}")
    alphabet = TURN_ALPHABETS[sys.grid]
    turns = "".join(sys.turns)
    rules = {symbol: turns + symbol for symbol in alphabet}
    return MultiLsys(axiom=alphabet[0], rules=rules, drawing=frozenset(), angle=sys.grid.turn_degrees)


@dataclass(frozen=True)
class CurveRecord:
    """One curve found by the search, as written on one listing line."""

    production: str
    order: int
    id: int
    symmetry: str = ""
    similarity: Optional[Tuple[int, Tuple[str, ...]]] = None
    extra: str = ""

    @property
    def label(self) -> str:
        return f"R{self.order}-{self.id}"

    def to_line(self) -> str:
        line = f"F {self.production}  {self.label}  #"
        if self.symmetry:
            line += f" # symm-{self.symmetry}"
        if self.similarity is not None:
            target, letters = self.similarity
            line += f" ## same = {target}"
            if letters:
                line += " " + " ".join(letters)
        if self.extra:
            line += f" {self.extra}"
        return line


def _parse_rest(rest: str, line_number: int, line: str) -> Tuple[str, Optional[Tuple[int, Tuple[str, ...]]], str]:
    symmetry = ""
    similarity = None
    extra = ""
    head, _, tail = rest.partition("##")
    head = head.strip()
    if head:
        if not head.startswith("#"):
            raise ListingParseError(line_number, line)
        symm = head[1:].strip()
        if not symm.startswith("symm-"):
            raise ListingParseError(line_number, line)
        symmetry = symm[len("symm-") :]
    tail = tail.strip()
    if tail:
        match = SAME_PATTERN.match(tail)
        if match is None:
            extra = f"## {tail}"
        else:
            letters = tuple(match.group("letters").split())
            similarity = (int(match.group("target")), letters)
            extra = match.group("extra").strip()
    return symmetry, similarity, extra


def parse_listing(text: str) -> List[CurveRecord]:
    """
    Parse listing lines of the form 'F <production>  R<order>-<id>  # [# symm-..] [## same = ..]'.

    Args:
        text: Listing text; blank lines are skipped

    Returns:
        List[CurveRecord]: One record per non-blank line

    Raises:
        ListingParseError: With the 1-based line number of the first malformed line
    """
    records: List[CurveRecord] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        match = LISTING_LINE.match(line)
        if match is None:
            raise ListingParseError(line_number, line)
        production = match.group("production")
        curve_order = int(match.group("order"))
        if production.count(DRAW) != curve_order:
            raise ListingParseError(line_number, line)
        symmetry, similarity, extra = _parse_rest(match.group("rest"), line_number, line)
        records.append(CurveRecord(production, curve_order, int(match.group("id")), symmetry, similarity, extra))
    logger.debug("Parsed %s listing records", len(records))
    return records


def emit_listing(records: Sequence[CurveRecord]) -> str:
    """Serialize records, one line each, with a trailing newline when non-empty."""
    if not records:
        return ""
    return "\n".join(record.to_line() for record in records) + "\n"
