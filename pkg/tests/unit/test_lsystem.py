"""Tests for the lsystem module."""

import pytest

from src.services.grids import GridKind
from src.services.lsystem import (
    CurveRecord,
    ListingParseError,
    MalformedSystemError,
    MultiLsys,
    SimpleLsys,
    directed_edge_maps,
    emit_listing,
    is_trihex_word,
    iterate,
    iterate_simple,
    motif_headings,
    parse_listing,
    reverse,
    substitute,
    swap_signs,
    tokenize,
    turn_maps,
)

TERDRAGON = SimpleLsys(GridKind.TRIANGULAR, "F+F-F")
CRAB = SimpleLsys(GridKind.TRIANGULAR, "F+F0F-F")
R5 = SimpleLsys(GridKind.SQUARE, "F+F+F-F-F")
R17_1 = "F+F+F-F+F-F-F-F+F-F+F+F+F-F+F-F-F"


class TestWords:
    """Test tokenizing and rewriting words."""

    def test_tokenize_longest_key_first(self):
        """Test that multi-character keys win over single symbols."""
        assert tokenize("F--F+F", ["--"]) == ["F", "--", "F", "+", "F"]
        assert tokenize("F+F", []) == ["F", "+", "F"]

    def test_substitute_is_simultaneous(self):
        """Test that replacements are not rewritten again."""
        assert substitute("F+F", {"F": "G", "G": "F"}) == "G+G"
        assert substitute("F--F+F", {"--": "-", "+": "++"}) == "F-F++F"

    def test_is_trihex_word(self):
        """Test the tri-hexagonal turn alphabet."""
        assert is_trihex_word("F+F--F")
        assert not is_trihex_word("F-F")
        assert not is_trihex_word("F0F")


class TestSimpleLsys:
    """Test simple L-systems."""

    def test_order_and_turns(self):
        """Test the order and the turn tokens of a production."""
        assert CRAB.order == 4
        assert CRAB.turns == ["+", "0", "-"]
        assert str(TERDRAGON) == "F+F-F@tri"

    def test_malformed_production(self):
        """Test that foreign symbols are rejected."""
        with pytest.raises(MalformedSystemError):
            SimpleLsys(GridKind.SQUARE, "F+G")
        with pytest.raises(MalformedSystemError):
            SimpleLsys(GridKind.SQUARE, "")

    def test_iterate_simple(self):
        """Test the second iterate of the terdragon."""
        assert iterate_simple(TERDRAGON, 0) == "F"
        assert iterate_simple(TERDRAGON, 1) == "F+F-F"
        assert iterate_simple(TERDRAGON, 2) == "F+F-F+F+F-F-F+F-F"

    def test_iterate_length_grows_by_order(self):
        """Test that iterate n has R^n edges."""
        assert iterate_simple(R5, 3).count("F") == 125

    def test_reverse_of_symmetric_curve(self):
        """Test that reversing and swapping maps a d-symmetric production to itself."""
        sys = SimpleLsys(GridKind.SQUARE, R17_1)
        assert reverse(swap_signs(sys)).production == R17_1

    def test_swap_signs(self):
        """Test exchanging + and -."""
        assert swap_signs(CRAB).production == "F-F0F+F"


class TestMultiLsys:
    """Test multi-letter L-systems."""

    def test_iterate(self):
        """Test two steps of L -> L+R, R -> L-R."""
        sys = MultiLsys(axiom="L", rules={"L": "L+R", "R": "L-R"}, drawing=frozenset("LR"))
        assert iterate(sys, 2) == "L+R+L-R"

    def test_missing_production(self):
        """Test that an undefined letter raises."""
        sys = MultiLsys(axiom="LX", rules={"L": "L+L"}, drawing=frozenset("L"))
        with pytest.raises(MalformedSystemError):
            iterate(sys, 1)

    def test_negative_steps(self):
        """Test that negative step counts raise."""
        with pytest.raises(ValueError):
            iterate(TERDRAGON.to_multi(), -1)

    def test_hashable(self):
        """Test that systems with equal content hash equally."""
        first = MultiLsys(axiom="F", rules={"F": "F+F"})
        second = MultiLsys(axiom="F", rules={"F": "F+F"})
        assert hash(first) == hash(second)


class TestMaps:
    """Test direction and turn descriptions."""

    def test_motif_headings(self):
        """Test the headings of the crab motif."""
        assert motif_headings(CRAB) == [0, 1, 1, 0]

    def test_directed_edge_maps_crab(self):
        """Test the direction maps of the crab."""
        maps = directed_edge_maps(CRAB)
        assert dict(maps.rules) == {"1": "1221", "2": "2332", "3": "3113"}

    def test_directed_edge_maps_square(self):
        """Test the direction maps of R5-1."""
        maps = directed_edge_maps(R5)
        assert dict(maps.rules) == {"1": "12321", "2": "23432", "3": "34143", "4": "41214"}

    def test_turn_maps(self):
        """Test the turn maps of the crab and of R5-1."""
        assert dict(turn_maps(CRAB).rules) == {"0": "+0-0", "+": "+0-+", "-": "+0--"}
        rules = turn_maps(R5).rules
        assert rules["+"] == "++--+"
        assert rules["-"] == "++---"

    def test_maps_need_searchable_grid(self):
        """Test that other grids are rejected."""
        with pytest.raises(ValueError):
            directed_edge_maps(SimpleLsys(GridKind.SNUB_SQUARE, "F+F"))


class TestListing:
    """Test the curve listing format."""

    def test_parse_symmetry_line(self):
        """Test a line with symmetry letters."""
        (record,) = parse_listing(f"F {R17_1}  R17-1  # # symm-dr\n")
        assert record == CurveRecord(R17_1, 17, 1, "dr")
        assert record.label == "R17-1"

    def test_parse_similarity_line(self):
        """Test a line with a similarity clause."""
        line = "F F+F-F+F+F+F-F-F+F+F-F-F-F+F+F-F-F  R17-5  # ## same = 3 R X"
        (record,) = parse_listing(line)
        assert record.id == 5
        assert record.symmetry == ""
        assert record.similarity == (3, ("R", "X"))

    def test_parse_numbered_lines(self):
        """Test lines prefixed with a running number."""
        text = "  01:  F F0F+F0F-F+F-F-F0F+F+F-F  R12-1  #\n\n  02:  F F0F+F+F-F0F-F-F+F0F+F-F  R12-3  #\n"
        records = parse_listing(text)
        assert [record.id for record in records] == [1, 3]

    def test_emit_round_trip(self):
        """Test that emitting parsed lines reproduces them."""
        lines = [
            "F F+F+F-F-F-F+F+F+F-F+F+F-F-F-F+F-F  R17-4  # # symm-r ## same = 1 P R",
            "F F+F-F-F+F-F-F-F+F+F-F+F-F+F+F-F+F  R17-12  # ## same = 11 Z T",
            "F F+F+F-F-F+F+F+F-F-F+F+F-F-F-F+F-F  R17-3  #",
        ]
        text = "\n".join(lines) + "\n"
        assert emit_listing(parse_listing(text)) == text

    def test_emit_empty(self):
        """Test that no records give empty text."""
        assert emit_listing([]) == ""

    def test_malformed_line_reports_line_number(self):
        """Test the error for an unreadable line."""
        text = "F F+F-F  R3-1  #\nnot a listing line\n"
        with pytest.raises(ListingParseError) as excinfo:
            parse_listing(text)
        assert excinfo.value.line_number == 2

    def test_order_mismatch(self):
        """Test that the order must match the number of F."""
        with pytest.raises(ListingParseError):
            parse_listing("F F+F-F  R4-1  #")
