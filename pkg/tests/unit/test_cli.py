"""Tests for the command-line front door."""

import tempfile
from pathlib import Path
from unittest.mock import Mock, patch

import pytest

from src.cli import (
    CurveReferenceError,
    build_parser,
    format_number,
    load_listing,
    main,
    resolve_curve,
)
from src.services.geometry import ExactPoint
from src.services.grids import GridKind
from src.services.lsystem import CurveRecord, SimpleLsys, emit_listing
from src.services.search import SearchReport


class TestResolveCurve:
    """Test curve references."""

    def setup_method(self):
        """Set up test fixtures."""
        self.catalog = Mock()
        self.catalog.get_curve.return_value = None

    def test_inline_production(self):
        """Test a production with a grid tag."""
        curve = resolve_curve("F+F-F@tri", self.catalog)
        assert curve == SimpleLsys(GridKind.TRIANGULAR, "F+F-F")

    def test_catalog_name(self):
        """Test that catalog names win."""
        terdragon = SimpleLsys(GridKind.TRIANGULAR, "F+F-F")
        self.catalog.get_curve.return_value = terdragon
        assert resolve_curve("terdragon", self.catalog) is terdragon

    def test_missing_grid_tag(self):
        """Test that inline productions need a grid."""
        with pytest.raises(CurveReferenceError):
            resolve_curve("F+F-F", self.catalog)

    def test_unknown_grid(self):
        """Test an unreadable grid tag."""
        with pytest.raises(CurveReferenceError):
            resolve_curve("F+F-F@nowhere", self.catalog)

    def test_listing_reference(self):
        """Test a reference into a search listing."""
        records = [CurveRecord("F+F-F", 3, 1)]
        with patch("src.cli.load_listing", return_value=records) as load:
            curve = resolve_curve("R3-1@tri", self.catalog, cache_dir="")
        assert curve.production == "F+F-F"
        load.assert_called_once_with(GridKind.TRIANGULAR, 3, "")

    def test_listing_reference_not_found(self):
        """Test a listing reference with an unknown number."""
        with patch("src.cli.load_listing", return_value=[]):
            with pytest.raises(CurveReferenceError):
                resolve_curve("R3-2@tri", self.catalog, cache_dir="")


class TestLoadListing:
    """Test the listing cache."""

    def test_search_result_is_cached(self):
        """Test that a search runs once and its listing is reused."""
        records = [CurveRecord("F+F-F", 3, 1)]
        report = SearchReport(GridKind.TRIANGULAR, 3, records, 0.0)
        with tempfile.TemporaryDirectory() as temp_dir:
            with patch("src.cli.run_search", return_value=report) as search:
                first = load_listing(GridKind.TRIANGULAR, 3, temp_dir)
                second = load_listing(GridKind.TRIANGULAR, 3, temp_dir)
            cached = (Path(temp_dir) / "tri-R3.listing").read_text(encoding="utf-8")
        search.assert_called_once_with(GridKind.TRIANGULAR, 3)
        assert cached == emit_listing(records)
        assert [r.production for r in first] == [r.production for r in second] == ["F+F-F"]

    def test_without_cache(self):
        """Test that nothing is written when no cache directory is set."""
        report = SearchReport(GridKind.SQUARE, 5, [], 0.0)
        with patch("src.cli.run_search", return_value=report), patch("src.cli.Path.write_text") as write:
            assert load_listing(GridKind.SQUARE, 5, "") == []
        write.assert_not_called()


class TestFormatNumber:
    """Test printing of lattice integers."""

    @pytest.mark.parametrize(
        "point, grid, expected",
        [
            (ExactPoint(2, 0, 0, 1), GridKind.SQUARE, "2+i"),
            (ExactPoint(1, 0, 0, -2), GridKind.SQUARE, "1-2i"),
            (ExactPoint(0, 0, 0, -1), GridKind.SQUARE, "-i"),
            (ExactPoint(3, 0, -1, 0), GridKind.TRIANGULAR, "3-w"),
            (ExactPoint(0, 0, 2, 0), GridKind.TRIANGULAR, "2w"),
            (ExactPoint(-2, 0, 0, 0), GridKind.TRIANGULAR, "-2"),
        ],
    )
    def test_format(self, point, grid, expected):
        """Test Gaussian and Eisenstein notation."""
        assert format_number(point, grid) == expected


class TestMain:
    """Test command dispatch and exit codes."""

    def test_usage_error(self):
        """Test that argparse usage errors exit with 2."""
        with pytest.raises(SystemExit) as exc_info:
            main(["search", "--grid", "hexagon", "--order", "5"])
        assert exc_info.value.code == 2

    def test_missing_command(self):
        """Test that a command is required."""
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args([])
        assert exc_info.value.code == 2

    def test_domain_error_returns_one(self):
        """Test that resolution failures are reported with exit code 1."""
        assert main(["verify", "--curve", "F+F-F"]) == 1

    def test_orders(self, capsys):
        """Test the orders command."""
        assert main(["orders", "--grid", "trihex", "--max", "20"]) == 0
        assert capsys.readouterr().out.strip() == "7 13 19"

    def test_verify_failure(self, capsys):
        """Test that a failing curve exits with 1."""
        assert main(["verify", "--curve", "F+F@tri"]) == 1
        assert capsys.readouterr().out.startswith("fail")

    def test_divide_needs_arguments(self):
        """Test that divide without a curve or system is a usage error."""
        with pytest.raises(SystemExit) as exc_info:
            main(["divide", "--parts", "2"])
        assert exc_info.value.code == 2

    def test_divide_needs_parts(self):
        """Test that a curve without parts is a usage error."""
        with pytest.raises(SystemExit) as exc_info:
            main(["divide", "--curve", "terdragon"])
        assert exc_info.value.code == 2

    def test_convert_color_choices(self):
        """Test that conversions colour by origin or flat."""
        args = build_parser().parse_args(["convert", "--spec", "tri:(6^3)-PC", "--color", "origin"])
        assert args.color == "origin"
        with pytest.raises(SystemExit) as exc_info:
            build_parser().parse_args(["convert", "--spec", "tri:(6^3)-PC", "--color", "parts"])
        assert exc_info.value.code == 2

    def test_symmetry(self, capsys):
        """Test that symmetry letters are printed."""
        with patch("src.cli.symmetry_letters", return_value="dr"):
            assert main(["symmetry", "--curve", "F+F-F@tri"]) == 0
        assert capsys.readouterr().out.strip() == "symm: dr"
