"""Tests for the managers module."""

import tempfile
from pathlib import Path

import pytest
import yaml

from src.services.grids import GridKind
from src.services.managers import ConversionRegistry, CurveCatalog, normalize_name
from src.services.transforms import UnknownConversionError


def _write(directory: Path, name: str, data) -> None:
    with open(directory / name, "w", encoding="utf-8") as f:
        yaml.safe_dump(data, f)


TRI_CONVERSIONS = {
    "source": "tri",
    "conversions": [
        {
            "name": "(6^3)-PC",
            "target": "(6^3)",
            "angle": 60,
            "stages": [{"rewrite": {"+F": "+F+F", "-F": "-F-F"}}],
        },
        {"name": "(3^6)-PC", "target": "(3^6)", "angle": 60, "stages": [{"rewrite": {"F": "FF"}}]},
    ],
}
SQUARE_CONVERSIONS = {
    "source": "square",
    "conversions": [{"name": "(3^6)-PC", "target": "(3^6)", "angle": 60, "stages": []}],
}


class TestConversionRegistry:
    """Test conversion registry functionality."""

    def setup_method(self):
        """Set up test fixtures."""
        self.temp_dir = tempfile.TemporaryDirectory()
        self.conversion_dir = Path(self.temp_dir.name)
        _write(self.conversion_dir, "tri.conversion.yml", TRI_CONVERSIONS)
        _write(self.conversion_dir, "square.conversion.yml", SQUARE_CONVERSIONS)
        self.registry = ConversionRegistry(conversion_dir=self.conversion_dir)

    def teardown_method(self):
        """Clean up test fixtures."""
        self.temp_dir.cleanup()

    def test_registry_with_nonexistent_directory(self):
        """Test registry with non-existent directory."""
        registry = ConversionRegistry(conversion_dir=self.conversion_dir / "nonexistent")
        assert len(registry.specs) == 0

    def test_loads_all_files(self):
        """Test that every conversion file is loaded."""
        assert len(self.registry.specs) == 3
        assert len(self.registry.list_specs(GridKind.TRIANGULAR)) == 2

    def test_get_with_source(self):
        """Test lookup by name and source grid."""
        spec = self.registry.get("(3^6)-PC", source=GridKind.SQUARE)
        assert spec.source is GridKind.SQUARE

    def test_get_qualified_and_superscript_names(self):
        """Test names qualified by their source and spelled with superscripts."""
        assert self.registry.get("tri:(6³)-PC").target is GridKind.HEXAGONAL
        assert self.registry.get("(6³)-PC").name == "(6^3)-PC"

    def test_ambiguous_name(self):
        """Test that an unqualified name shared by two grids is rejected."""
        with pytest.raises(UnknownConversionError):
            self.registry.get("(3^6)-PC")

    def test_unknown_name(self):
        """Test getting a non-existent conversion."""
        with pytest.raises(UnknownConversionError):
            self.registry.get("(4.8.8)-PC", source=GridKind.TRIANGULAR)

    def test_invalid_file_is_skipped(self):
        """Test that unreadable files do not stop loading."""
        (self.conversion_dir / "broken.conversion.yml").write_text("- just\n- a list\n", encoding="utf-8")
        _write(self.conversion_dir, "bad.conversion.yml", {"source": "nowhere", "conversions": []})
        registry = ConversionRegistry(conversion_dir=self.conversion_dir)
        assert len(registry.specs) == 3

    def test_default_registry(self):
        """Test the bundled conversions."""
        registry = ConversionRegistry.default()
        assert registry is ConversionRegistry.default()
        assert registry.get("(6^3)-PC", source=GridKind.TRIANGULAR).curve_class == "wiggly"
        assert registry.get("trihex:(4.6.12)-PC").source is GridKind.TRIHEXAGONAL
        assert registry.get("(3⁴.6)-PC", source=GridKind.TRIANGULAR).target is GridKind.SNUB_HEXAGONAL


class TestCurveCatalog:
    """Test cases for CurveCatalog."""

    def test_catalog_with_temp_directory(self):
        """Test loading curves and systems from a directory."""
        with tempfile.TemporaryDirectory() as temp_dir:
            curve_dir = Path(temp_dir)
            _write(
                curve_dir,
                "test.curves.yml",
                {
                    "curves": [{"name": "terdragon", "grid": "tri", "production": "F+F-F"}],
                    "systems": [{"name": "pair", "axiom": "L", "rules": {"L": "LR", "R": "L"}, "angle": 90}],
                },
            )
            catalog = CurveCatalog(curve_dir=curve_dir)
            assert catalog.get_curve("terdragon").order == 3
            assert catalog.get_system("pair").drawing == frozenset("F")
            assert catalog.list_curves() == [
                {"name": "terdragon", "grid": "tri", "order": 3, "production": "F+F-F"}
            ]

    def test_malformed_curve_file_is_skipped(self):
        """Test that a file with an invalid production is skipped."""
        with tempfile.TemporaryDirectory() as temp_dir:
            curve_dir = Path(temp_dir)
            _write(curve_dir, "bad.curves.yml", {"curves": [{"name": "x", "grid": "tri", "production": "G"}]})
            catalog = CurveCatalog(curve_dir=curve_dir)
            assert catalog.get_curve("x") is None

    def test_bundled_curves(self):
        """Test the bundled named curves."""
        catalog = CurveCatalog()
        assert catalog.get_curve("terdragon").production == "F+F-F"
        assert catalog.get_curve("R5-1@square").grid is GridKind.SQUARE
        assert catalog.get_system("gosper").angle == 60
        assert catalog.get_curve("nonexistent") is None


class TestNormalizeName:
    """Test conversion name normalisation."""

    def test_superscripts(self):
        """Test that superscript exponents become caret exponents."""
        assert normalize_name(" (3⁴.6)-PC ") == "(3^4.6)-PC"
        assert normalize_name("(3.12.12)-PC") == "(3.12.12)-PC"
