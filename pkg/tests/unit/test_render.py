"""Tests for the render module."""

import os
import re
import tempfile

import numpy as np
import pytest

from src.services.grids import GridKind
from src.services.lsystem import SimpleLsys
from src.services.render import (
    RenderOptions,
    block_polylines,
    carousel_copies,
    origin_blocks,
    palette,
    path_coordinates,
    render_carousel,
    render_decomposition,
    render_origins,
    render_path,
    rounded_points,
    save,
)
from src.services.validity import turtle

TERDRAGON = SimpleLsys(GridKind.TRIANGULAR, "F+F-F")
R5 = SimpleLsys(GridKind.SQUARE, "F+F+F-F-F")
SQUARE_PATH = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, -1.0]])


class TestRenderOptions:
    """Test option validation."""

    def test_defaults(self):
        """Test the default options."""
        opts = RenderOptions(rounding=0.0)
        assert opts.color == "flat"

    @pytest.mark.parametrize("rounding", [-0.1, 0.6])
    def test_rounding_range(self, rounding):
        """Test that rounding must lie in [0, 1/2]."""
        with pytest.raises(ValueError):
            RenderOptions(rounding=rounding)

    def test_unknown_color(self):
        """Test that only known colour schemes are accepted."""
        with pytest.raises(ValueError):
            RenderOptions(rounding=0.0, color="rainbow")


class TestPolylines:
    """Test rounding and block splitting."""

    def test_palette(self):
        """Test distinct hex colours."""
        colors = palette(4)
        assert len(set(colors)) == 4
        assert all(c.startswith("#") and len(c) == 7 for c in colors)

    def test_no_rounding_keeps_vertices(self):
        """Test that e = 0 gives the raw vertices."""
        np.testing.assert_allclose(rounded_points(SQUARE_PATH, 0.0), SQUARE_PATH)

    def test_half_rounding_joins_midpoints(self):
        """Test that e = 1/2 cuts the corner between edge midpoints."""
        points = rounded_points(SQUARE_PATH, 0.5)
        np.testing.assert_allclose(points, [[0.0, 0.0], [0.5, 0.0], [1.0, -0.5], [1.0, -1.0]])

    def test_blocks(self):
        """Test that each block keeps its own edges plus the bridge it leaves on."""
        first, second = block_polylines(SQUARE_PATH, [1, 1], 0.25)
        np.testing.assert_allclose(first, [[0.0, 0.0], [0.75, 0.0], [1.0, -0.25]])
        np.testing.assert_allclose(second, [[1.0, -0.25], [1.0, -1.0]])

    def test_origin_blocks(self):
        """Test that runs of equal origins become blocks."""
        assert origin_blocks(["a", "a", "b", "b", "a"]) == ([2, 2, 1], ["a", "b", "a"])
        assert origin_blocks([]) == ([], [])

    def test_coordinates_flip_y(self):
        """Test that the y axis points down."""
        coords = path_coordinates(turtle("F+F", GridKind.SQUARE))
        np.testing.assert_allclose(coords, SQUARE_PATH, atol=1e-12)


class TestDocuments:
    """Test generated SVG documents."""

    def test_render_path(self):
        """Test a single flat polyline."""
        document = render_path(turtle("F+F+F-F-F", GridKind.SQUARE), RenderOptions(rounding=0.0))
        svg = document.tostring()
        assert "viewBox" in svg
        assert svg.count("<polyline") == 1

    def test_decomposition_colours_parts(self):
        """Test one polyline per part."""
        document = render_decomposition(R5, 2, RenderOptions(rounding=0.2, color="parts"))
        assert document.tostring().count("<polyline") == 5

    def test_carousel(self):
        """Test the number of copies around the centre."""
        copies = carousel_copies(TERDRAGON)
        assert copies in (3, 6)
        document = render_carousel(TERDRAGON, 1, RenderOptions(rounding=0.0))
        assert document.tostring().count("<polyline") == copies

    def test_origins_share_colours(self):
        """Test one polyline per run and one colour per distinct origin."""
        path = turtle("F+F+F-F-F", GridKind.SQUARE)
        document = render_origins(path, ["a", "a", "b", "b", "a"], RenderOptions(rounding=0.0, color="origin"))
        svg = document.tostring()
        assert svg.count("<polyline") == 3
        assert len(set(re.findall(r'stroke="(#[0-9a-f]{6})"', svg))) == 2

    def test_flat_origins(self):
        """Test that the flat scheme ignores origins."""
        path = turtle("F+F+F-F-F", GridKind.SQUARE)
        document = render_origins(path, ["a", "b", "a", "b", "a"], RenderOptions(rounding=0.0))
        assert document.tostring().count("<polyline") == 1

    def test_origins_must_match_edges(self):
        """Test that every edge needs an origin."""
        with pytest.raises(ValueError):
            render_origins(turtle("F+F", GridKind.SQUARE), ["a"])

    def test_save(self):
        """Test writing a document to disk."""
        document = render_path(turtle("F+F", GridKind.SQUARE), RenderOptions(rounding=0.0))
        with tempfile.TemporaryDirectory() as temp_dir:
            out = os.path.join(temp_dir, "curve.svg")
            save(document, out)
            with open(out, encoding="utf-8") as f:
                assert f.read().startswith("<?xml")
