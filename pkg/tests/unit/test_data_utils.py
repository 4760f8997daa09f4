"""Tests for the data directory helpers."""

from pathlib import Path
from unittest.mock import patch

from src.services.data_utils import determine_data_directory


class TestDetermineDataDirectory:
    """Test data directory resolution."""

    def test_custom_directory(self):
        """Test that an explicit data root wins."""
        assert determine_data_directory("curves", "/srv/data") == Path("/srv/data") / "curves"

    def test_configured_directory(self):
        """Test that the configured data root is used when none is given."""
        with patch("src.services.data_utils.config", {"data_dir": "/opt/gridcurve"}):
            assert determine_data_directory("conversions") == Path("/opt/gridcurve") / "conversions"

    def test_repository_fallback(self):
        """Test the repository data directory when nothing else applies."""
        with patch("src.services.data_utils.config", {"data_dir": ""}), patch(
            "src.services.data_utils.Path.exists", return_value=False
        ):
            path = determine_data_directory("curves")
        assert path.parts[-2:] == ("data", "curves")
