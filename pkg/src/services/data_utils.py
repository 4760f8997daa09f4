"""Utility functions for locating reference data."""

from pathlib import Path
from typing import Optional, Union

from src.config import config

# Constants
DATA_DIR = "data"
DOCKER_APP_PATH = "/app"


def determine_data_directory(subdir: str, data_dir: Optional[Union[str, Path]] = None) -> Path:
    """
    Determine the correct data directory path.

    Args:
        subdir: Sub-directory of the data root, e.g. "conversions"
        data_dir: Optional custom data root; GRIDCURVE_DATA_DIR is used when omitted

    Returns:
        Path: The resolved directory path
    """
    custom = data_dir if data_dir is not None else config["data_dir"]
    if custom:
        return Path(custom) / subdir

    docker_path = Path(DOCKER_APP_PATH) / DATA_DIR / subdir
    if docker_path.exists():
        return docker_path

    return Path(__file__).parent.parent.parent / DATA_DIR / subdir
