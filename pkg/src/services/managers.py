# ---------------------------------------------------------------------------------------------
#  Copyright (c) Microsoft Corporation. All rights reserved.
#  Licensed under the MIT License. See LICENSE in the project root for license information.
# --------------------------------------------------------------------------------------------

"""Registries of conversions and named curves loaded from YAML files."""

import logging
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from src.services.data_utils import determine_data_directory
from src.services.grids import GridKind
from src.services.lsystem import MalformedSystemError, MultiLsys, SimpleLsys
from src.services.transforms import ConversionSpec, UnknownConversionError

# Constants
CONVERSION_FILE_SUFFIX = ".conversion.yml"
CURVE_FILE_SUFFIX = ".curves.yml"
CONVERSION_DATA_DIR = "conversions"
CURVE_DATA_DIR = "curves"
SUPERSCRIPTS = {"²": "^2", "³": "^3", "⁴": "^4", "⁶": "^6"}

logger = logging.getLogger(__name__)


def _load_yaml_file(file: Path) -> Optional[Dict[str, Any]]:
    """Load a single YAML file, logging and skipping it when it cannot be read."""
    try:
        with open(file, encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except Exception as e:
        logger.error("Error loading %s: %s", file, e)
        return None
    if not isinstance(data, dict):
        logger.error("Error loading %s: expected a mapping at the top level", file)
        return None
    return data


def normalize_name(name: str) -> str:
    """Spell grid symbols with ^ exponents, e.g. (3⁴.6)-PC becomes (3^4.6)-PC."""
    for superscript, plain in SUPERSCRIPTS.items():
        name = name.replace(superscript, plain)
    return name.strip()


class ConversionRegistry:
    """Manages the grid conversions loaded from YAML files, one file per source grid."""

    def __init__(self, conversion_dir: Optional[Path] = None):
        """
        Initialize the conversion registry.

        Args:
            conversion_dir: Directory containing conversion YAML files
        """
        self.conversion_dir = conversion_dir or determine_data_directory(CONVERSION_DATA_DIR)
        self.specs = self._load_specs()

    @classmethod
    def default(cls) -> "ConversionRegistry":
        return _default_registry()

    def _load_specs(self) -> Dict[Tuple[GridKind, str], ConversionSpec]:
        """
        Load conversions from YAML files.

        Returns:
            Dict[Tuple[GridKind, str], ConversionSpec]: Conversions keyed by source grid and name
        """
        specs: Dict[Tuple[GridKind, str], ConversionSpec] = {}

        if not self.conversion_dir.exists():
            logger.warning("Conversions directory not found: %s", self.conversion_dir)
            return specs

        for file in sorted(self.conversion_dir.glob(f"*{CONVERSION_FILE_SUFFIX}")):
            data = _load_yaml_file(file)
            if data is None:
                continue
            try:
                source = GridKind.parse(str(data["source"]))
                loaded = [ConversionSpec.from_dict(source, entry) for entry in data.get("conversions", [])]
            except (KeyError, TypeError, ValueError) as e:
                logger.error("Error loading conversions %s: %s", file, e)
                continue
            for spec in loaded:
                specs[(source, spec.name)] = spec
            logger.info("Loaded conversions: %s (%s)", file.name, len(loaded))

        logger.info("Total conversions loaded: %s", len(specs))
        return specs

    def get(self, name: str, source: Optional[GridKind] = None) -> ConversionSpec:
        """
        Get a conversion by name.

        Args:
            name: Conversion name, optionally qualified by its source grid as "trihex:(4^4)-PC"
            source: Source grid used when the name is not qualified

        Returns:
            ConversionSpec: The conversion

        Raises:
            UnknownConversionError: If no conversion or more than one matches
        """
        name = normalize_name(name)
        if ":" in name:
            prefix, name = name.split(":", 1)
            source = GridKind.parse(prefix)
        if source is not None:
            spec = self.specs.get((source, name))
            if spec is None:
                raise UnknownConversionError(f"No conversion {name!r} from {source.value}")
            return spec
        matches = [spec for (_, spec_name), spec in self.specs.items() if spec_name == name]
        if len(matches) != 1:
            raise UnknownConversionError(f"{len(matches)} conversions are named {name!r}")
        return matches[0]

    def list_specs(self, source: Optional[GridKind] = None) -> List[ConversionSpec]:
        """
        List conversions, optionally only those from one source grid.

        Returns:
            List[ConversionSpec]: Conversions in file order
        """
        return [spec for (grid, _), spec in self.specs.items() if source is None or grid is source]


@lru_cache(maxsize=1)
def _default_registry() -> ConversionRegistry:
    return ConversionRegistry()


class CurveCatalog:
    """Manages named curves and multi-letter systems loaded from YAML files."""

    def __init__(self, curve_dir: Optional[Path] = None):
        self.curve_dir = curve_dir or determine_data_directory(CURVE_DATA_DIR)
        self.curves: Dict[str, SimpleLsys] = {}
        self.systems: Dict[str, MultiLsys] = {}
        self._load_curves()

    def _load_curves(self) -> None:
        if not self.curve_dir.exists():
            logger.warning("Curves directory not found: %s", self.curve_dir)
            return

        for file in sorted(self.curve_dir.glob(f"*{CURVE_FILE_SUFFIX}")):
            data = _load_yaml_file(file)
            if data is None:
                continue
            try:
                curves = {
                    str(entry["name"]): SimpleLsys(GridKind.parse(str(entry["grid"])), str(entry["production"]))
                    for entry in data.get("curves", [])
                }
                systems = {
                    str(entry["name"]): MultiLsys(
                        axiom=str(entry["axiom"]),
                        rules={str(k): str(v) for k, v in entry["rules"].items()},
                        drawing=frozenset(str(entry.get("drawing", "F"))),
                        angle=int(entry["angle"]),
                    )
                    for entry in data.get("systems", [])
                }
            except (KeyError, TypeError, ValueError, MalformedSystemError) as e:
                logger.error("Error loading curves %s: %s", file, e)
                continue
            self.curves.update(curves)
            self.systems.update(systems)
            logger.info("Loaded curves: %s (%s)", file.name, len(curves) + len(systems))

        logger.info("Total named curves loaded: %s", len(self.curves) + len(self.systems))

    def get_curve(self, name: str) -> Optional[SimpleLsys]:
        return self.curves.get(name)

    def get_system(self, name: str) -> Optional[MultiLsys]:
        return self.systems.get(name)

    def list_curves(self) -> List[Dict[str, Union[str, int]]]:
        """
        List all named curves.

        Returns:
            List[Dict[str, Union[str, int]]]: Name, grid, order and production of each curve
        """
        return [
            {"name": name, "grid": sys.grid.short_name, "order": sys.order, "production": sys.production}
            for name, sys in self.curves.items()
        ]
