"""Material definition loader."""

from __future__ import annotations

import csv
import json
import logging
from pathlib import Path
from typing import Any

import numpy as np

from mixedmag.const import MU_0, SPLINE_B_MAX, SPLINE_KNOTS
from mixedmag.exceptions import ConfigError
from mixedmag.material import (
    BrauerParameters,
    IsotropicSplineLaw,
    LinearLaw,
    MagnetLaw,
    MaterialLaw,
    MaterialMap,
    default_knots,
    fit_bh_curve,
)
from mixedmag.models import FloatArray, MaterialType

_LOGGER = logging.getLogger("mixedmag.log")


class MaterialLoader:
    """Load a material map from a JSON definition file.

    The file holds `{"regions": {"<tag>": {...}}}`. Every region has a `type`
    (linear, magnet, brauer_spline or bh_curve) and optional `sigma` and
    `current_density` entries. Permeabilities are given either absolute as
    `mu` or relative to vacuum as `mu_r`. A bh_curve region names a CSV file
    with |B| and |H| columns, relative to the JSON file.
    """

    @staticmethod
    def load(path: str | Path) -> MaterialMap:
        """Read and validate a material file."""
        path = Path(path)
        _LOGGER.debug('Reading material definitions "%s"', path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except OSError as err:
            raise ConfigError(f"cannot read material file {path}: {err.strerror}") from None
        except UnicodeDecodeError:
            raise ConfigError(f"{path.name}: file is not valid UTF-8") from None
        except json.JSONDecodeError as err:
            raise ConfigError(
                f"{path.name}: invalid JSON at line {err.lineno}: {err.msg}"
            ) from None
        return MaterialLoader.parse(document, path.parent)

    @staticmethod
    def parse(document: Any, base_dir: Path) -> MaterialMap:
        """Build a material map from a decoded JSON document."""
        if not isinstance(document, dict) or not isinstance(document.get("regions"), dict):
            raise ConfigError('material file needs a "regions" object')
        laws: dict[int, MaterialLaw] = {}
        sigma: dict[int, float] = {}
        current: dict[int, float] = {}
        for key, entry in document["regions"].items():
            try:
                tag = int(key)
            except ValueError:
                raise ConfigError(f"region tag {key!r} is not an integer") from None
            if not isinstance(entry, dict):
                raise ConfigError(f"region {tag}: definition must be an object")
            try:
                laws[tag] = MaterialLoader.parse_law(entry, base_dir)
                sigma[tag] = float(entry.get("sigma", 0.0))
                current[tag] = float(entry.get("current_density", 0.0))
            except (ConfigError, TypeError, ValueError) as err:
                raise ConfigError(f"region {tag}: {err}") from None
        if not laws:
            raise ConfigError("material file defines no regions")
        return MaterialMap(laws, sigma, current)

    @staticmethod
    def parse_law(entry: dict[str, Any], base_dir: Path) -> MaterialLaw:
        """Build the law of one region entry."""
        try:
            material_type = MaterialType(entry.get("type"))
        except ValueError:
            raise ConfigError(
                f"unknown material type {entry.get('type')!r}, expected one of "
                f"{[member.value for member in MaterialType]}"
            ) from None
        try:
            if material_type is MaterialType.LINEAR:
                return LinearLaw(_permeability(entry))
            if material_type is MaterialType.MAGNET:
                magnetization = entry.get("magnetization")
                if not isinstance(magnetization, list) or len(magnetization) != 2:
                    raise ConfigError("magnet needs a two-component magnetization")
                return MagnetLaw(
                    _permeability(entry), (float(magnetization[0]), float(magnetization[1]))
                )
            if material_type is MaterialType.BRAUER_SPLINE:
                params = BrauerParameters(
                    float(entry["k1"]), float(entry["k2"]), float(entry["k3"])
                )
                knots = default_knots(
                    float(entry.get("b_max", SPLINE_B_MAX)),
                    int(entry.get("knots", SPLINE_KNOTS)),
                )
                return IsotropicSplineLaw.from_brauer(params, knots)
            if "file" not in entry:
                raise ConfigError('bh_curve needs a "file" entry')
            b_values, h_values = read_bh_curve(base_dir / entry["file"])
            return IsotropicSplineLaw.from_energy(fit_bh_curve(b_values, h_values))
        except KeyError as err:
            raise ConfigError(f"{material_type.value} needs {err.args[0]!r}") from None


def _permeability(entry: dict[str, Any]) -> float:
    if "mu_r" in entry:
        return float(entry["mu_r"]) * MU_0
    if "mu" in entry:
        return float(entry["mu"])
    raise ConfigError('permeability needs "mu" or "mu_r"')


def read_bh_curve(path: Path) -> tuple[FloatArray, FloatArray]:
    """Read a two-column |B|, |H| CSV file; a non-numeric first row is a header."""
    try:
        with path.open(encoding="utf-8", newline="") as csv_file:
            rows = [row for row in csv.reader(csv_file) if row and not row[0].startswith("#")]
    except OSError as err:
        raise ConfigError(f"cannot read B-H curve {path}: {err.strerror}") from None
    except UnicodeDecodeError:
        raise ConfigError(f"{path.name}: file is not valid UTF-8") from None
    values: list[tuple[float, float]] = []
    for number, row in enumerate(rows):
        try:
            b_value, h_value = (float(value) for value in row)
        except ValueError:
            if number == 0:
                continue
            raise ConfigError(f"{path.name}: cannot parse row {row}") from None
        values.append((b_value, h_value))
    if len(values) < 2:
        raise ConfigError(f"{path.name}: B-H curve needs at least two points")
    table = np.array(values, dtype=np.float64)
    return table[:, 0], table[:, 1]
