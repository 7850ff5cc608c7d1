"""Study configuration loader."""

from __future__ import annotations

from dataclasses import replace
import json
import logging
from pathlib import Path
from typing import Any

from mixedmag.exceptions import ConfigError
from mixedmag.models import Formulation, RunConfig

_LOGGER = logging.getLogger("mixedmag.log")

_PATH_KEYS = ("mesh", "materials", "output")
_INT_KEYS = ("order", "levels", "base_n", "max_iterations", "seed")
_FLOAT_KEYS = ("sigma", "tol")
_KNOWN_KEYS = {"case", "formulation", *_PATH_KEYS, *_INT_KEYS, *_FLOAT_KEYS}


class ConfigLoader:
    """Load run options from a JSON key-value file."""

    @staticmethod
    def load(path: str | Path) -> dict[str, Any]:
        """Read a configuration file into typed RunConfig field values.

        Relative paths are resolved against the directory of the file.
        """
        path = Path(path)
        _LOGGER.debug('Reading configuration "%s"', path)
        try:
            document = json.loads(path.read_text(encoding="utf-8"))
        except OSError as err:
            raise ConfigError(f"cannot read configuration {path}: {err.strerror}") from None
        except UnicodeDecodeError:
            raise ConfigError(f"{path.name}: file is not valid UTF-8") from None
        except json.JSONDecodeError as err:
            raise ConfigError(
                f"{path.name}: invalid JSON at line {err.lineno}: {err.msg}"
            ) from None
        if not isinstance(document, dict):
            raise ConfigError(f"{path.name}: configuration must be a JSON object")
        unknown = sorted(set(document) - _KNOWN_KEYS)
        if unknown:
            raise ConfigError(f"{path.name}: unknown configuration key {unknown[0]!r}")
        return ConfigLoader.parse(document, path.parent)

    @staticmethod
    def parse(document: dict[str, Any], base_dir: Path) -> dict[str, Any]:
        """Convert raw JSON values into RunConfig field types."""
        values: dict[str, Any] = {}
        try:
            for key, raw in document.items():
                if raw is None:
                    continue
                if key in _PATH_KEYS:
                    values[key] = base_dir / str(raw)
                elif key in _INT_KEYS:
                    values[key] = _as_int(raw)
                elif key in _FLOAT_KEYS:
                    values[key] = float(raw)
                elif key == "formulation":
                    values[key] = Formulation(raw)
                else:
                    values[key] = str(raw)
        except (TypeError, ValueError):
            raise ConfigError(f"invalid value {raw!r} for {key!r}") from None
        return values

    @staticmethod
    def merge(config: RunConfig, values: dict[str, Any]) -> RunConfig:
        """Fill fields that were not set explicitly on the command line."""
        return replace(config, **values)


def _as_int(raw: Any) -> int:
    if isinstance(raw, bool) or not float(raw).is_integer():
        raise ValueError(raw)
    return int(raw)


def validate_config(config: RunConfig) -> RunConfig:
    """Check ranges and that input paths exist."""
    if config.order not in (1, 2):
        raise ConfigError(f"order must be 1 or 2, got {config.order}")
    if config.levels < 1:
        raise ConfigError(f"levels must be at least 1, got {config.levels}")
    if config.base_n < 1:
        raise ConfigError(f"base_n must be at least 1, got {config.base_n}")
    if config.sigma < 0:
        raise ConfigError(f"sigma must be nonnegative, got {config.sigma}")
    if config.tol is not None and not config.tol > 0:
        raise ConfigError(f"tol must be positive, got {config.tol}")
    if config.max_iterations is not None and config.max_iterations < 1:
        raise ConfigError(f"max_iterations must be positive, got {config.max_iterations}")
    for name in ("mesh", "materials", "config"):
        path: Path | None = getattr(config, name)
        if path is not None and not path.is_file():
            raise ConfigError(f"{name} file {path} does not exist")
    return config
