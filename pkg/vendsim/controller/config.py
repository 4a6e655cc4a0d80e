"""Controller configuration.

The configuration file is a YAML mapping of dotted keys::

    product.snacks.price: 30
    product.coffee.price: 40
    inventory.capacity: 4
    billing.currency: INR

Nested mappings (``product: {snacks: {price: 30}}``) are read the same way.
When any ``product.*`` key is present the catalog holds exactly the listed
products; otherwise the four list-price products are used.
"""

import logging
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import yaml

from .catalog import DEFAULT_CAPACITY, ConfigurationError, ProductCatalog


logger = logging.getLogger(__name__)

CONFIG_ENV = "VENDSIM_CONFIG"


@dataclass
class ControllerConfig:
    """Configuration for the vending controller."""

    catalog: ProductCatalog = field(default_factory=ProductCatalog.default)
    capacity: int = DEFAULT_CAPACITY
    currency: str = "INR"

    @classmethod
    def from_mapping(cls, raw: Mapping[str, Any]) -> "ControllerConfig":
        """Build a configuration from a (possibly nested) mapping."""
        flat = _flatten(raw)
        prices: Dict[str, int] = {}
        config = cls()

        for key, value in flat.items():
            parts = key.split(".")
            if len(parts) == 3 and parts[0] == "product" and parts[2] == "price":
                prices[parts[1]] = _integer(key, value)
            elif key == "inventory.capacity":
                config.capacity = _integer(key, value)
            elif key == "billing.currency":
                config.currency = str(value)
            else:
                raise ConfigurationError(f"Unknown configuration key: {key}")

        if prices:
            config.catalog = ProductCatalog.from_prices(prices)
        if config.capacity < 1:
            raise ConfigurationError(f"inventory.capacity must be at least 1, got {config.capacity}")
        return config

    @classmethod
    def load(cls, path: str) -> "ControllerConfig":
        """Read a configuration file."""
        try:
            with open(path, "r", encoding="utf-8") as f:
                raw = yaml.safe_load(f)
        except OSError as e:
            raise ConfigurationError(f"Cannot read config {path}: {e}") from e
        except UnicodeDecodeError as e:
            raise ConfigurationError(f"Config {path} is not valid UTF-8: {e}") from e
        except yaml.YAMLError as e:
            raise ConfigurationError(f"Invalid config {path}: {e}") from e

        if raw is None:
            raw = {}
        if not isinstance(raw, dict):
            raise ConfigurationError(f"Config {path} must be a mapping")
        config = cls.from_mapping(raw)
        logger.info(f"Loaded config from {path}: {config.catalog}, capacity {config.capacity}")
        return config


def resolve_config(path: Optional[str] = None) -> ControllerConfig:
    """Load the configuration named by path, else $VENDSIM_CONFIG, else defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return ControllerConfig()
    if not Path(path).is_file():
        raise ConfigurationError(f"Config file not found: {path}")
    return ControllerConfig.load(path)


def _flatten(raw: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    flat: Dict[str, Any] = {}
    for key, value in raw.items():
        name = f"{prefix}{key}"
        if isinstance(value, Mapping):
            flat.update(_flatten(value, f"{name}."))
        else:
            flat[name] = value
    return flat


def _integer(key: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigurationError(f"{key} must be an integer, got {value!r}")
    return value
