"""The vending-machine controller built on the FSM kernel."""

from .catalog import (
    CatalogError,
    ConfigurationError,
    Inventory,
    Product,
    ProductCatalog,
    availability,
)
from .config import ControllerConfig, resolve_config
from .machine import (
    CANCEL,
    INITIALIZE,
    SERVICE,
    ControllerOutputs,
    ControllerRegisters,
    ControllerState,
    Phase,
    accumulate,
    build_controller,
    compute_change,
    controller_step,
    taken_note,
)

__all__ = [
    "CANCEL",
    "INITIALIZE",
    "SERVICE",
    "CatalogError",
    "ConfigurationError",
    "ControllerConfig",
    "ControllerOutputs",
    "ControllerRegisters",
    "ControllerState",
    "Inventory",
    "Phase",
    "Product",
    "ProductCatalog",
    "accumulate",
    "availability",
    "build_controller",
    "compute_change",
    "controller_step",
    "resolve_config",
    "taken_note",
]
