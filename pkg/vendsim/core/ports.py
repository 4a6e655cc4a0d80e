"""Port declarations and signal values."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Mapping

from ..errors import VendsimError


MAX_WIDTH = 64

Assignment = Dict[str, int]


class ContractError(VendsimError):
    """Raised when a caller breaks an operation's precondition."""

    pass


class WidthError(VendsimError):
    """Raised when a value does not fit the width it is bound to."""

    pass


class Direction(Enum):
    """Port direction."""

    INPUT = "input"
    OUTPUT = "output"
    INOUT = "inout"


@dataclass(frozen=True)
class PortDecl:
    """A named port of a machine."""

    name: str
    width: int = 1
    direction: Direction = Direction.INPUT

    def __post_init__(self) -> None:
        if not self.name.isidentifier():
            raise ContractError(f"Invalid port name: {self.name!r}")
        if not 1 <= self.width <= MAX_WIDTH:
            raise WidthError(f"Port {self.name} width {self.width} outside 1..{MAX_WIDTH}")

    @property
    def max_value(self) -> int:
        return (1 << self.width) - 1

    @property
    def driven_by_machine(self) -> bool:
        """Output and inout ports are written by the machine, never by stimulus."""
        return self.direction is not Direction.INPUT

    def check(self, value: int) -> int:
        """Return value if it fits this port, else raise WidthError."""
        if isinstance(value, bool):
            value = int(value)
        if not isinstance(value, int) or not 0 <= value <= self.max_value:
            raise WidthError(
                f"Value {value!r} does not fit {self.width}-bit port {self.name}"
            )
        return value


@dataclass(frozen=True)
class SignalValue:
    """An unsigned value bound to a bit width."""

    value: int
    width: int

    def __post_init__(self) -> None:
        if not 1 <= self.width <= MAX_WIDTH:
            raise WidthError(f"Width {self.width} outside 1..{MAX_WIDTH}")
        if not 0 <= self.value <= (1 << self.width) - 1:
            raise WidthError(f"Value {self.value} does not fit {self.width} bits")

    def binary(self) -> str:
        """Binary digits without leading zeros ("0" for zero)."""
        return format(self.value, "b")


def check_assignment(ports: Iterable[PortDecl], values: Mapping[str, int]) -> Assignment:
    """Validate that values assigns every port exactly, within width.

    Returns a fresh dict in port declaration order.
    """
    ports = list(ports)
    names = {p.name for p in ports}
    unknown = sorted(set(values) - names)
    if unknown:
        raise ContractError(f"Unknown port(s) in assignment: {', '.join(unknown)}")

    checked: Assignment = {}
    for port in ports:
        if port.name not in values:
            raise ContractError(f"Missing assignment for port {port.name}")
        checked[port.name] = port.check(values[port.name])
    return checked
