"""Desk-scale resource estimate of a machine."""

import json
from dataclasses import asdict, dataclass

from ..core.machine import MachineDefinition
from .graph import edges


@dataclass(frozen=True)
class ResourceReport:
    machine: str
    states: int
    transitions: int
    state_bits: int
    io_bits: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2) + "\n"

    def to_text(self) -> str:
        return (
            f"machine     {self.machine}\n"
            f"states      {self.states}\n"
            f"transitions {self.transitions}\n"
            f"state bits  {self.state_bits}\n"
            f"io bits     {self.io_bits}\n"
        )


def resource_report(machine: MachineDefinition) -> ResourceReport:
    """State and arc counts, minimum state-register width and total port width."""
    count = len(machine.states)
    return ResourceReport(
        machine=machine.name,
        states=count,
        transitions=len(edges(machine)),
        state_bits=(count - 1).bit_length(),
        io_bits=sum(port.width for port in machine.ports),
    )
