"""Stimulus programs and their per-cycle schedule."""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple

from ..core.machine import MachineDefinition
from ..core.ports import Assignment
from ..errors import VendsimError


class StimulusError(VendsimError):
    """Raised for an invalid stimulus program; line is 1-based when known."""

    def __init__(self, message: str, line: int = 0) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class Drive:
    """Drive port to value from cycle on, until driven again."""

    cycle: int
    port: str
    value: int


@dataclass(frozen=True)
class Expect:
    """Port must show value in the outputs of cycle."""

    cycle: int
    port: str
    value: int


@dataclass(frozen=True)
class StimulusProgram:
    """Drives and expectations over a fixed number of cycles."""

    drives: Tuple[Drive, ...]
    expectations: Tuple[Expect, ...]
    length: int

    @classmethod
    def create(
        cls, drives: Iterable[Drive], expectations: Iterable[Expect], length: int
    ) -> "StimulusProgram":
        """Canonical program: events sorted by cycle, keeping order within a cycle."""
        drives = tuple(sorted(drives, key=lambda d: d.cycle))
        expectations = tuple(sorted(expectations, key=lambda e: e.cycle))
        if length < 0:
            raise StimulusError(f"Run length must be non-negative, got {length}")
        for event in drives + expectations:
            if not 0 <= event.cycle < length:
                raise StimulusError(
                    f"Cycle {event.cycle} of {event.port} is outside the run of {length} cycles"
                )
        return cls(drives, expectations, length)

    def schedule(self, machine: MachineDefinition) -> List[Assignment]:
        return schedule(self, machine)


def schedule(program: StimulusProgram, machine: MachineDefinition) -> List[Assignment]:
    """Full input assignment for every cycle; drives hold, undriven inputs are 0."""
    by_cycle: Dict[int, List[Drive]] = {}
    for drive in program.drives:
        by_cycle.setdefault(drive.cycle, []).append(drive)

    current = machine.zero_inputs()
    assignments = []
    for cycle in range(program.length):
        for drive in by_cycle.get(cycle, ()):
            current[drive.port] = drive.value
        assignments.append(dict(current))
    return assignments
