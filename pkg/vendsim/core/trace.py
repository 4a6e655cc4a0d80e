"""Append-only per-cycle simulation trace."""

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterator, List, Mapping, Optional

from .ports import ContractError


@dataclass(frozen=True)
class TraceRecord:
    """Everything observable during one clock cycle.

    ``state`` is the state register during the cycle (before the edge that
    ends it); ``outputs`` are the outputs evaluated in that cycle.
    """

    cycle: int
    state: Hashable
    inputs: Mapping[str, int]
    outputs: Mapping[str, int]

    def value(self, port: str) -> int:
        if port in self.outputs:
            return self.outputs[port]
        return self.inputs[port]


@dataclass(frozen=True)
class ExpectationResult:
    """One checked expectation: the value asked for and the value seen."""

    cycle: int
    port: str
    expected: int
    actual: int

    @property
    def passed(self) -> bool:
        return self.actual == self.expected

    def __str__(self) -> str:
        return f"cycle {self.cycle}: {self.port} expected {self.expected}, got {self.actual}"


@dataclass
class Trace:
    """Cycle records in increasing cycle order, plus the state after the last edge."""

    initial_state: Hashable
    records: List[TraceRecord] = field(default_factory=list)
    final_state: Optional[Hashable] = None
    final_data: Any = None
    checks: List[ExpectationResult] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.final_state is None:
            self.final_state = self.initial_state

    def append(self, record: TraceRecord) -> None:
        """Append a record; cycles must continue without gaps."""
        expected = len(self.records)
        if record.cycle != expected:
            raise ContractError(f"Trace expected cycle {expected}, got {record.cycle}")
        self.records.append(record)

    def values(self, port: str) -> List[int]:
        """The per-cycle values of one port."""
        return [record.value(port) for record in self.records]

    def states(self) -> List[Hashable]:
        return [record.state for record in self.records]

    def visited(self) -> List[Hashable]:
        """States held during the run, including the one left after the last edge."""
        return self.states() + [self.final_state]

    def failures(self) -> List[ExpectationResult]:
        """Checked expectations whose value did not show up."""
        return [check for check in self.checks if not check.passed]

    def __iter__(self) -> Iterator[TraceRecord]:
        return iter(self.records)

    def __len__(self) -> int:
        return len(self.records)

    def __getitem__(self, cycle: int) -> TraceRecord:
        return self.records[cycle]
