"""Synchronous machine definitions.

A machine is a finite control state plus an optional datapath (a register
record such as an accumulator). One evaluation function plays the role of the
next-state and output decoder in a single process: given the present state,
the datapath and the sampled inputs it returns the next state, the next
datapath and the outputs of this cycle. Transition and output functions are
views of it.
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import (
    Any,
    Callable,
    Collection,
    Dict,
    Hashable,
    Iterator,
    Mapping,
    NamedTuple,
    Optional,
    Tuple,
)

from ..errors import VendsimError
from .guards import CaseTable
from .ports import Assignment, ContractError, Direction, PortDecl, check_assignment


ENUMERATION_LIMIT_BITS = 20


class MachineError(VendsimError):
    """Raised when a machine definition is malformed."""

    pass


class KindError(VendsimError):
    """Raised when an operation needs the other machine kind."""

    pass


class InputSpaceTooLarge(MachineError):
    """Raised when enumerating all input assignments would exceed the limit."""

    pass


class MachineKind(Enum):
    MEALY = "mealy"
    MOORE = "moore"


class Evaluation(NamedTuple):
    """Result of evaluating one clock cycle."""

    state: Hashable
    data: Any
    outputs: Assignment


Evaluator = Callable[[Hashable, Any, Assignment], Evaluation]


@dataclass(frozen=True, eq=False)
class MachineDefinition:
    """Immutable description of a synchronous Mealy or Moore machine.

    ``states`` is the canonical state order (index = waveform encoding).
    ``reset_port`` names the synchronous, active-high reset input; the kernel
    applies it and the evaluator never sees it. ``reset_data`` maps the
    datapath held at reset time to the datapath after reset (default: the
    initial datapath).
    """

    name: str
    kind: MachineKind
    states: Collection[Hashable]
    initial: Hashable
    ports: Tuple[PortDecl, ...]
    evaluate: Evaluator
    data: Any = None
    reset_data: Optional[Callable[[Any], Any]] = None
    cases: Optional[CaseTable] = None
    reset_port: Optional[str] = None
    _index: Dict[Hashable, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ports", tuple(self.ports))

        seen = set()
        for port in self.ports:
            if port.name in seen:
                raise MachineError(f"Duplicate port name: {port.name}")
            seen.add(port.name)

        if self.reset_port is not None:
            reset = self.port(self.reset_port)
            if reset.direction is not Direction.INPUT or reset.width != 1:
                raise MachineError(f"Reset port {self.reset_port} must be a 1-bit input")

        if self.initial not in self.states:
            raise MachineError(f"Initial state {self.initial} is not a declared state")

        index: Dict[Hashable, int] = {}
        if isinstance(self.states, (tuple, list)):
            for i, state in enumerate(self.states):
                if state in index:
                    raise MachineError(f"Duplicate state: {state}")
                index[state] = i
        object.__setattr__(self, "_index", index)

        self._check_totality()

    @classmethod
    def pure(
        cls,
        name: str,
        kind: MachineKind,
        states: Collection[Hashable],
        initial: Hashable,
        ports: Tuple[PortDecl, ...],
        transition: Callable[[Hashable, Assignment], Hashable],
        output: Callable[[Hashable, Assignment], Assignment],
        cases: Optional[CaseTable] = None,
        reset_port: Optional[str] = None,
    ) -> "MachineDefinition":
        """Build a machine without a datapath from two-argument functions."""

        def evaluate(state: Hashable, data: Any, inputs: Assignment) -> Evaluation:
            return Evaluation(transition(state, inputs), None, output(state, inputs))

        return cls(
            name=name,
            kind=kind,
            states=states,
            initial=initial,
            ports=ports,
            evaluate=evaluate,
            cases=cases,
            reset_port=reset_port,
        )

    # -- ports -------------------------------------------------------------

    def port(self, name: str) -> PortDecl:
        for port in self.ports:
            if port.name == name:
                return port
        raise ContractError(f"Unknown port: {name}")

    @property
    def inputs(self) -> Tuple[PortDecl, ...]:
        return tuple(p for p in self.ports if p.direction is Direction.INPUT)

    @property
    def outputs(self) -> Tuple[PortDecl, ...]:
        """Ports written by the machine (outputs and inouts)."""
        return tuple(p for p in self.ports if p.driven_by_machine)

    @property
    def evaluation_inputs(self) -> Tuple[PortDecl, ...]:
        """Inputs seen by the evaluator: every input except reset."""
        return tuple(p for p in self.inputs if p.name != self.reset_port)

    @property
    def has_datapath(self) -> bool:
        return self.data is not None

    def zero_inputs(self) -> Assignment:
        """All inputs, reset included, at 0."""
        return {p.name: 0 for p in self.inputs}

    def input_space(self, limit_bits: int = ENUMERATION_LIMIT_BITS) -> Iterator[Assignment]:
        """Every assignment of the evaluation inputs, lowest port varying slowest."""
        ports = self.evaluation_inputs
        total = sum(p.width for p in ports)
        if total > limit_bits:
            raise InputSpaceTooLarge(
                f"{self.name}: {total} input bits exceed the {limit_bits}-bit enumeration limit"
            )
        ranges = [range(p.max_value + 1) for p in ports]
        for values in itertools.product(*ranges):
            yield dict(zip((p.name for p in ports), values))

    # -- states ------------------------------------------------------------

    def state_index(self, state: Hashable) -> int:
        """Canonical encoding of a state."""
        if state in self._index:
            return self._index[state]
        index = getattr(self.states, "index", None)
        if index is not None:
            return index(state)
        raise MachineError(f"Unknown state: {state}")

    def data_after_reset(self, data: Any) -> Any:
        if self.reset_data is None:
            return self.data
        return self.reset_data(data)

    # -- evaluation views --------------------------------------------------

    def _evaluation_view(self, inputs: Mapping[str, int]) -> Assignment:
        return {p.name: inputs.get(p.name, 0) for p in self.evaluation_inputs}

    def transition(self, state: Hashable, inputs: Mapping[str, int], data: Any = None) -> Hashable:
        """Next state for (state, inputs); data defaults to the initial datapath."""
        data = self.data if data is None else data
        return self.evaluate(state, data, self._evaluation_view(inputs)).state

    def output(self, state: Hashable, inputs: Mapping[str, int], data: Any = None) -> Assignment:
        """Outputs for (state, inputs); data defaults to the initial datapath."""
        data = self.data if data is None else data
        return dict(self.evaluate(state, data, self._evaluation_view(inputs)).outputs)

    # -- validation --------------------------------------------------------

    def _check_totality(self) -> None:
        if self.cases is not None:
            one_bit = [p.name for p in self.evaluation_inputs if p.width == 1]
            problems = self.cases.problems(self.states, one_bit)
            if problems:
                raise MachineError(f"{self.name}: " + "; ".join(problems))

        # Datapath conditions are only decidable in reachable register
        # configurations, so probing stops at the case table for those.
        if self.has_datapath or not self._index:
            return

        if self.cases is not None:
            zero = {p.name: 0 for p in self.evaluation_inputs}
            probes = (
                (state, arc.guard.representative(zero))
                for state in self.states
                for arc in self.cases.arcs(state)
            )
        else:
            probes = (
                (state, inputs) for state in self.states for inputs in self.input_space()
            )

        moore_outputs: Dict[Hashable, Assignment] = {}
        for state, inputs in probes:
            result = self.evaluate(state, self.data, inputs)
            if result.state not in self.states:
                raise MachineError(
                    f"{self.name}: transition from {state} on {inputs} leaves the state set"
                )
            if self.cases is not None:
                listed = next(arc.target for arc in self.cases.arcs(state) if arc.guard.matches(inputs))
                if result.state != listed:
                    raise MachineError(
                        f"{self.name}: case table sends {state} on {inputs} to {listed}, "
                        f"transition gives {result.state}"
                    )
            try:
                outputs = check_assignment(self.outputs, result.outputs)
            except VendsimError as e:
                raise MachineError(f"{self.name}: output of {state} on {inputs}: {e}") from e
            if self.kind is MachineKind.MOORE:
                previous = moore_outputs.setdefault(state, outputs)
                if previous != outputs:
                    raise MachineError(f"{self.name}: Moore output of {state} depends on inputs")
