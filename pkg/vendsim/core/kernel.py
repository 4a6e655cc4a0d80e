"""Cycle-accurate simulation kernel.

One ``step`` is one rising clock edge. Outputs of a cycle are computed from the
state held before the edge and the inputs sampled in that cycle (Mealy
semantics); the next state becomes current at the edge. Reset is synchronous
and active-high: when asserted the next state is the initial state whatever
the transition function says, and the cycle shows the initial state's outputs
for released inputs.
"""

import logging
from dataclasses import dataclass
from typing import Any, Hashable, List, Mapping, Protocol, Sequence, Tuple

from ..errors import VendsimError
from .machine import KindError, MachineDefinition, MachineKind
from .ports import Assignment, check_assignment
from .trace import ExpectationResult, Trace, TraceRecord


logger = logging.getLogger(__name__)


class ExpectationError(VendsimError):
    """Raised after a run in which one or more expectations failed."""

    def __init__(self, failures: Sequence[ExpectationResult], trace: Trace) -> None:
        self.failures = list(failures)
        self.trace = trace
        lines = "; ".join(str(f) for f in self.failures)
        super().__init__(f"{len(self.failures)} expectation(s) failed: {lines}")


class Expectation(Protocol):
    cycle: int
    port: str
    value: int


class Stimulus(Protocol):
    """What ``run`` needs from a stimulus program."""

    length: int
    expectations: Sequence[Expectation]

    def schedule(self, machine: MachineDefinition) -> List[Assignment]:
        ...


@dataclass
class KernelState:
    """The state register, the datapath and the trace of one simulation.

    Owned by a single simulation and only changed through ``step``.
    """

    current: Hashable
    data: Any
    cycle: int
    trace: Trace


def new_kernel(machine: MachineDefinition) -> KernelState:
    """Kernel at cycle 0 holding the initial state and datapath."""
    return KernelState(
        current=machine.initial,
        data=machine.data,
        cycle=0,
        trace=Trace(initial_state=machine.initial, final_data=machine.data),
    )


def step(
    machine: MachineDefinition, kernel: KernelState, inputs: Mapping[str, int]
) -> Tuple[KernelState, Assignment]:
    """Advance one clock edge. The kernel is updated in place and returned."""
    sampled = check_assignment(machine.inputs, inputs)
    view = {name: value for name, value in sampled.items() if name != machine.reset_port}

    if machine.reset_port is not None and sampled[machine.reset_port]:
        data = machine.data_after_reset(kernel.data)
        released = {name: 0 for name in view}
        outputs = machine.evaluate(machine.initial, data, released).outputs
        next_state, next_data = machine.initial, data
    else:
        next_state, next_data, outputs = machine.evaluate(kernel.current, kernel.data, view)

    outputs = check_assignment(machine.outputs, outputs)
    kernel.trace.append(TraceRecord(kernel.cycle, kernel.current, sampled, outputs))
    logger.debug(f"{machine.name} cycle {kernel.cycle}: {kernel.current} -> {next_state}")

    kernel.current = next_state
    kernel.data = next_data
    kernel.cycle += 1
    kernel.trace.final_state = next_state
    kernel.trace.final_data = next_data
    return kernel, outputs


def run(machine: MachineDefinition, stimulus: Stimulus) -> Trace:
    """Simulate a stimulus program and check its expectations.

    Every expectation is checked against the outputs of its cycle and the
    results are kept on the trace as ``checks``. If any fail,
    ExpectationError is raised after the full run and carries the trace.
    """
    kernel = new_kernel(machine)
    for inputs in stimulus.schedule(machine):
        step(machine, kernel, inputs)

    kernel.trace.checks = [
        ExpectationResult(
            expectation.cycle,
            expectation.port,
            expectation.value,
            kernel.trace[expectation.cycle].outputs[expectation.port],
        )
        for expectation in stimulus.expectations
    ]
    failures = kernel.trace.failures()

    logger.info(f"{machine.name}: ran {kernel.cycle} cycles, {len(failures)} failed expectation(s)")
    if failures:
        for failure in failures:
            logger.warning(f"Expectation failed at {failure}")
        raise ExpectationError(failures, kernel.trace)
    return kernel.trace


def moore_output(machine: MachineDefinition, state: Hashable) -> Assignment:
    """Outputs of a Moore machine in a state; they do not depend on inputs."""
    if machine.kind is not MachineKind.MOORE:
        raise KindError(f"{machine.name} is a {machine.kind.value} machine, not Moore")
    return machine.output(state, machine.zero_inputs())
