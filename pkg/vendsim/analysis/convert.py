"""Mealy to Moore conversion.

The Moore machine's states are (Mealy state, Mealy output) pairs: entering a
pair means "the Mealy machine is now in this state and produced this output
on the way in". Its output is therefore the Mealy output one cycle late.
Before any input has been seen the output is the Mealy output of the initial
state for all-zero inputs.
"""

import collections.abc
import itertools
import logging
from collections import deque
from typing import Any, Collection, Hashable, Iterator, List, NamedTuple, Sequence, Tuple

from ..core.machine import Evaluation, KindError, MachineDefinition, MachineKind
from ..core.ports import Assignment, PortDecl


logger = logging.getLogger(__name__)


class MooreState(NamedTuple):
    state: Hashable
    outputs: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.state}/{'.'.join(str(v) for v in self.outputs)}"


class PairSpace(collections.abc.Collection):
    """Every (state, output vector) pair, described without materializing it.

    Used for machines with a datapath, whose reachable pairs depend on
    register values and cannot be enumerated up front. It is a superset of
    the reachable pairs: ``len`` counts every width-valid output vector for
    every state (about 193 million for the vending controller), and
    membership only checks widths.
    """

    def __init__(self, states: Sequence[Hashable], outputs: Sequence[PortDecl]) -> None:
        self._states = tuple(states)
        self._index = {state: i for i, state in enumerate(self._states)}
        self._radices = tuple(p.max_value + 1 for p in outputs)
        self._combinations = 1
        for radix in self._radices:
            self._combinations *= radix

    def __contains__(self, item: object) -> bool:
        if not isinstance(item, MooreState) or item.state not in self._index:
            return False
        if len(item.outputs) != len(self._radices):
            return False
        return all(0 <= v < r for v, r in zip(item.outputs, self._radices))

    def __len__(self) -> int:
        return len(self._states) * self._combinations

    def __iter__(self) -> Iterator[MooreState]:
        vectors = itertools.product(*(range(r) for r in self._radices))
        for state, vector in itertools.product(self._states, vectors):
            yield MooreState(state, vector)

    def index(self, item: MooreState) -> int:
        """Mixed-radix encoding: state index major, output vector minor."""
        if item not in self:
            raise ValueError(f"{item} is not in the pair space")
        code = 0
        for value, radix in zip(item.outputs, self._radices):
            code = code * radix + value
        return self._index[item.state] * self._combinations + code


def mealy_to_moore(machine: MachineDefinition) -> MachineDefinition:
    """Convert a Mealy machine into a Moore machine with one cycle of output skew."""
    if machine.kind is not MachineKind.MEALY:
        raise KindError(f"{machine.name} is already a {machine.kind.value} machine")

    names = [p.name for p in machine.outputs]

    def vector(outputs: Assignment) -> Tuple[int, ...]:
        return tuple(outputs[name] for name in names)

    initial = MooreState(machine.initial, vector(machine.output(machine.initial, machine.zero_inputs())))

    def evaluate(state: MooreState, data: Any, inputs: Assignment) -> Evaluation:
        nxt, data, outputs = machine.evaluate(state.state, data, inputs)
        return Evaluation(MooreState(nxt, vector(outputs)), data, dict(zip(names, state.outputs)))

    if machine.has_datapath:
        states: Collection[Hashable] = PairSpace(tuple(machine.states), machine.outputs)
    else:
        states = _reachable_pairs(machine, initial, vector)

    moore = MachineDefinition(
        name=f"{machine.name}_moore",
        kind=MachineKind.MOORE,
        states=states,
        initial=initial,
        ports=machine.ports,
        evaluate=evaluate,
        data=machine.data,
        reset_data=machine.reset_data,
        reset_port=machine.reset_port,
    )
    logger.debug(f"Converted {machine.name}: {len(machine.states)} Mealy states, {len(states)} Moore states")
    return moore


def _reachable_pairs(machine: MachineDefinition, initial: MooreState, vector) -> Tuple[MooreState, ...]:
    space = list(machine.input_space())
    order: List[MooreState] = [initial]
    seen = {initial}
    queue = deque([initial])
    while queue:
        pair = queue.popleft()
        for inputs in space:
            result = machine.evaluate(pair.state, None, inputs)
            nxt = MooreState(result.state, vector(result.outputs))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    return tuple(order)
