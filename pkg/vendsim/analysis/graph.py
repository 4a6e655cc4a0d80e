"""State-graph analysis: edges, reachability and dot export."""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Hashable, List, Mapping, Tuple

from ..core.machine import InputSpaceTooLarge, MachineDefinition
from ..errors import VendsimError


logger = logging.getLogger(__name__)


class AnalysisInfeasibleError(VendsimError):
    """Raised when a machine cannot be analysed by enumeration."""

    pass


@dataclass(frozen=True)
class Edge:
    source: Hashable
    label: str
    target: Hashable


@dataclass(frozen=True)
class Reachability:
    reachable: Tuple[Hashable, ...]
    unreachable: Tuple[Hashable, ...]

    def __contains__(self, state: object) -> bool:
        return state in self.reachable


def _assignment_label(inputs: Mapping[str, int], widths: Mapping[str, int]) -> str:
    terms = []
    for name, value in inputs.items():
        if widths[name] == 1:
            terms.append(name if value else f"!{name}")
        else:
            terms.append(f"{name}={value}")
    return " & ".join(terms)


def _enumerated_space(machine: MachineDefinition) -> List[Dict[str, int]]:
    if machine.has_datapath:
        raise AnalysisInfeasibleError(
            f"{machine.name} carries a datapath and no case table; its transitions cannot be enumerated"
        )
    try:
        return list(machine.input_space())
    except InputSpaceTooLarge as e:
        raise AnalysisInfeasibleError(f"{e}; project the machine onto fewer input ports") from e


def edges(machine: MachineDefinition) -> List[Edge]:
    """Distinct (state, guard) arcs in canonical state order, sorted by label within a state.

    Case-table machines yield their arcs as written. Otherwise each state's
    input assignments are grouped by target, and a group that covers every
    assignment is labelled ``else``.
    """
    found: List[Edge] = []
    if machine.cases is not None:
        for state in machine.states:
            arcs = [Edge(state, arc.guard.label(), arc.target) for arc in machine.cases.arcs(state)]
            found.extend(sorted(arcs, key=lambda e: (e.label, machine.state_index(e.target))))
        return found

    space = _enumerated_space(machine)
    widths = {p.name: p.width for p in machine.evaluation_inputs}
    for state in machine.states:
        groups: Dict[Hashable, List[str]] = {}
        for inputs in space:
            target = machine.transition(state, inputs)
            groups.setdefault(target, []).append(_assignment_label(inputs, widths))
        arcs = []
        for target, labels in groups.items():
            label = "else" if len(labels) == len(space) else " | ".join(labels)
            arcs.append(Edge(state, label, target))
        found.extend(sorted(arcs, key=lambda e: (e.label, machine.state_index(e.target))))
    return found


def reachable_states(machine: MachineDefinition) -> Reachability:
    """Breadth-first search from the initial state over every input assignment.

    Datapath conditions in case tables are assumed satisfiable, so the
    result over-approximates what a simulation can visit.
    """
    if not isinstance(machine.states, (tuple, list)):
        raise AnalysisInfeasibleError(f"{machine.name} has no enumerable state set")

    successors: Dict[Hashable, List[Hashable]] = {}
    if machine.cases is not None:
        for state in machine.states:
            successors[state] = [arc.target for arc in machine.cases.arcs(state)]
    else:
        space = _enumerated_space(machine)
        for state in machine.states:
            successors[state] = [machine.transition(state, inputs) for inputs in space]

    seen = {machine.initial}
    queue = deque([machine.initial])
    while queue:
        state = queue.popleft()
        for target in successors[state]:
            if target not in seen:
                seen.add(target)
                queue.append(target)

    reachable = tuple(s for s in machine.states if s in seen)
    unreachable = tuple(s for s in machine.states if s not in seen)
    if unreachable:
        logger.info(f"{machine.name}: {len(unreachable)} unreachable state(s)")
    return Reachability(reachable, unreachable)


def _quote(text: str) -> str:
    return '"{}"'.format(text.replace("\\", "\\\\").replace('"', r"\""))


def to_dot(machine: MachineDefinition) -> str:
    """Graphviz rendering of the state graph with deterministic ordering."""
    lines = [f"digraph {_quote(machine.name)} {{", "  rankdir=LR;"]
    for state in machine.states:
        shape = "doublecircle" if state == machine.initial else "circle"
        lines.append(f"  {_quote(str(state))} [shape={shape}];")
    for edge in edges(machine):
        lines.append(
            f"  {_quote(str(edge.source))} -> {_quote(str(edge.target))} [label={_quote(edge.label)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
