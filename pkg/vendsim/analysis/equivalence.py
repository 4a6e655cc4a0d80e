"""Exhaustive dual-run check of a Mealy machine against its Moore conversion."""

from typing import Dict, Hashable, List, Optional, Tuple

from ..core.machine import MachineDefinition
from ..core.ports import Assignment
from .graph import AnalysisInfeasibleError


def skewed_equivalent(
    mealy: MachineDefinition, moore: MachineDefinition, depth: int
) -> Optional[List[Assignment]]:
    """Check that moore's output at cycle t+1 is mealy's output at cycle t.

    Covers every input sequence of up to ``depth`` cycles by exploring the
    joint configuration (mealy state, moore state, last mealy output) breadth
    first; a configuration seen before is not expanded again. Returns None
    when the machines agree, else an input sequence whose last Moore output
    disagrees.
    """
    if mealy.has_datapath or moore.has_datapath:
        raise AnalysisInfeasibleError("Exhaustive comparison needs machines without a datapath")

    space = list(mealy.input_space())
    zero = mealy.zero_inputs()
    first = tuple(sorted(mealy.output(mealy.initial, zero).items()))

    Config = Tuple[Hashable, Hashable, Tuple[Tuple[str, int], ...]]
    frontier: Dict[Config, List[Assignment]] = {(mealy.initial, moore.initial, first): []}
    seen = set(frontier)

    for level in range(depth + 1):
        following: Dict[Config, List[Assignment]] = {}
        for (m, q, expected), sequence in frontier.items():
            shown = tuple(sorted(moore.output(q, zero).items()))
            if shown != expected:
                return sequence
            if level == depth:
                continue
            for inputs in space:
                outputs = tuple(sorted(mealy.output(m, inputs).items()))
                config = (mealy.transition(m, inputs), moore.transition(q, inputs), outputs)
                if config not in seen:
                    seen.add(config)
                    following[config] = sequence + [inputs]
        frontier = following
    return None
