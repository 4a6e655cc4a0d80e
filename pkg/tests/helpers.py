"""Test-only machines, drivers and a minimal VCD reader."""

from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from vendsim.core import MachineDefinition, MachineKind, PortDecl
from vendsim.core.ports import Direction


SCENARIOS = Path(__file__).parent.parent / "scenarios"

# Eight input symbols used by the exhaustive controller sweeps.
SYMBOLS = ("idle", "sel1", "sel2", "sel3", "sel4", "rs_10", "rs_20", "cancel")


def symbol_inputs(machine: MachineDefinition, symbol: str) -> Dict[str, int]:
    """Full input assignment with only the symbol's port high."""
    inputs = machine.zero_inputs()
    if symbol != "idle":
        inputs[symbol] = 1
    return inputs


def toggle_machine() -> MachineDefinition:
    """Moore flip-flop: ``t`` toggles between off and on, ``q`` shows on."""
    ports = (
        PortDecl("reset", 1, Direction.INPUT),
        PortDecl("t", 1, Direction.INPUT),
        PortDecl("q", 1, Direction.OUTPUT),
    )
    return MachineDefinition.pure(
        name="toggle",
        kind=MachineKind.MOORE,
        states=("off", "on"),
        initial="off",
        ports=ports,
        transition=lambda s, i: ("on" if s == "off" else "off") if i["t"] else s,
        output=lambda s, i: {"q": int(s == "on")},
        reset_port="reset",
    )


def table_mealy(
    name: str,
    states: int,
    transitions: Sequence[int],
    outputs: Sequence[Tuple[int, int]],
) -> MachineDefinition:
    """Mealy machine over inputs a, b with outputs y (1 bit) and z (2 bits).

    Row ``s * 4 + a * 2 + b`` of the tables gives the next state and (y, z).
    """
    ports = (
        PortDecl("a", 1, Direction.INPUT),
        PortDecl("b", 1, Direction.INPUT),
        PortDecl("y", 1, Direction.OUTPUT),
        PortDecl("z", 2, Direction.OUTPUT),
    )

    def row(state: int, inputs: Dict[str, int]) -> int:
        return state * 4 + inputs["a"] * 2 + inputs["b"]

    def output(state, inputs):
        y, z = outputs[row(state, inputs)]
        return {"y": y, "z": z}

    return MachineDefinition.pure(
        name=name,
        kind=MachineKind.MEALY,
        states=tuple(range(states)),
        initial=0,
        ports=ports,
        transition=lambda s, i: transitions[row(s, i)],
        output=output,
    )


def read_vcd(text: str) -> Tuple[Dict[str, int], Dict[str, List[int]]]:
    """Parse VCD text into variable widths and per-timestep values.

    Values are expanded to one entry per timestamp from 0 up to (not
    including) the final timestamp.
    """
    widths: Dict[str, int] = {}
    names: Dict[str, str] = {}
    changes: List[Tuple[int, str, int]] = []
    time = None
    end = 0
    in_header = True

    for line in text.splitlines():
        tokens = line.split()
        if not tokens:
            continue
        if in_header:
            if tokens[0] == "$var":
                widths[tokens[4]] = int(tokens[2])
                names[tokens[3]] = tokens[4]
            elif tokens[0] == "$enddefinitions":
                in_header = False
            continue
        if tokens[0].startswith("#"):
            time = int(tokens[0][1:])
            end = time
        elif tokens[0] in ("$dumpvars", "$end"):
            continue
        elif tokens[0].startswith("b"):
            changes.append((time, names[tokens[1]], int(tokens[0][1:], 2)))
        else:
            changes.append((time, names[tokens[0][1:]], int(tokens[0][0])))

    values: Dict[str, List[int]] = {name: [] for name in widths}
    current: Dict[str, int] = {}
    by_time: Dict[int, List[Tuple[str, int]]] = {}
    for t, name, value in changes:
        by_time.setdefault(t, []).append((name, value))
    for t in range(end):
        for name, value in by_time.get(t, ()):
            current[name] = value
        for name in widths:
            values[name].append(current[name])
    return widths, values
