"""Value Change Dump output for simulation traces.

One timestep per clock cycle (``1 ns``, timestamp = cycle number). Every port
is declared in port order followed by a ``state`` variable holding the
canonical index of the state register. Cycle 0 is dumped in full inside
``$dumpvars``; later cycles list only the variables that changed. A closing
timestamp marks the end of the last cycle.
"""

import io
from dataclasses import dataclass
from typing import BinaryIO, Dict, List, Optional, Tuple

from ..core.machine import MachineDefinition
from ..core.ports import SignalValue
from ..core.trace import Trace


DEFAULT_DATE = "(deterministic build)"
TIMESCALE = "1 ns"
STATE_VARIABLE = "state"

_FIRST_CODE = 33
_CODE_RADIX = 94


@dataclass(frozen=True)
class VcdVariable:
    code: str
    name: str
    width: int


@dataclass(frozen=True)
class VcdChange:
    code: str
    value: int


@dataclass(frozen=True)
class VcdDocument:
    """Header declarations and timestamped value changes."""

    scope: str
    variables: Tuple[VcdVariable, ...]
    blocks: Tuple[Tuple[int, Tuple[VcdChange, ...]], ...]
    end_time: Optional[int] = None
    timescale: str = TIMESCALE
    date: str = DEFAULT_DATE


def identifier_code(index: int) -> str:
    """Printable identifier for the index-th variable: ``!``, ``"``, ... ``~``, ``!!``, ..."""
    digits = []
    while True:
        digits.append(chr(_FIRST_CODE + index % _CODE_RADIX))
        index = index // _CODE_RADIX - 1
        if index < 0:
            break
    return "".join(reversed(digits))


def state_width(machine: MachineDefinition) -> int:
    return max(1, (len(machine.states) - 1).bit_length())


def trace_to_vcd(trace: Trace, machine: MachineDefinition, date: Optional[str] = None) -> VcdDocument:
    """Convert a trace into a VCD document."""
    declared = [(port.name, port.width) for port in machine.ports]
    declared.append((STATE_VARIABLE, state_width(machine)))
    variables = tuple(
        VcdVariable(identifier_code(i), name, width) for i, (name, width) in enumerate(declared)
    )

    blocks: List[Tuple[int, Tuple[VcdChange, ...]]] = []
    previous: Dict[str, int] = {}
    for record in trace:
        changes = []
        for variable in variables:
            if variable.name == STATE_VARIABLE:
                value = machine.state_index(record.state)
            else:
                value = record.value(variable.name)
            if previous.get(variable.name) != value:
                changes.append(VcdChange(variable.code, value))
                previous[variable.name] = value
        blocks.append((record.cycle, tuple(changes)))

    return VcdDocument(
        scope=machine.name,
        variables=variables,
        blocks=tuple(blocks),
        end_time=len(trace) if len(trace) else None,
        date=date or DEFAULT_DATE,
    )


def _value(variable: VcdVariable, value: int) -> str:
    if variable.width == 1:
        return f"{value}{variable.code}"
    return f"b{SignalValue(value, variable.width).binary()} {variable.code}"


def vcd_text(doc: VcdDocument) -> str:
    """Serialize a document to VCD text."""
    by_code = {v.code: v for v in doc.variables}
    lines = [
        f"$date {doc.date} $end",
        f"$timescale {doc.timescale} $end",
        f"$scope module {doc.scope} $end",
    ]
    lines.extend(f"$var wire {v.width} {v.code} {v.name} $end" for v in doc.variables)
    lines.append("$upscope $end")
    lines.append("$enddefinitions $end")

    for i, (time, changes) in enumerate(doc.blocks):
        lines.append(f"#{time}")
        values = [_value(by_code[c.code], c.value) for c in changes]
        if i == 0:
            lines.append("$dumpvars")
            lines.extend(values)
            lines.append("$end")
        else:
            lines.extend(values)
    if doc.end_time is not None:
        lines.append(f"#{doc.end_time}")
    return "\n".join(lines) + "\n"


def write_vcd(doc: VcdDocument, sink: BinaryIO) -> int:
    """Write a document to a binary sink; returns the number of bytes written."""
    data = vcd_text(doc).encode("ascii")
    sink.write(data)
    return len(data)


def vcd_bytes(doc: VcdDocument) -> bytes:
    buffer = io.BytesIO()
    write_vcd(doc, buffer)
    return buffer.getvalue()
