"""Parser and printer for the stimulus language.

Format (one statement per line, ``#`` starts a comment)::

    @<cycle> <port>=<value> [<port>=<value> ...]          drive inputs from cycle on
    expect @<cycle> <port>=<value> [<port>=<value> ...]   check outputs of cycle
    run <cycles>                                          required, exactly once

Values are decimal or ``0b``-prefixed binary.
"""

import logging
import re
from typing import Dict, List, Optional, Tuple

from ..core.machine import MachineDefinition
from ..core.ports import PortDecl
from .program import Drive, Expect, StimulusError, StimulusProgram


logger = logging.getLogger(__name__)


class Keyword:
    """Statement keywords."""

    RUN = "run"
    EXPECT = "expect"


_DECIMAL = re.compile(r"[0-9]+")
_BINARY = re.compile(r"0b[01]+")


def parse_stimulus(text: str, machine: MachineDefinition) -> StimulusProgram:
    """Parse stimulus text against the ports of machine."""
    ports: Dict[str, PortDecl] = {p.name: p for p in machine.ports}
    drives: List[Tuple[int, Drive]] = []
    expectations: List[Tuple[int, Expect]] = []
    length: Optional[int] = None
    lines = text.splitlines()

    for number, raw in enumerate(lines, start=1):
        tokens = raw.split("#", 1)[0].split()
        if not tokens:
            continue
        head = tokens[0]

        if head == Keyword.RUN:
            if length is not None:
                raise StimulusError("duplicate 'run' statement", number)
            if len(tokens) != 2 or not _DECIMAL.fullmatch(tokens[1]):
                raise StimulusError("'run' takes one non-negative cycle count", number)
            length = int(tokens[1])

        elif head == Keyword.EXPECT:
            if len(tokens) < 3:
                raise StimulusError("'expect' needs @<cycle> and at least one port=value", number)
            cycle = _parse_cycle(tokens[1], number)
            for port, value in _parse_assignments(tokens[2:], ports, number, drive=False):
                expectations.append((number, Expect(cycle, port, value)))

        elif head.startswith("@"):
            if len(tokens) < 2:
                raise StimulusError("drive needs at least one port=value", number)
            cycle = _parse_cycle(head, number)
            for port, value in _parse_assignments(tokens[1:], ports, number, drive=True):
                drives.append((number, Drive(cycle, port, value)))

        else:
            raise StimulusError(f"unexpected statement {head!r}", number)

    if length is None:
        raise StimulusError("missing 'run' statement", max(len(lines), 1))

    for number, event in drives + expectations:
        if event.cycle >= length:
            raise StimulusError(
                f"cycle {event.cycle} is beyond the run of {length} cycles", number
            )

    program = StimulusProgram.create(
        (drive for _, drive in drives), (expect for _, expect in expectations), length
    )
    logger.debug(
        f"Parsed stimulus: {len(program.drives)} drives, "
        f"{len(program.expectations)} expectations, {program.length} cycles"
    )
    return program


def _parse_cycle(token: str, line: int) -> int:
    if not token.startswith("@") or not _DECIMAL.fullmatch(token[1:]):
        raise StimulusError(f"non-numeric cycle {token!r}", line)
    return int(token[1:])


def _parse_assignments(
    tokens: List[str], ports: Dict[str, PortDecl], line: int, drive: bool
) -> List[Tuple[str, int]]:
    parsed = []
    for token in tokens:
        name, sep, text = token.partition("=")
        if not sep or not name or not text:
            raise StimulusError(f"expected <port>=<value>, got {token!r}", line)
        port = ports.get(name)
        if port is None:
            raise StimulusError(f"unknown port {name!r}", line)
        if drive and port.driven_by_machine:
            raise StimulusError(f"cannot drive {port.direction.value} port {name!r}", line)
        if not drive and not port.driven_by_machine:
            raise StimulusError(f"cannot expect input port {name!r}", line)

        if _BINARY.fullmatch(text):
            value = int(text[2:], 2)
        elif _DECIMAL.fullmatch(text):
            value = int(text)
        else:
            raise StimulusError(f"invalid value {text!r} for {name}", line)
        if value > port.max_value:
            raise StimulusError(f"value {value} exceeds {port.width}-bit port {name!r}", line)
        parsed.append((name, value))
    return parsed


def format_stimulus(program: StimulusProgram) -> str:
    """Render a program as stimulus text that parses back to an equal program."""
    lines = []
    for prefix, events in (("", program.drives), (f"{Keyword.EXPECT} ", program.expectations)):
        grouped: Dict[int, List[str]] = {}
        for event in events:
            grouped.setdefault(event.cycle, []).append(f"{event.port}={event.value}")
        for cycle in sorted(grouped):
            lines.append(f"{prefix}@{cycle} " + " ".join(grouped[cycle]))
    lines.append(f"{Keyword.RUN} {program.length}")
    return "\n".join(lines) + "\n"
