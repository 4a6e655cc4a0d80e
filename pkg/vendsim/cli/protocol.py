"""Line protocol of the interactive controller session."""

from dataclasses import dataclass
from typing import List, Mapping

from ..errors import VendsimError


class Command:
    """Command type constants."""

    SELECT = "select"
    INSERT = "insert"
    CANCEL = "cancel"
    SERVICE = "service"
    TICK = "tick"
    STATE = "state"
    REGS = "regs"
    BILL = "bill"
    RESET = "reset"
    QUIT = "quit"


# Number of arguments each command takes: (minimum, maximum).
_ARITY = {
    Command.SELECT: (1, 1),
    Command.INSERT: (1, 1),
    Command.CANCEL: (0, 0),
    Command.SERVICE: (0, 0),
    Command.TICK: (0, 1),
    Command.STATE: (0, 0),
    Command.REGS: (0, 0),
    Command.BILL: (0, 0),
    Command.RESET: (0, 0),
    Command.QUIT: (0, 0),
}

NOTE_ARGUMENTS = {"10": "rs_10", "20": "rs_20"}


@dataclass
class ParsedCommand:
    """Represents a parsed session command."""

    cmd: str
    args: List[str]


class CommandError(VendsimError):
    """Raised when a session command cannot be parsed."""

    pass


def parse_command(line: str) -> ParsedCommand:
    """Parse one session line.

    Format:
        select <product>
        insert 10|20
        tick [n]
        cancel | service | state | regs | bill | reset | quit
    """
    parts = line.split()
    if not parts:
        raise CommandError("Empty command")

    cmd = parts[0].lower()
    if cmd not in _ARITY:
        raise CommandError(f"Unknown command: {parts[0]}")

    args = parts[1:]
    low, high = _ARITY[cmd]
    if not low <= len(args) <= high:
        if low == high == 0:
            raise CommandError(f"{cmd} takes no argument")
        raise CommandError(f"{cmd} takes {low if low == high else f'{low} to {high}'} argument(s)")

    if cmd == Command.INSERT and args[0] not in NOTE_ARGUMENTS:
        raise CommandError(f"insert takes 10 or 20, got {args[0]}")
    if cmd == Command.TICK and args and (not args[0].isdigit() or int(args[0]) < 1):
        raise CommandError(f"tick takes a positive cycle count, got {args[0]}")

    return ParsedCommand(cmd=cmd, args=args)


def format_state(state: object, outputs: Mapping[str, int]) -> str:
    """Format the state line shown after every command."""
    values = " ".join(f"{name}={value}" for name, value in outputs.items())
    return f"STATE {state} {values}".rstrip() + "\n"


def format_dispense(product: str, change: int) -> str:
    return f"DISPENSE {product} change={change}\n"


def format_return(amount: int) -> str:
    return f"RETURN {amount}\n"


def format_service() -> str:
    return "SERVICE requested\n"


def format_error(reason: str) -> str:
    """Format an error response."""
    return f"ERR {reason}\n"


def format_bye() -> str:
    return "BYE\n"
