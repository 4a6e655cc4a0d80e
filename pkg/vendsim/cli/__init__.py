"""Command-line interface."""

from .handlers import CommandHandler
from .main import main
from .protocol import CommandError, ParsedCommand, parse_command
from .repl import ReplSession

__all__ = [
    "CommandError",
    "CommandHandler",
    "ParsedCommand",
    "ReplSession",
    "main",
    "parse_command",
]
