"""Interactive session loop over text streams."""

import logging
from typing import Optional, TextIO

from ..controller import ControllerConfig
from .handlers import CommandHandler
from .protocol import CommandError, format_error, parse_command


logger = logging.getLogger(__name__)

PROMPT = "vendsim> "


class ReplSession:
    """Reads commands line by line and writes one response per command.

    Single-threaded; the session ends on ``quit`` or end of input.
    """

    def __init__(self, config: Optional[ControllerConfig] = None) -> None:
        self._handler = CommandHandler(config or ControllerConfig())

    @property
    def handler(self) -> CommandHandler:
        return self._handler

    def run(self, reader: TextIO, writer: TextIO) -> int:
        """Serve commands until quit or end of input; returns the exit status."""
        interactive = reader.isatty()
        logger.info("Session started")

        while not self._handler.finished:
            if interactive:
                writer.write(PROMPT)
                writer.flush()
            line = reader.readline()
            if not line:
                break  # end of input

            line = line.split("#", 1)[0].strip()
            if not line:
                continue

            try:
                response = self._handler.handle(parse_command(line))
            except CommandError as e:
                response = format_error(str(e))

            writer.write(response)
            writer.flush()

        logger.info(f"Session ended after {self._handler.kernel.cycle} cycles")
        return 0
