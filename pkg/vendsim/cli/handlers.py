"""Command handlers for the interactive controller session."""

import logging
from typing import Dict

from ..billing import BillingRecorder, render_bill
from ..controller import SERVICE, ControllerConfig, build_controller
from ..core.kernel import KernelState, new_kernel, step
from ..core.ports import Assignment
from ..errors import VendsimError
from .protocol import (
    NOTE_ARGUMENTS,
    Command,
    ParsedCommand,
    format_bye,
    format_dispense,
    format_error,
    format_return,
    format_service,
    format_state,
)


logger = logging.getLogger(__name__)


class CommandHandler:
    """Drives one controller from session commands.

    Every stepping command holds its port high for one cycle, then keeps
    clocking with all inputs released while the controller sits in a
    single-cycle state, so that one command shows the event it causes.
    """

    def __init__(self, config: ControllerConfig) -> None:
        self._config = config
        self._machine = build_controller(config.catalog, config.capacity)
        self._kernel: KernelState = new_kernel(self._machine)
        self._recorder = BillingRecorder(config.catalog)
        self._last_outputs: Assignment = {}
        self.finished = False

    @property
    def kernel(self) -> KernelState:
        return self._kernel

    def handle(self, cmd: ParsedCommand) -> str:
        """Handle a parsed command and return the response string."""
        logger.debug(f"Session command: {cmd.cmd} {' '.join(cmd.args)}")
        try:
            if cmd.cmd == Command.SELECT:
                port = self._config.catalog.get(cmd.args[0]).select_port
                return self._pulse({port: 1})
            elif cmd.cmd == Command.INSERT:
                return self._pulse({NOTE_ARGUMENTS[cmd.args[0]]: 1})
            elif cmd.cmd == Command.CANCEL:
                return self._pulse({"cancel": 1})
            elif cmd.cmd == Command.SERVICE:
                return self._pulse({"serviced": 1})
            elif cmd.cmd == Command.RESET:
                return self._pulse({"reset": 1})
            elif cmd.cmd == Command.TICK:
                return self._handle_tick(int(cmd.args[0]) if cmd.args else 1)
            elif cmd.cmd == Command.STATE:
                return format_state(self._kernel.current, {})
            elif cmd.cmd == Command.REGS:
                return self._handle_regs()
            elif cmd.cmd == Command.BILL:
                return render_bill(self._recorder.ledger, self._config.currency).to_text()
            elif cmd.cmd == Command.QUIT:
                self.finished = True
                return format_bye()
            else:
                return format_error(f"Unknown command: {cmd.cmd}")
        except VendsimError as e:
            return format_error(str(e))

    def _handle_tick(self, cycles: int) -> str:
        events = "".join(self._cycle(self._machine.zero_inputs()) for _ in range(cycles))
        return events + format_state(self._kernel.current, self._last_outputs)

    def _handle_regs(self) -> str:
        regs = self._kernel.data
        stock = " ".join(f"{name}={count}" for name, count in regs.inventory.as_dict().items())
        return f"REGS money_count={regs.money_count} money={regs.money} {stock}\n"

    def _pulse(self, driven: Dict[str, int]) -> str:
        inputs = self._machine.zero_inputs()
        inputs.update(driven)
        events = self._cycle(inputs)
        while self._kernel.current.transient:
            events += self._cycle(self._machine.zero_inputs())
        return events + format_state(self._kernel.current, self._last_outputs)

    def _cycle(self, inputs: Assignment) -> str:
        before = self._kernel.current
        _, outputs = step(self._machine, self._kernel, inputs)
        self._recorder.observe(self._kernel.trace.records[-1])
        self._last_outputs = outputs

        events = ""
        if outputs["product"]:
            events += format_dispense(before.product, outputs["change"])
        if outputs["return"]:
            events += format_return(outputs["return"])
        if self._kernel.current == SERVICE and before != SERVICE:
            events += format_service()
        return events
