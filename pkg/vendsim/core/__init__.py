"""Generic synchronous FSM kernel."""

from .ports import ContractError, Direction, PortDecl, SignalValue, WidthError
from .guards import Arc, CaseTable, Guard
from .machine import (
    Evaluation,
    KindError,
    MachineDefinition,
    MachineError,
    MachineKind,
)
from .trace import ExpectationResult, Trace, TraceRecord
from .kernel import (
    ExpectationError,
    KernelState,
    moore_output,
    new_kernel,
    run,
    step,
)

__all__ = [
    "Arc",
    "CaseTable",
    "ContractError",
    "Direction",
    "Evaluation",
    "ExpectationError",
    "ExpectationResult",
    "Guard",
    "KernelState",
    "KindError",
    "MachineDefinition",
    "MachineError",
    "MachineKind",
    "PortDecl",
    "SignalValue",
    "Trace",
    "TraceRecord",
    "WidthError",
    "moore_output",
    "new_kernel",
    "run",
    "step",
]
