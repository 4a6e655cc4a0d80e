"""The vending-machine controller.

Four products are selected with one-hot ``sel1..sel4``, paid for with 10 and
20 rupee notes (``rs_10``, ``rs_20``), dispensed with change, refunded on
``cancel`` and restocked from the service state on ``serviced``.

Per cycle the controller moves through::

    initialize -> select(p) -> waiting(p) -> state_1(p) | state_2(p) -> ... -> vend(p)
                         \\-> service                \\-> cancel

A note sampled in ``waiting(p)`` is added to ``money_count`` at the edge into
``state_1(p)``/``state_2(p)``, which then compare the total against the price.
``vend``, ``cancel`` and ``select`` last exactly one cycle.
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, Mapping, NamedTuple, Optional, Tuple

from ..core.guards import CaseTable
from ..core.machine import Evaluation, MachineDefinition, MachineKind
from ..core.ports import ContractError, Direction, PortDecl, WidthError
from .catalog import (
    DEFAULT_CAPACITY,
    MONEY_MAX,
    MONEY_WIDTH,
    SELECT_PORTS,
    ConfigurationError,
    Inventory,
    Product,
    ProductCatalog,
    availability,
)


logger = logging.getLogger(__name__)

MACHINE_NAME = "vending"

NOTES = {"rs_10": 10, "rs_20": 20}

CONTROLLER_PORTS: Tuple[PortDecl, ...] = (
    PortDecl("reset", 1, Direction.INPUT),
    PortDecl("sel1", 1, Direction.INPUT),
    PortDecl("sel2", 1, Direction.INPUT),
    PortDecl("sel3", 1, Direction.INPUT),
    PortDecl("sel4", 1, Direction.INPUT),
    PortDecl("cancel", 1, Direction.INPUT),
    PortDecl("money", MONEY_WIDTH, Direction.INOUT),
    PortDecl("rs_10", 1, Direction.INPUT),
    PortDecl("rs_20", 1, Direction.INPUT),
    PortDecl("product", 1, Direction.OUTPUT),
    PortDecl("change", MONEY_WIDTH, Direction.OUTPUT),
    PortDecl("return", MONEY_WIDTH, Direction.OUTPUT),
    PortDecl("serviced", 1, Direction.INPUT),
    PortDecl("service_request", 1, Direction.OUTPUT),
)


class Phase(Enum):
    INITIALIZE = "initialize"
    SELECT = "select"
    WAITING = "waiting"
    STATE1 = "state_1"
    STATE2 = "state_2"
    VEND = "vend"
    SERVICE = "service"
    CANCEL = "cancel"


PRODUCT_PHASES = (Phase.SELECT, Phase.WAITING, Phase.STATE1, Phase.STATE2, Phase.VEND)

# Phases that last a single cycle before the controller moves on by itself.
TRANSIENT_PHASES = frozenset({Phase.SELECT, Phase.STATE1, Phase.STATE2, Phase.VEND, Phase.CANCEL})


@dataclass(frozen=True)
class ControllerState:
    """Control state; product-indexed phases carry the selected product."""

    phase: Phase
    product: Optional[str] = None

    def __post_init__(self) -> None:
        indexed = self.phase in PRODUCT_PHASES
        if indexed and self.product is None:
            raise ContractError(f"{self.phase.value} needs a product")
        if not indexed and self.product is not None:
            raise ContractError(f"{self.phase.value} is not product-indexed")

    @property
    def transient(self) -> bool:
        return self.phase in TRANSIENT_PHASES

    def __str__(self) -> str:
        if self.product is None:
            return self.phase.value
        return f"{self.phase.value}({self.product})"


INITIALIZE = ControllerState(Phase.INITIALIZE)
SERVICE = ControllerState(Phase.SERVICE)
CANCEL = ControllerState(Phase.CANCEL)


@dataclass(frozen=True)
class ControllerRegisters:
    """The controller's datapath registers."""

    inventory: Inventory
    money_count: int = 0
    money: int = 0

    def __post_init__(self) -> None:
        for name in ("money_count", "money"):
            value = getattr(self, name)
            if not 0 <= value <= MONEY_MAX:
                raise WidthError(f"{name}={value} does not fit {MONEY_WIDTH} bits")


@dataclass(frozen=True)
class ControllerOutputs:
    """Output ports of one cycle."""

    product: int = 0
    change: int = 0
    return_out: int = 0
    service_request: int = 0
    money: int = 0

    def assignment(self) -> Dict[str, int]:
        return {
            "money": self.money,
            "product": self.product,
            "change": self.change,
            "return": self.return_out,
            "service_request": self.service_request,
        }


class Accumulation(NamedTuple):
    """New money_count and the note bounced back, if it did not fit."""

    money_count: int
    rejected: int = 0


def accumulate(money_count: int, note: int) -> Accumulation:
    """Add a note to money_count, rejecting it if the total would pass 127."""
    if not 0 <= money_count <= MONEY_MAX:
        raise ContractError(f"money_count {money_count} outside 0..{MONEY_MAX}")
    if note not in NOTES.values():
        raise ContractError(f"Unsupported note: {note}")
    total = money_count + note
    if total > MONEY_MAX:
        return Accumulation(money_count, note)
    return Accumulation(total)


def compute_change(money_count: int, price: int) -> int:
    """Money held beyond the price."""
    if money_count < price:
        raise ContractError(f"money_count {money_count} is below price {price}")
    return money_count - price


def note_value(inputs: Mapping[str, int]) -> int:
    """Value of the note presented this cycle; 0 unless exactly one note line is high."""
    raised = [value for port, value in NOTES.items() if inputs.get(port, 0)]
    return raised[0] if len(raised) == 1 else 0


def selected_product(catalog: ProductCatalog, inputs: Mapping[str, int]) -> Optional[Product]:
    """Product whose select line is the only one high, if it is in the catalog."""
    high = [port for port in SELECT_PORTS.values() if inputs.get(port, 0)]
    if len(high) != 1:
        return None
    return catalog.by_select_port(high[0])


def taken_note(state: ControllerState, inputs: Mapping[str, int]) -> int:
    """Value of the note the controller takes in this cycle (0 if none).

    Notes are sampled in initialize (and echoed straight back) and in waiting
    unless cancel is pressed. Reset cycles take nothing.
    """
    if inputs.get("reset", 0):
        return 0
    if state.phase is Phase.INITIALIZE:
        return note_value(inputs)
    if state.phase is Phase.WAITING and not inputs.get("cancel", 0):
        return note_value(inputs)
    return 0


def controller_step(
    catalog: ProductCatalog,
    state: ControllerState,
    regs: ControllerRegisters,
    inputs: Mapping[str, int],
) -> Tuple[ControllerState, ControllerRegisters, ControllerOutputs]:
    """Evaluate one cycle of the controller (reset is applied by the kernel)."""
    phase = state.phase
    cancel = bool(inputs.get("cancel", 0))

    if phase is Phase.INITIALIZE:
        product = selected_product(catalog, inputs)
        nxt = ControllerState(Phase.SELECT, product.name) if product else INITIALIZE
        regs = replace(regs, money_count=0)
        return nxt, regs, ControllerOutputs(return_out=note_value(inputs), money=regs.money)

    if phase is Phase.SELECT:
        product = catalog.get(state.product)
        if availability(regs.inventory, product):
            nxt = ControllerState(Phase.WAITING, product.name)
        else:
            nxt = SERVICE
        return nxt, regs, ControllerOutputs(money=regs.money)

    if phase is Phase.WAITING:
        note = note_value(inputs)
        if cancel:
            return CANCEL, regs, ControllerOutputs(money=regs.money)
        if not note:
            return state, regs, ControllerOutputs(money=regs.money)
        total, rejected = accumulate(regs.money_count, note)
        if rejected:
            logger.debug(f"Rejected note {rejected}: money_count {regs.money_count} is near the limit")
            return state, regs, ControllerOutputs(return_out=rejected, money=regs.money)
        target = Phase.STATE1 if note == NOTES["rs_10"] else Phase.STATE2
        regs = replace(regs, money_count=total)
        return ControllerState(target, state.product), regs, ControllerOutputs(money=regs.money)

    if phase in (Phase.STATE1, Phase.STATE2):
        price = catalog.get(state.product).price
        if cancel:
            nxt = CANCEL
        elif regs.money_count >= price:
            nxt = ControllerState(Phase.VEND, state.product)
        else:
            nxt = ControllerState(Phase.WAITING, state.product)
        return nxt, regs, ControllerOutputs(money=regs.money)

    if phase is Phase.VEND:
        price = catalog.get(state.product).price
        change = compute_change(regs.money_count, price)
        regs = ControllerRegisters(
            inventory=regs.inventory.dispense(state.product),
            money_count=0,
            money=min(MONEY_MAX, regs.money + price),
        )
        return INITIALIZE, regs, ControllerOutputs(product=1, change=change, money=regs.money)

    if phase is Phase.CANCEL:
        refund = regs.money_count
        regs = replace(regs, money_count=0)
        return INITIALIZE, regs, ControllerOutputs(return_out=refund, money=regs.money)

    # Phase.SERVICE
    if inputs.get("serviced", 0):
        regs = replace(regs, inventory=regs.inventory.refill())
        return INITIALIZE, regs, ControllerOutputs(service_request=1, money=regs.money)
    return SERVICE, regs, ControllerOutputs(service_request=1, money=regs.money)


def controller_states(catalog: ProductCatalog) -> Tuple[ControllerState, ...]:
    """Canonical state order: initialize, product-major phases, service, cancel."""
    states = [INITIALIZE]
    for product in catalog:
        states.extend(ControllerState(phase, product.name) for phase in PRODUCT_PHASES)
    states.extend([SERVICE, CANCEL])
    return tuple(states)


def _one_hot(port: str) -> str:
    return " & ".join(p if p == port else f"!{p}" for p in SELECT_PORTS.values())


def controller_cases(catalog: ProductCatalog) -> CaseTable:
    """The decoder of controller_step written as guarded arcs."""
    cases = CaseTable()
    for product in catalog:
        cases.when(INITIALIZE, _one_hot(product.select_port), ControllerState(Phase.SELECT, product.name))
    cases.otherwise(INITIALIZE, INITIALIZE)

    for product in catalog:
        name = product.name
        select, waiting, state_1, state_2, vend = (
            ControllerState(phase, name) for phase in PRODUCT_PHASES
        )
        cases.when(select, "", waiting, condition=f"{name}_count > 0")
        cases.otherwise(select, SERVICE)

        cases.when(waiting, "cancel", CANCEL)
        for port, note, target in (("rs_10", 10, state_1), ("rs_20", 20, state_2)):
            other = "rs_20" if port == "rs_10" else "rs_10"
            cases.when(waiting, f"{port} & !{other}", target, condition=f"money_count+{note} <= {MONEY_MAX}")
            cases.when(waiting, f"{port} & !{other}", waiting, condition=f"money_count+{note} > {MONEY_MAX}")
        cases.otherwise(waiting, waiting)

        for accumulating in (state_1, state_2):
            cases.when(accumulating, "cancel", CANCEL)
            cases.when(accumulating, "", vend, condition=f"money_count >= {product.price}")
            cases.otherwise(accumulating, waiting)

        cases.otherwise(vend, INITIALIZE)

    cases.when(SERVICE, "serviced", INITIALIZE)
    cases.otherwise(SERVICE, SERVICE)
    cases.otherwise(CANCEL, INITIALIZE)
    return cases


def build_controller(
    catalog: Optional[ProductCatalog] = None, capacity: int = DEFAULT_CAPACITY
) -> MachineDefinition:
    """Build the vending controller as a Mealy machine with a datapath."""
    catalog = catalog or ProductCatalog.default()
    if capacity < 1:
        raise ConfigurationError(f"Capacity must be at least 1, got {capacity}")

    def evaluate(state: ControllerState, regs: ControllerRegisters, inputs: Mapping[str, int]) -> Evaluation:
        nxt, regs, outputs = controller_step(catalog, state, regs, inputs)
        return Evaluation(nxt, regs, outputs.assignment())

    def reset_data(regs: ControllerRegisters) -> ControllerRegisters:
        # Registers clear; stock on the shelves stays where it is.
        return ControllerRegisters(inventory=regs.inventory)

    machine = MachineDefinition(
        name=MACHINE_NAME,
        kind=MachineKind.MEALY,
        states=controller_states(catalog),
        initial=INITIALIZE,
        ports=CONTROLLER_PORTS,
        evaluate=evaluate,
        data=ControllerRegisters(inventory=Inventory.full(catalog, capacity)),
        reset_data=reset_data,
        cases=controller_cases(catalog),
        reset_port="reset",
    )
    logger.debug(f"Built controller with {len(machine.states)} states for {catalog}")
    return machine
