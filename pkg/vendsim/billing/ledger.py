"""Session ledger of dispensed products."""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from ..controller.catalog import CatalogError, Product, ProductCatalog
from ..controller.machine import ControllerState, Phase, taken_note
from ..core.trace import Trace, TraceRecord


logger = logging.getLogger(__name__)


@dataclass
class BillLedger:
    """Dispensed quantities of one session, priced at the session's start."""

    unit_prices: Dict[str, int]
    quantities: Dict[str, int] = field(default_factory=dict)
    session_start: int = 0

    @classmethod
    def open(cls, catalog: ProductCatalog, session_start: int = 0) -> "BillLedger":
        """Start a session with a snapshot of the catalog's prices."""
        return cls(
            unit_prices=catalog.prices(),
            quantities={name: 0 for name in catalog.names()},
            session_start=session_start,
        )

    def record_dispense(self, product: Product) -> "BillLedger":
        """Count one more unit of product."""
        if product.name not in self.unit_prices:
            raise CatalogError(f"Product {product.name!r} is not in this session's catalog")
        if product.price != self.unit_prices[product.name]:
            raise CatalogError(
                f"Price of {product.name} changed mid-session "
                f"({self.unit_prices[product.name]} -> {product.price})"
            )
        self.quantities[product.name] += 1
        return self

    def subtotal(self, name: str) -> int:
        return self.quantities.get(name, 0) * self.unit_prices[name]

    @property
    def total(self) -> int:
        return sum(self.subtotal(name) for name in self.unit_prices)


class BillingRecorder:
    """Follows controller cycles and keeps the ledger of the current session.

    A reset cycle closes the session and opens a new one, as the money
    register is cleared by the same reset.
    """

    def __init__(self, catalog: ProductCatalog) -> None:
        self._catalog = catalog
        self.ledger = BillLedger.open(catalog)
        self.closed: List[BillLedger] = []

    def observe(self, record: TraceRecord) -> None:
        """Account for one cycle of the controller."""
        if record.inputs.get("reset", 0):
            self.closed.append(self.ledger)
            self.ledger = BillLedger.open(self._catalog, session_start=record.cycle + 1)
            logger.debug(f"Billing session restarted at cycle {record.cycle + 1}")
            return
        state: ControllerState = record.state
        if record.outputs.get("product") and state.phase is Phase.VEND:
            self.ledger.record_dispense(self._catalog.get(state.product))

    def observe_trace(self, trace: Trace) -> BillLedger:
        for record in trace:
            self.observe(record)
        return self.ledger


def ledger_from_trace(trace: Trace, catalog: ProductCatalog) -> BillLedger:
    """The ledger of the session that is open at the end of the trace."""
    return BillingRecorder(catalog).observe_trace(trace)


@dataclass(frozen=True)
class MoneyFlow:
    """Where the money taken in during a trace went."""

    taken_in: int
    dispensed: int
    change: int
    returned: int
    held: int

    @property
    def balanced(self) -> bool:
        """Notes taken in equal prices plus change plus returns plus money still held."""
        return self.taken_in == self.dispensed + self.change + self.returned + self.held


def reconcile(trace: Trace, catalog: ProductCatalog, since: Optional[int] = None) -> MoneyFlow:
    """Add up the money flow of a controller trace from cycle ``since`` on.

    The held amount is read from the controller registers after the last
    cycle. Reset discards held money without refund, so flows across a reset
    cycle do not balance; ``since`` lets callers start after one.
    """
    taken_in = dispensed = change = returned = 0
    for record in trace.records[since or 0:]:
        taken_in += taken_note(record.state, record.inputs)
        if record.outputs["product"]:
            dispensed += catalog.get(record.state.product).price
        change += record.outputs["change"]
        returned += record.outputs["return"]
    held = trace.final_data.money_count if trace.final_data is not None else 0
    return MoneyFlow(taken_in, dispensed, change, returned, held)
