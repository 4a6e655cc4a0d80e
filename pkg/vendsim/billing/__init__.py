"""Auto-billing for the vending controller."""

from .ledger import BillingRecorder, BillLedger, MoneyFlow, ledger_from_trace, reconcile
from .document import BillDocument, LineItem, load_bill, render_bill, save_bill

__all__ = [
    "BillDocument",
    "BillLedger",
    "BillingRecorder",
    "LineItem",
    "MoneyFlow",
    "ledger_from_trace",
    "load_bill",
    "reconcile",
    "render_bill",
    "save_bill",
]
