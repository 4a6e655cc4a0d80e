"""Rendered bills and their serialization."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Tuple

from .ledger import BillLedger


DEFAULT_CURRENCY = "INR"


@dataclass(frozen=True)
class LineItem:
    name: str
    unit_price: int
    quantity: int
    subtotal: int


@dataclass(frozen=True)
class BillDocument:
    """A bill: one line per product bought, in catalog order, and the total."""

    items: Tuple[LineItem, ...]
    total: int
    currency: str = DEFAULT_CURRENCY

    def as_dict(self) -> Dict[str, Any]:
        return {
            "currency": self.currency,
            "items": [
                {
                    "name": item.name,
                    "unit_price": item.unit_price,
                    "quantity": item.quantity,
                    "subtotal": item.subtotal,
                }
                for item in self.items
            ],
            "total": self.total,
        }

    def to_json(self) -> str:
        """Machine-readable form with a fixed field order."""
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        """Human-readable form, one line per item and a TOTAL line."""
        lines = [
            f"{item.name:<12} {item.quantity:>3} x {item.unit_price:>4} = {item.subtotal:>5} {self.currency}"
            for item in self.items
        ]
        lines.append(f"{'TOTAL':<23} {self.total:>5} {self.currency}")
        return "\n".join(lines) + "\n"


def render_bill(ledger: BillLedger, currency: str = DEFAULT_CURRENCY) -> BillDocument:
    """Render the ledger; products not bought are left out."""
    items = tuple(
        LineItem(name, price, ledger.quantities.get(name, 0), ledger.subtotal(name))
        for name, price in ledger.unit_prices.items()
        if ledger.quantities.get(name, 0) > 0
    )
    return BillDocument(items=items, total=sum(item.subtotal for item in items), currency=currency)


def save_bill(document: BillDocument, path: str) -> None:
    """Write the JSON form of a bill to disk."""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8") as f:
        f.write(document.to_json())


def load_bill(path: str) -> BillDocument:
    """Read a bill written by save_bill."""
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    items = tuple(LineItem(**item) for item in raw["items"])
    return BillDocument(items=items, total=raw["total"], currency=raw["currency"])
