"""Products, prices and inventory."""

from dataclasses import dataclass, replace
from typing import Dict, Iterator, Mapping, Optional, Sequence, Tuple

from ..core.ports import WidthError
from ..errors import VendsimError


NOTE_STEP = 10
MONEY_WIDTH = 7
MONEY_MAX = (1 << MONEY_WIDTH) - 1
DEFAULT_CAPACITY = 4

# Product id -> select port. The order is the canonical catalog order.
SELECT_PORTS: Dict[str, str] = {
    "snacks": "sel1",
    "coffee": "sel2",
    "cold_drink": "sel3",
    "candies": "sel4",
}

DEFAULT_PRICES: Dict[str, int] = {
    "snacks": 30,
    "coffee": 40,
    "cold_drink": 40,
    "candies": 30,
}


class CatalogError(VendsimError):
    """Raised for unknown products or inconsistent prices."""

    pass


class ConfigurationError(VendsimError):
    """Raised when a catalog or capacity cannot drive the controller."""

    pass


@dataclass(frozen=True)
class Product:
    """A product the machine can vend."""

    name: str
    price: int

    def __post_init__(self) -> None:
        if self.name not in SELECT_PORTS:
            raise CatalogError(
                f"Unknown product {self.name!r}; expected one of {', '.join(SELECT_PORTS)}"
            )
        if self.price <= 0:
            raise ConfigurationError(f"Price of {self.name} must be positive, got {self.price}")
        if self.price % NOTE_STEP:
            raise ConfigurationError(
                f"Price of {self.name} ({self.price}) is not a multiple of {NOTE_STEP}; "
                "no sequence of notes reaches it exactly"
            )
        if self.price > MONEY_MAX:
            raise WidthError(f"Price of {self.name} ({self.price}) exceeds the 7-bit limit {MONEY_MAX}")

    @property
    def select_port(self) -> str:
        return SELECT_PORTS[self.name]


class ProductCatalog:
    """Ordered, immutable set of products keyed by name."""

    def __init__(self, products: Sequence[Product]) -> None:
        if not products:
            raise ConfigurationError("Catalog must contain at least one product")
        names = [p.name for p in products]
        if len(set(names)) != len(names):
            raise CatalogError(f"Duplicate products in catalog: {names}")
        order = list(SELECT_PORTS)
        self._products: Tuple[Product, ...] = tuple(sorted(products, key=lambda p: order.index(p.name)))

    @classmethod
    def from_prices(cls, prices: Mapping[str, int]) -> "ProductCatalog":
        return cls([Product(name, price) for name, price in prices.items()])

    @classmethod
    def default(cls) -> "ProductCatalog":
        """The four products at their list prices."""
        return cls.from_prices(DEFAULT_PRICES)

    def get(self, name: str) -> Product:
        for product in self._products:
            if product.name == name:
                return product
        raise CatalogError(f"Product {name!r} is not in the catalog")

    def by_select_port(self, port: str) -> Optional[Product]:
        for product in self._products:
            if product.select_port == port:
                return product
        return None

    def names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self._products)

    def prices(self) -> Dict[str, int]:
        return {p.name: p.price for p in self._products}

    def __iter__(self) -> Iterator[Product]:
        return iter(self._products)

    def __len__(self) -> int:
        return len(self._products)

    def __contains__(self, name: object) -> bool:
        return any(p.name == name for p in self._products)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ProductCatalog) and self._products == other._products

    def __repr__(self) -> str:
        return f"ProductCatalog({self.prices()})"


@dataclass(frozen=True)
class Inventory:
    """Stock per product, bounded by a shared capacity."""

    counts: Tuple[Tuple[str, int], ...]
    capacity: int = DEFAULT_CAPACITY

    def __post_init__(self) -> None:
        if self.capacity < 1:
            raise ConfigurationError(f"Inventory capacity must be at least 1, got {self.capacity}")
        for name, count in self.counts:
            if not 0 <= count <= self.capacity:
                raise ConfigurationError(
                    f"Stock of {name} ({count}) outside 0..{self.capacity}"
                )

    @classmethod
    def full(cls, catalog: ProductCatalog, capacity: int = DEFAULT_CAPACITY) -> "Inventory":
        return cls(tuple((name, capacity) for name in catalog.names()), capacity)

    def count(self, name: str) -> int:
        for product, count in self.counts:
            if product == name:
                return count
        raise CatalogError(f"Product {name!r} is not stocked")

    def dispense(self, name: str) -> "Inventory":
        """One unit of name fewer."""
        if self.count(name) == 0:
            raise CatalogError(f"No {name} left to dispense")
        return replace(
            self,
            counts=tuple((p, c - 1 if p == name else c) for p, c in self.counts),
        )

    def refill(self) -> "Inventory":
        """Every product back to capacity."""
        return replace(self, counts=tuple((p, self.capacity) for p, _ in self.counts))

    def as_dict(self) -> Dict[str, int]:
        return dict(self.counts)


def availability(inventory: Inventory, product: Product) -> bool:
    """True if at least one unit of product is in stock."""
    return inventory.count(product.name) > 0
