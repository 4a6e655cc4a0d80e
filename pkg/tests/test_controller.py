"""Tests for the vending controller."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from vendsim.controller import (
    CANCEL,
    INITIALIZE,
    SERVICE,
    CatalogError,
    ConfigurationError,
    ControllerRegisters,
    ControllerState,
    Inventory,
    Phase,
    Product,
    ProductCatalog,
    accumulate,
    build_controller,
    compute_change,
    controller_step,
    taken_note,
)
from vendsim.billing import reconcile
from vendsim.core import ContractError, WidthError, new_kernel, run, step
from vendsim.stimulus import parse_stimulus

from helpers import SYMBOLS, symbol_inputs


SWEEP_DEPTH = 6
LONG_RUN = 10_000


def pulse(machine, kernel, **ports):
    """Step one cycle with the named inputs high."""
    inputs = machine.zero_inputs()
    inputs.update(ports)
    return step(machine, kernel, inputs)[1]


def settle(machine, kernel):
    """Step with released inputs until the state is not single-cycle."""
    outputs = []
    while kernel.current.transient:
        outputs.append(step(machine, kernel, machine.zero_inputs())[1])
    return outputs


def buy(machine, kernel, select, notes):
    """Select a product and pay with the given notes; returns every output seen."""
    seen = [pulse(machine, kernel, **{select: 1})] + settle(machine, kernel)
    for note in notes:
        seen.append(pulse(machine, kernel, **{f"rs_{note}": 1}))
        seen.extend(settle(machine, kernel))
    return seen


class TestCatalog:
    """Tests for products and catalogs."""

    def test_default_prices(self, catalog):
        """Test the four list prices in canonical order."""
        assert catalog.prices() == {"snacks": 30, "coffee": 40, "cold_drink": 40, "candies": 30}

    def test_price_not_multiple_of_ten(self):
        """Test that a price unreachable with notes is rejected."""
        with pytest.raises(ConfigurationError):
            Product("snacks", 35)

    def test_price_above_seven_bits(self):
        """Test that a price above 127 is rejected."""
        with pytest.raises(WidthError):
            Product("snacks", 130)

    def test_unknown_product(self):
        """Test that only the four known products exist."""
        with pytest.raises(CatalogError):
            Product("tea", 30)

    def test_catalog_order_is_canonical(self):
        """Test that products are kept in select-port order."""
        catalog = ProductCatalog([Product("candies", 30), Product("snacks", 30)])
        assert catalog.names() == ("snacks", "candies")
        assert catalog.by_select_port("sel4").name == "candies"
        assert catalog.by_select_port("sel2") is None

    def test_inventory_dispense_and_refill(self, catalog):
        """Test that dispensing decrements and refill restores capacity."""
        inventory = Inventory.full(catalog).dispense("coffee").dispense("coffee")
        assert inventory.count("coffee") == 2
        assert inventory.refill().count("coffee") == 4

    def test_capacity_must_be_positive(self, catalog):
        """Test that a controller needs room for at least one unit."""
        with pytest.raises(ConfigurationError):
            build_controller(catalog, capacity=0)


class TestArithmetic:
    """Tests for the money datapath."""

    def test_accumulate(self):
        """Test that notes add up."""
        assert accumulate(10, 20) == (30, 0)

    def test_accumulate_rejects_overflow(self):
        """Test that a note pushing past 127 is bounced."""
        assert accumulate(110, 20) == (110, 20)
        assert accumulate(117, 10) == (127, 0)
        assert accumulate(118, 10) == (118, 10)

    def test_accumulate_contract(self):
        """Test that only 10 and 20 notes are accepted."""
        with pytest.raises(ContractError):
            accumulate(0, 50)

    def test_compute_change(self):
        """Test change for exact and over payment."""
        assert compute_change(30, 30) == 0
        assert compute_change(40, 30) == 10

    def test_compute_change_below_price(self):
        """Test that change below the price is a contract violation."""
        with pytest.raises(ContractError):
            compute_change(20, 30)


class TestStates:
    """Tests for the state set."""

    def test_full_catalog_has_23_states(self, controller):
        """Test 1 + 4 * 5 + 2 states for four products."""
        assert len(controller.states) == 23
        assert controller.states[0] == INITIALIZE
        assert str(controller.states[1]) == "select(snacks)"
        assert controller.states[-2:] == (SERVICE, CANCEL)

    def test_single_product_has_8_states(self):
        """Test 1 + 5 + 2 states for one product."""
        machine = build_controller(ProductCatalog.from_prices({"coffee": 40}))
        assert len(machine.states) == 8

    def test_all_ports_declared(self, controller):
        """Test the port list and total width."""
        names = [p.name for p in controller.ports]
        assert names[:5] == ["reset", "sel1", "sel2", "sel3", "sel4"]
        assert sum(p.width for p in controller.ports) == 32


class TestPurchase:
    """Tests for buying products."""

    def test_snacks_with_10_then_20(self, controller, scenario_text):
        """Test the scripted purchase: one product pulse, no change."""
        trace = run(controller, parse_stimulus(scenario_text("purchase.stim"), controller))
        assert trace.values("product") == [0, 0, 0, 0, 0, 0, 1, 0]
        assert trace[6].outputs["change"] == 0
        assert trace[6].outputs["money"] == 30
        assert trace.final_state == INITIALIZE

    def test_state_sequence(self, controller, scenario_text):
        """Test the state held in each cycle of the scripted purchase."""
        trace = run(controller, parse_stimulus(scenario_text("purchase.stim"), controller))
        assert [str(s) for s in trace.states()] == [
            "initialize",
            "select(snacks)",
            "waiting(snacks)",
            "state_1(snacks)",
            "waiting(snacks)",
            "state_2(snacks)",
            "vend(snacks)",
            "initialize",
        ]

    def test_overpayment_gives_change(self, controller):
        """Test coffee (40) paid with 20, 10, 20 returns 10."""
        kernel = new_kernel(controller)
        seen = buy(controller, kernel, "sel2", [20, 10, 20])
        dispensed = [o for o in seen if o["product"]]
        assert len(dispensed) == 1
        assert dispensed[0]["change"] == 10
        assert kernel.data.inventory.count("coffee") == 3

    def test_money_register_accumulates(self, controller):
        """Test that money sums the prices of every sale."""
        kernel = new_kernel(controller)
        buy(controller, kernel, "sel1", [20, 10])
        buy(controller, kernel, "sel3", [20, 20])
        assert kernel.data.money == 70

    def test_money_register_saturates(self):
        """Test that money stays at 127 after enough sales."""
        machine = build_controller(ProductCatalog.from_prices({"snacks": 120}), capacity=4)
        kernel = new_kernel(machine)
        for _ in range(2):
            buy(machine, kernel, "sel1", [20] * 6)
        assert kernel.data.money == 127

    def test_notes_outside_waiting_are_ignored(self, controller):
        """Test that a note in a single-cycle state is not counted."""
        kernel = new_kernel(controller)
        pulse(controller, kernel, sel1=1)
        outputs = pulse(controller, kernel, rs_20=1)
        assert outputs["return"] == 0
        assert kernel.current == ControllerState(Phase.WAITING, "snacks")
        assert kernel.data.money_count == 0

    def test_note_in_initialize_is_returned(self, controller):
        """Test that a note before any selection comes straight back."""
        kernel = new_kernel(controller)
        assert pulse(controller, kernel, rs_10=1)["return"] == 10
        assert kernel.current == INITIALIZE

    def test_two_notes_at_once_are_ignored(self, controller):
        """Test that rs_10 and rs_20 together do nothing in waiting."""
        kernel = new_kernel(controller)
        buy(controller, kernel, "sel1", [])
        outputs = pulse(controller, kernel, rs_10=1, rs_20=1)
        assert outputs["return"] == 0
        assert kernel.current == ControllerState(Phase.WAITING, "snacks")

    def test_select_of_absent_product_is_ignored(self):
        """Test that selecting a product outside the catalog keeps initialize."""
        machine = build_controller(ProductCatalog.from_prices({"snacks": 30}))
        kernel = new_kernel(machine)
        pulse(machine, kernel, sel2=1)
        assert kernel.current == INITIALIZE

    def test_two_selects_are_ignored(self, controller):
        """Test that a select that is not one-hot keeps initialize."""
        kernel = new_kernel(controller)
        pulse(controller, kernel, sel1=1, sel2=1)
        assert kernel.current == INITIALIZE


class TestCancel:
    """Tests for cancelling a purchase."""

    def test_cancel_returns_held_money(self, controller, scenario_text):
        """Test the scripted cancel: return 10, nothing dispensed."""
        trace = run(controller, parse_stimulus(scenario_text("cancel.stim"), controller))
        assert trace[5].outputs["return"] == 10
        assert set(trace.values("product")) == {0}
        assert trace.final_data.money_count == 0
        assert trace.final_state == INITIALIZE

    @pytest.mark.parametrize("phase", [Phase.WAITING, Phase.STATE1, Phase.STATE2])
    def test_cancel_reaches_initialize_in_two_cycles(self, catalog, phase):
        """Test that cancel held from any paying state refunds within two cycles."""
        for product in catalog:
            for held in range(0, product.price, 10):
                state = ControllerState(phase, product.name)
                regs = ControllerRegisters(Inventory.full(catalog), money_count=held)
                inputs = {"cancel": 1, "rs_10": 1}
                state, regs, first = controller_step(catalog, state, regs, inputs)
                state, regs, second = controller_step(catalog, state, regs, inputs)
                assert state == INITIALIZE
                assert first.return_out + second.return_out == held
                assert regs.money_count == 0


class TestService:
    """Tests for the empty-shelf path."""

    def test_service_after_four_purchases(self, controller, scenario_text):
        """Test the scripted refill: four sales, service request, restock."""
        trace = run(controller, parse_stimulus(scenario_text("service.stim"), controller))
        assert sum(trace.values("product")) == 4
        assert SERVICE in trace.states()
        assert trace.final_state == INITIALIZE
        assert trace.final_data.inventory.count("snacks") == 4

    def test_service_holds_until_serviced(self):
        """Test that service_request stays high until serviced."""
        machine = build_controller(ProductCatalog.from_prices({"snacks": 30}), capacity=1)
        kernel = new_kernel(machine)
        buy(machine, kernel, "sel1", [10, 20])
        pulse(machine, kernel, sel1=1)
        settle(machine, kernel)
        assert kernel.current == SERVICE
        for _ in range(3):
            assert pulse(machine, kernel)["service_request"] == 1
        pulse(machine, kernel, serviced=1)
        assert kernel.current == INITIALIZE


class TestReset:
    """Tests for synchronous reset of the controller."""

    def test_reset_clears_money_keeps_stock(self, controller):
        """Test that reset empties money registers but not the shelves."""
        kernel = new_kernel(controller)
        buy(controller, kernel, "sel1", [10, 20])
        buy(controller, kernel, "sel2", [20])
        outputs = pulse(controller, kernel, reset=1)
        assert kernel.current == INITIALIZE
        assert kernel.data.money_count == 0
        assert kernel.data.money == 0
        assert kernel.data.inventory.count("snacks") == 3
        assert outputs["product"] == 0

    def test_reset_cycle_takes_no_note(self):
        """Test that a note during reset is not counted as taken in."""
        assert taken_note(INITIALIZE, {"reset": 1, "rs_10": 1}) == 0
        assert taken_note(INITIALIZE, {"reset": 0, "rs_10": 1}) == 10


class TestConservation:
    """Money taken in always equals money paid out plus money held."""

    def test_exhaustive_short_sequences(self, controller, catalog):
        """Test every sequence of up to six symbols from the eight-symbol alphabet."""
        alphabet = [symbol_inputs(controller, s) for s in SYMBOLS]
        visited = 0

        def explore(state, regs, depth, taken, paid):
            nonlocal visited
            visited += 1
            assert taken == paid + regs.money_count
            if depth == SWEEP_DEPTH:
                return
            for inputs in alphabet:
                note = taken_note(state, inputs)
                nxt, after, out = controller_step(catalog, state, regs, inputs)
                assert out.change in (0, 10)
                assert max(out.change, out.return_out, out.money) <= 127
                price = catalog.get(state.product).price if out.product else 0
                explore(nxt, after, depth + 1, taken + note, paid + price + out.change + out.return_out)

        explore(INITIALIZE, controller.data, 0, 0, 0)
        assert visited == sum(8 ** k for k in range(SWEEP_DEPTH + 1))

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.sampled_from(SYMBOLS + ("serviced",)), max_size=60))
    def test_long_runs_balance(self, symbols):
        """Test the conservation law over random long runs through the kernel."""
        machine = build_controller(capacity=2)
        kernel = new_kernel(machine)
        for symbol in symbols:
            step(machine, kernel, symbol_inputs(machine, symbol))
        assert reconcile(kernel.trace, ProductCatalog.default()).balanced

    @pytest.mark.parametrize("seed", [1, 7, 42, 2024, 31337])
    def test_ten_thousand_cycles_balance(self, seed):
        """Test the conservation law over a seeded 10,000-cycle run."""
        machine = build_controller(capacity=4)
        kernel = new_kernel(machine)
        rng = random.Random(seed)
        alphabet = SYMBOLS + ("serviced",)
        for _ in range(LONG_RUN):
            step(machine, kernel, symbol_inputs(machine, rng.choice(alphabet)))
        flow = reconcile(kernel.trace, ProductCatalog.default())
        assert flow.balanced
        assert flow.dispensed > 0


class TestChange:
    """Change is exact and never more than one note's worth."""

    def test_every_note_sequence_to_vend(self, catalog):
        """Test change for every note sequence that completes a purchase."""
        checked = 0

        def pay(product, regs, paid):
            nonlocal checked
            for note, port in ((10, "rs_10"), (20, "rs_20")):
                state = ControllerState(Phase.WAITING, product.name)
                state, after, _ = controller_step(catalog, state, regs, {port: 1})
                state, after, _ = controller_step(catalog, state, after, {})
                if state.phase is Phase.VEND:
                    _, _, out = controller_step(catalog, state, after, {})
                    assert out.product == 1
                    assert out.change == paid + note - product.price
                    assert out.change in (0, 10)
                    checked += 1
                else:
                    assert state.phase is Phase.WAITING
                    pay(product, after, paid + note)

        for product in catalog:
            pay(product, ControllerRegisters(Inventory.full(catalog)), 0)
        assert checked > 0

    def test_overflow_note_is_echoed(self):
        """Test that a note that would pass 127 comes back on return."""
        catalog = ProductCatalog.from_prices({"snacks": 120})
        state = ControllerState(Phase.WAITING, "snacks")
        regs = ControllerRegisters(Inventory.full(catalog), money_count=110)
        nxt, after, out = controller_step(catalog, state, regs, {"rs_20": 1})
        assert nxt == state
        assert out.return_out == 20
        assert after.money_count == 110
        nxt, after, out = controller_step(catalog, state, regs, {"rs_10": 1})
        assert nxt.phase is Phase.STATE1
        assert after.money_count == 120
