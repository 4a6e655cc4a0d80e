"""Tests for VCD output."""

import pytest

from vendsim.core import new_kernel, run, step
from vendsim.stimulus import parse_stimulus
from vendsim.waveform import trace_to_vcd, vcd_bytes, vcd_text
from vendsim.waveform.vcd import identifier_code, state_width

from helpers import read_vcd, toggle_machine


SCENARIOS = ["purchase.stim", "cancel.stim", "service.stim"]


def scenario_trace(controller, scenario_text, name):
    return run(controller, parse_stimulus(scenario_text(name), controller))


class TestIdentifiers:
    """Tests for identifier codes and widths."""

    def test_codes(self):
        """Test the printable-character code sequence."""
        assert identifier_code(0) == "!"
        assert identifier_code(1) == '"'
        assert identifier_code(93) == "~"
        assert identifier_code(94) == "!!"
        assert identifier_code(95) == '!"'

    def test_codes_are_unique(self):
        """Test that the first thousands of codes never collide."""
        codes = [identifier_code(i) for i in range(20000)]
        assert len(set(codes)) == len(codes)

    def test_state_width(self, controller):
        """Test the state variable width for 23 and 2 states."""
        assert state_width(controller) == 5
        assert state_width(toggle_machine()) == 1


class TestFormat:
    """Tests for the VCD text layout."""

    def test_header(self, controller, scenario_text):
        """Test the header sections and variable declarations."""
        text = vcd_text(trace_to_vcd(scenario_trace(controller, scenario_text, "purchase.stim"), controller))
        lines = text.splitlines()
        assert lines[0] == "$date (deterministic build) $end"
        assert lines[1] == "$timescale 1 ns $end"
        assert lines[2] == "$scope module vending $end"
        assert lines[3] == "$var wire 1 ! reset $end"
        assert "$var wire 7 ' money $end" in lines
        assert "$var wire 5 / state $end" in lines
        assert lines.index("$upscope $end") + 1 == lines.index("$enddefinitions $end")

    def test_dumpvars_then_changes(self, controller, scenario_text):
        """Test that cycle 0 is dumped in full and the run is closed."""
        trace = scenario_trace(controller, scenario_text, "purchase.stim")
        lines = vcd_text(trace_to_vcd(trace, controller)).splitlines()
        body = lines[lines.index("$enddefinitions $end") + 1:]
        assert body[:2] == ["#0", "$dumpvars"]
        assert body.index("$end") == 2 + len(controller.ports) + 1
        assert body[-1] == "#8"
        assert "b11110 '" in body

    def test_date_override(self, controller, scenario_text):
        """Test a caller-provided date."""
        trace = scenario_trace(controller, scenario_text, "cancel.stim")
        text = vcd_text(trace_to_vcd(trace, controller, date="2024-01-01"))
        assert text.startswith("$date 2024-01-01 $end\n")

    def test_empty_trace_is_header_only(self):
        """Test that a trace without cycles has no timestamps."""
        machine = toggle_machine()
        text = vcd_text(trace_to_vcd(new_kernel(machine).trace, machine))
        assert text.endswith("$enddefinitions $end\n")
        body = text.split("$enddefinitions $end\n", 1)[1]
        assert not any(line.startswith("#") for line in body.splitlines())

    def test_single_change(self):
        """Test that a cycle where one signal changes lists only that signal."""
        machine = toggle_machine()
        kernel = new_kernel(machine)
        step(machine, kernel, {"reset": 0, "t": 0})
        step(machine, kernel, {"reset": 0, "t": 1})
        lines = vcd_text(trace_to_vcd(kernel.trace, machine)).splitlines()
        at = lines.index("#1")
        assert lines[at + 1:] == ['1"', "#2"]


class TestRoundTrip:
    """An independent reader recovers the trace."""

    @pytest.mark.parametrize("name", SCENARIOS)
    def test_reader_recovers_values(self, controller, scenario_text, name):
        """Test per-cycle values of every port and the state index."""
        trace = scenario_trace(controller, scenario_text, name)
        widths, values = read_vcd(vcd_text(trace_to_vcd(trace, controller)))
        for port in controller.ports:
            assert widths[port.name] == port.width
            assert values[port.name] == trace.values(port.name)
        assert values["state"] == [controller.state_index(s) for s in trace.states()]

    @pytest.mark.parametrize("name", SCENARIOS)
    def test_byte_identical(self, controller, scenario_text, name):
        """Test that repeated runs give the same bytes."""
        first = vcd_bytes(trace_to_vcd(scenario_trace(controller, scenario_text, name), controller))
        second = vcd_bytes(trace_to_vcd(scenario_trace(controller, scenario_text, name), controller))
        assert first == second
