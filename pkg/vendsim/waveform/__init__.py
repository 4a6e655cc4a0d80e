"""Waveform output."""

from .vcd import VcdChange, VcdDocument, VcdVariable, trace_to_vcd, vcd_bytes, vcd_text, write_vcd

__all__ = [
    "VcdChange",
    "VcdDocument",
    "VcdVariable",
    "trace_to_vcd",
    "vcd_bytes",
    "vcd_text",
    "write_vcd",
]
