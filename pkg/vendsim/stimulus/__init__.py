"""Testbench stimulus language."""

from .program import Drive, Expect, StimulusError, StimulusProgram, schedule
from .parser import format_stimulus, parse_stimulus

__all__ = [
    "Drive",
    "Expect",
    "StimulusError",
    "StimulusProgram",
    "format_stimulus",
    "parse_stimulus",
    "schedule",
]
