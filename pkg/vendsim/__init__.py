"""vendsim - cycle-accurate FSM simulation of a vending-machine controller."""

__version__ = "0.1.0"
