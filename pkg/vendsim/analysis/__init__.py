"""Static analysis of state machines."""

from .graph import AnalysisInfeasibleError, Edge, Reachability, edges, reachable_states, to_dot
from .convert import MooreState, PairSpace, mealy_to_moore
from .equivalence import skewed_equivalent
from .report import ResourceReport, resource_report

__all__ = [
    "AnalysisInfeasibleError",
    "Edge",
    "MooreState",
    "PairSpace",
    "Reachability",
    "ResourceReport",
    "edges",
    "mealy_to_moore",
    "reachable_states",
    "resource_report",
    "skewed_equivalent",
    "to_dot",
]
