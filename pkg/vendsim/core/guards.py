"""Symbolic guards and case tables for transition functions.

A guard is a conjunction of 1-bit input literals, written the way the
controller's decoder reads them (``rs_10 & !rs_20``), optionally annotated
with a datapath condition that only the evaluator can decide
(``[money_count >= 30]``). A case table lists, per state, the arcs tried in
order; the last arc of every state must be the default arm.
"""

from dataclasses import dataclass
from typing import Dict, Hashable, Iterable, Iterator, List, Mapping, Sequence, Tuple

from .ports import ContractError


@dataclass(frozen=True)
class Guard:
    """Conjunction of input literals plus an optional datapath condition."""

    literals: Tuple[Tuple[str, bool], ...] = ()
    condition: str = ""

    @classmethod
    def parse(cls, text: str, condition: str = "") -> "Guard":
        """Parse ``a & !b`` style text. Empty text is the always-true guard."""
        literals = []
        text = text.strip()
        if text:
            for term in text.split("&"):
                term = term.strip()
                negated = term.startswith("!")
                name = term[1:].strip() if negated else term
                if not name.isidentifier():
                    raise ContractError(f"Invalid guard term: {term!r}")
                literals.append((name, not negated))
        return cls(tuple(literals), condition)

    @property
    def is_default(self) -> bool:
        return not self.literals and not self.condition

    @property
    def ports(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.literals)

    def matches(self, inputs: Mapping[str, int]) -> bool:
        """True if every literal holds. The datapath condition is not evaluated."""
        return all(bool(inputs.get(name, 0)) == level for name, level in self.literals)

    def representative(self, inputs: Mapping[str, int]) -> Dict[str, int]:
        """Copy of inputs with this guard's literals forced true."""
        forced = dict(inputs)
        for name, level in self.literals:
            forced[name] = int(level)
        return forced

    def label(self) -> str:
        terms = " & ".join(name if level else f"!{name}" for name, level in self.literals)
        if self.condition:
            terms = f"{terms} [{self.condition}]" if terms else f"[{self.condition}]"
        return terms or "else"

    def __str__(self) -> str:
        return self.label()


@dataclass(frozen=True)
class Arc:
    """One row of a case table: when guard holds, go to target."""

    guard: Guard
    target: Hashable


class CaseTable:
    """Ordered per-state arcs, first match wins, default arm last."""

    def __init__(self) -> None:
        self._arcs: Dict[Hashable, List[Arc]] = {}

    def when(self, state: Hashable, guard: str, target: Hashable, condition: str = "") -> "CaseTable":
        """Append a guarded arc to state's case list."""
        parsed = Guard.parse(guard, condition)
        if parsed.is_default:
            raise ContractError("Use otherwise() for the default arm")
        self._arcs.setdefault(state, []).append(Arc(parsed, target))
        return self

    def otherwise(self, state: Hashable, target: Hashable) -> "CaseTable":
        """Close state's case list with the default arm."""
        self._arcs.setdefault(state, []).append(Arc(Guard(), target))
        return self

    def arcs(self, state: Hashable) -> Sequence[Arc]:
        return tuple(self._arcs.get(state, ()))

    def states(self) -> Iterator[Hashable]:
        return iter(self._arcs)

    def __contains__(self, state: object) -> bool:
        return state in self._arcs

    def __len__(self) -> int:
        return sum(len(arcs) for arcs in self._arcs.values())

    def problems(self, states: Iterable[Hashable], one_bit_inputs: Iterable[str]) -> List[str]:
        """List structural defects: missing states, missing default arm, bad targets."""
        known = list(states)
        known_set = set(known)
        inputs = set(one_bit_inputs)
        found: List[str] = []

        for state in known:
            arcs = self._arcs.get(state)
            if not arcs:
                found.append(f"state {state} has no case arms")
                continue
            if not arcs[-1].guard.is_default:
                found.append(f"state {state} has no default arm")
            for arc in arcs[:-1]:
                if arc.guard.is_default:
                    found.append(f"state {state} has a default arm before its last arm")
            for arc in arcs:
                if arc.target not in known_set:
                    found.append(f"state {state} targets unknown state {arc.target}")
                for name in arc.guard.ports:
                    if name not in inputs:
                        found.append(f"state {state} guard uses {name}, not a 1-bit input")

        for state in self._arcs:
            if state not in known_set:
                found.append(f"case table lists undeclared state {state}")
        return found
