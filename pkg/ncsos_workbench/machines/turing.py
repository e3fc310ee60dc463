"""Deterministic single-tape Turing machines with bounded simulation.

Inputs are integers m written in unary: m copies of the input symbol starting
under the head. Negative inputs are never accepted and are reported as running
for every budget. A step is one transition; a run halts at step n when the n-th
transition enters a halting state, so halting times are always at least 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from ncsos_workbench.errors import BudgetExhausted, ParseError
from ncsos_workbench.utils.logging import get_logger

logger = get_logger(__name__)

SECTIONS = ("states", "alphabet", "blank", "start", "halt", "input", "transitions")
TRANSITION_PATTERN = re.compile(
    r"\s*([^,\s]+)\s*,\s*([^,\s]+)\s*->\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*([LR])\s*"
)


@dataclass(frozen=True)
class Transition:
    """Action taken in a given (state, symbol) configuration."""

    state: str
    symbol: str
    move: int


@dataclass(frozen=True, eq=False)
class TuringMachine:
    """A deterministic machine; transitions must be total on non-halting states."""

    name: str
    states: tuple[str, ...]
    alphabet: tuple[str, ...]
    blank: str
    start: str
    halting: frozenset[str]
    transitions: dict[tuple[str, str], Transition]
    input_symbol: str = "1"
    # m -> (steps simulated, halting step or None)
    _horizon: dict[int, tuple[int, int | None]] = field(
        default_factory=dict, repr=False
    )

    def __post_init__(self) -> None:
        """Check the machine is well formed."""
        states = set(self.states)
        symbols = set(self.alphabet)
        if self.start not in states:
            raise ValueError(f"start state {self.start} is not declared")
        if self.start in self.halting:
            raise ValueError("the start state must not be a halting state")
        if not self.halting <= states:
            raise ValueError(f"undeclared halting states {self.halting - states}")
        if self.blank not in symbols or self.input_symbol not in symbols:
            raise ValueError("blank and input symbols must belong to the alphabet")
        for q in self.states:
            if q in self.halting:
                continue
            for s in self.alphabet:
                action = self.transitions.get((q, s))
                if action is None:
                    raise ValueError(f"no transition for ({q}, {s})")
                if action.state not in states or action.symbol not in symbols:
                    raise ValueError(f"transition ({q}, {s}) leaves the machine")

    def simulate(self, m: int, budget: int) -> int | None:
        """Return the halting step if the machine halts within budget steps."""
        if m < 0:
            return None
        tape = {pos: self.input_symbol for pos in range(m)}
        head = 0
        state = self.start
        for step in range(1, budget + 1):
            action = self.transitions[(state, tape.get(head, self.blank))]
            tape[head] = action.symbol
            head += action.move
            state = action.state
            if state in self.halting:
                return step
        return None

    def halting_step(self, m: int, budget: int) -> int | None:
        """Cached variant of simulate."""
        simulated, halted = self._horizon.get(m, (0, None))
        if halted is not None:
            return halted if halted <= budget else None
        if simulated >= budget:
            return None
        result = self.simulate(m, budget)
        self._horizon[m] = (budget, result)
        return result


@dataclass(frozen=True)
class HaltingProfile:
    """Outcome of a bounded run: halted at ``steps`` or still running after ``steps``."""

    machine: str
    m: int
    halted: bool
    steps: int

    def __str__(self) -> str:
        """Render as ``halted-at n`` or ``running-past n``."""
        return f"{'halted-at' if self.halted else 'running-past'} {self.steps}"


def run_bounded(tm: TuringMachine, m: int, budget: int) -> HaltingProfile:
    """Simulate tm on input m for at most budget steps."""
    if budget < 0:
        raise ValueError(f"budget must be non-negative, got {budget}")
    h = tm.halting_step(m, budget)
    if h is None:
        return HaltingProfile(tm.name, m, False, budget)
    return HaltingProfile(tm.name, m, True, h)


def halting_time(tm: TuringMachine, m: int, budget: int) -> int | None:
    """h(m) when it is at most budget, otherwise None."""
    return tm.halting_step(m, budget)


def representative(
    tm: TuringMachine, m: int, i: int, budget: int | None = None
) -> int:
    """Representative of i modulo h(m)+1 minimal in absolute value.

    The machine runs for 2|i|-1 steps. If it halted at h the result lies in the
    open window (-floor((h+3)/2), floor((h+2)/2)); otherwise i already lies in
    that window and is returned unchanged.

    Raises:
        BudgetExhausted: if the run would need more than ``budget`` steps.
    """
    if i == 0:
        return 0
    steps = 2 * abs(i) - 1
    if budget is not None and steps > budget:
        raise BudgetExhausted(
            f"representative of index {i} at m={m} needs {steps} steps, budget {budget}"
        )
    h = tm.halting_step(m, steps)
    if h is None:
        return i
    low = -((h + 3) // 2) + 1
    return (i - low) % (h + 1) + low


def in_window(tm: TuringMachine, m: int, i: int) -> bool:
    """Whether i is its own representative."""
    return representative(tm, m, i) == i


def parse_machine(text: str, name: str = "machine") -> TuringMachine:
    """Parse the sectioned ``.tm`` format.

    Raises:
        ParseError: on unknown sections, malformed transition lines or an
            inconsistent machine.
    """
    sections: dict[str, list[str]] = {key: [] for key in SECTIONS}
    transition_lines: list[tuple[str, int]] = []
    current: str | None = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        header = re.fullmatch(r"\s*\[(\w+)\]\s*", line)
        if header:
            current = header.group(1)
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}]", raw, raw.index("[") + 1)
            continue
        if "->" in line:
            transition_lines.append((raw, 0))
            continue
        if current is None or current == "transitions":
            raise ParseError("expected a section header or transition", raw, 0)
        sections[current].extend(line.split())

    transitions: dict[tuple[str, str], Transition] = {}
    for raw, _ in transition_lines:
        match = TRANSITION_PATTERN.fullmatch(raw.split("#", 1)[0])
        if match is None:
            raise ParseError("expected 'q,s -> q2,s2,L|R'", raw, 0)
        q, s, q2, s2, direction = match.groups()
        if (q, s) in transitions:
            raise ParseError(f"duplicate transition for ({q}, {s})", raw, 0)
        transitions[(q, s)] = Transition(q2, s2, -1 if direction == "L" else 1)

    for key in ("blank", "start"):
        if len(sections[key]) != 1:
            raise ParseError(f"[{key}] needs exactly one entry", text.strip(), 0)
    input_symbol = sections["input"][0] if sections["input"] else "1"
    try:
        return TuringMachine(
            name=name,
            states=tuple(sections["states"]),
            alphabet=tuple(sections["alphabet"]),
            blank=sections["blank"][0],
            start=sections["start"][0],
            halting=frozenset(sections["halt"]),
            transitions=transitions,
            input_symbol=input_symbol,
        )
    except ValueError as e:
        raise ParseError(f"inconsistent machine {name}: {e}", "", 0) from e


def format_machine(tm: TuringMachine) -> str:
    """Render a machine in the ``.tm`` format."""
    lines = [
        "[states]",
        " ".join(tm.states),
        "[alphabet]",
        " ".join(tm.alphabet),
        "[blank]",
        tm.blank,
        "[input]",
        tm.input_symbol,
        "[start]",
        tm.start,
        "[halt]",
        " ".join(sorted(tm.halting)),
        "[transitions]",
    ]
    for (q, s), action in tm.transitions.items():
        direction = "L" if action.move < 0 else "R"
        lines.append(f"{q},{s} -> {action.state},{action.symbol},{direction}")
    return "\n".join(lines) + "\n"


def load_machine(path: str | Path) -> TuringMachine:
    """Read a ``.tm`` file; the machine is named after the file stem."""
    path = Path(path)
    logger.debug(f"loading machine from {path}")
    return parse_machine(path.read_text(), name=path.stem)
