"""Builtin machines with hand-checkable halting times."""

from pathlib import Path

from ncsos_workbench.machines.turing import (
    Transition,
    TuringMachine,
    load_machine,
)

DATA_DIR = Path(__file__).resolve().parents[2] / "ncsos_workbench_data" / "machines"
ALPHABET = ("_", "1")


def _uniform(name: str, chain: list[str], halt: str) -> TuringMachine:
    """Machine stepping right through ``chain`` on every symbol, then halting."""
    transitions = {}
    targets = chain[1:] + [halt]
    for q, target in zip(chain, targets):
        for s in ALPHABET:
            transitions[(q, s)] = Transition(target, s, 1)
    return TuringMachine(
        name=name,
        states=tuple(chain) + (halt,),
        alphabet=ALPHABET,
        blank="_",
        start=chain[0],
        halting=frozenset({halt}),
        transitions=transitions,
    )


def halt_immediately() -> TuringMachine:
    """h(m) = 1 for every m >= 0."""
    return _uniform("halt_immediately", ["q0"], "done")


def delay_machine(n: int) -> TuringMachine:
    """h(m) = n for every m >= 0."""
    if n < 1:
        raise ValueError(f"a machine takes at least one step, got delay {n}")
    return _uniform(f"delay_{n}", [f"d{k}" for k in range(n)], "done")


def loop_forever() -> TuringMachine:
    """Never halts."""
    return TuringMachine(
        name="loop_forever",
        states=("spin", "done"),
        alphabet=ALPHABET,
        blank="_",
        start="spin",
        halting=frozenset({"done"}),
        transitions={("spin", s): Transition("spin", s, 1) for s in ALPHABET},
    )


def scan_right() -> TuringMachine:
    """Walk over the unary input, step back once, halt: h(m) = m + 2."""
    return TuringMachine(
        name="scan_right",
        states=("scan", "back", "done"),
        alphabet=ALPHABET,
        blank="_",
        start="scan",
        halting=frozenset({"done"}),
        transitions={
            ("scan", "1"): Transition("scan", "1", 1),
            ("scan", "_"): Transition("back", "_", -1),
            ("back", "1"): Transition("done", "1", 1),
            ("back", "_"): Transition("done", "_", 1),
        },
    )


BUILTINS = {
    "halt_immediately": halt_immediately,
    "loop_forever": loop_forever,
    "scan_right": scan_right,
}


def resolve_machine(spec: str) -> TuringMachine:
    """Resolve a machine reference.

    Accepts a path to a ``.tm`` file, a builtin name, ``delay:<n>``, or the
    stem of a file shipped in the machines data directory.
    """
    if spec in BUILTINS:
        return BUILTINS[spec]()
    if spec.startswith("delay:"):
        return delay_machine(int(spec.split(":", 1)[1]))
    path = Path(spec)
    if path.exists():
        return load_machine(path)
    shipped = DATA_DIR / f"{spec}.tm"
    if shipped.exists():
        return load_machine(shipped)
    raise ValueError(
        f"unknown machine {spec!r}; use a .tm path, delay:<n> or one of {sorted(BUILTINS)}"
    )
