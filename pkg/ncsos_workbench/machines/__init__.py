"""Turing machines, bounded runs and index representatives."""

from .library import (
    delay_machine,
    halt_immediately,
    loop_forever,
    resolve_machine,
    scan_right,
)
from .turing import (
    HaltingProfile,
    TuringMachine,
    format_machine,
    halting_time,
    load_machine,
    parse_machine,
    representative,
    run_bounded,
)

__all__ = [
    "HaltingProfile",
    "TuringMachine",
    "delay_machine",
    "format_machine",
    "halt_immediately",
    "halting_time",
    "load_machine",
    "loop_forever",
    "parse_machine",
    "representative",
    "resolve_machine",
    "run_bounded",
    "scan_right",
]
