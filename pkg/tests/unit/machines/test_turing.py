from pathlib import Path

import pytest

from ncsos_workbench.errors import BudgetExhausted, ParseError
from ncsos_workbench.machines.library import (
    delay_machine,
    halt_immediately,
    loop_forever,
    resolve_machine,
    scan_right,
)
from ncsos_workbench.machines.turing import (
    format_machine,
    halting_time,
    in_window,
    parse_machine,
    representative,
    run_bounded,
)


@pytest.mark.parametrize("m", [0, 1, 5])
def test_builtin_halting_times(m: int) -> None:
    assert halting_time(halt_immediately(), m, 10) == 1
    assert halting_time(delay_machine(4), m, 10) == 4
    assert halting_time(scan_right(), m, 20) == m + 2
    assert halting_time(loop_forever(), m, 50) is None


def test_run_bounded_profile() -> None:
    assert str(run_bounded(delay_machine(3), 1, 10)) == "halted-at 3"
    assert str(run_bounded(loop_forever(), 1, 10)) == "running-past 10"
    assert not run_bounded(delay_machine(3), 1, 2).halted


def test_negative_input_never_halts() -> None:
    assert halting_time(halt_immediately(), -1, 100) is None


def test_representatives_wrap_modulo_h_plus_one() -> None:
    tm = delay_machine(3)
    assert [representative(tm, 1, i) for i in range(-2, 2)] == [-2, -1, 0, 1]
    assert representative(tm, 1, 2) == -2
    assert representative(tm, 1, 3) == -1
    assert representative(tm, 1, 4) == 0
    assert in_window(tm, 1, 1)
    assert not in_window(tm, 1, 2)


def test_representative_of_non_halting_input_is_identity() -> None:
    assert representative(loop_forever(), 2, 17) == 17
    with pytest.raises(BudgetExhausted):
        representative(loop_forever(), 2, 17, budget=10)


def test_shipped_file_matches_builtin() -> None:
    shipped = resolve_machine("delay_3")
    assert shipped.name == "delay_3"
    for m in range(4):
        assert halting_time(shipped, m, 10) == halting_time(resolve_machine("delay:3"), m, 10)


def test_format_parse_round_trip(tmp_path: Path) -> None:
    path = tmp_path / "scan.tm"
    path.write_text(format_machine(scan_right()))
    loaded = resolve_machine(str(path))
    assert loaded.name == "scan"
    assert halting_time(loaded, 3, 10) == 5


def test_parse_errors() -> None:
    with pytest.raises(ParseError):
        parse_machine("[states]\na b\n[bogus]\nx\n")
    with pytest.raises(ParseError):
        parse_machine("[states]\na h\n[alphabet]\n_ 1\n[blank]\n_\n[start]\na\n[halt]\nh\na,_ -> h,_,R\n")
    with pytest.raises(ValueError):
        resolve_machine("no_such_machine")
    with pytest.raises(ValueError):
        delay_machine(0)
