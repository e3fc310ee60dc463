import pytest

from ncsos_workbench.groups.cover import InvolutiveCover
from ncsos_workbench.groups.gs import GroupGS, WordProblemOutcome
from ncsos_workbench.machines.library import delay_machine
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.words.word import parse_word


@pytest.fixture(scope="module")
def provider() -> TruncatedProvider:
    return TruncatedProvider(delay_machine(3))


def test_relators_hold_in_g(provider: TruncatedProvider) -> None:
    solver = GroupGS(provider.tm)
    relators = provider.g_relators(1, 1)
    assert relators
    for r in relators:
        outcome, _ = solver.is_trivial(r)
        assert outcome is WordProblemOutcome.TRIVIAL, str(r)


def test_wrap_around_relators_only_for_halting_m(provider: TruncatedProvider) -> None:
    small = provider.g_relators(0, 0)
    assert parse_word("J J") in small
    wrap = [r for r in small if len(r) >= 10]
    assert len(wrap) == 2


def test_presentation_is_involutive(provider: TruncatedProvider) -> None:
    p = provider.presentation(1, 1)
    assert p.generators == ("J", "s_S", "t_S", "s_T", "t_T", "s_W", "t_W", "X", "Z")
    assert p.involutions == frozenset(p.generators)
    assert provider.presentation(1, 1) is p


def test_key_relator(provider: TruncatedProvider) -> None:
    cover = InvolutiveCover(provider.tm)
    r = provider.key_relator(1, 0)
    assert {x.name for x in r} <= {"J", "X", "Z", "s_S", "t_S", "s_T", "t_T", "s_W", "t_W"}
    assert cover.is_trivial(r)
    with pytest.raises(ValueError):
        provider.key_relator(1, 3)


def test_to_h() -> None:
    provider = TruncatedProvider(delay_machine(2))
    assert provider.to_h(parse_word("S X S~")) == parse_word("s_S t_S X t_S~ s_S~")
    with pytest.raises(ValueError):
        provider.g_relators(-1, 0)
