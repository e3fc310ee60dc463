import pytest

from ncsos_workbench.errors import NonRepresentativeIndex
from ncsos_workbench.groups.ks import J_LETTER, KGroup, Subgroup, word_metrics, x_letter, z_letter
from ncsos_workbench.machines.library import delay_machine
from ncsos_workbench.words.word import Word, parse_word


@pytest.fixture
def kg() -> KGroup:
    return KGroup(delay_machine(3))


def test_anticommutation_introduces_j(kg: KGroup) -> None:
    assert str(kg.eta(parse_word("z[0,0] x[0,0]"))) == "J x[0,0] z[0,0]"
    assert str(kg.eta(parse_word("z[0,-1] x[0,-1]"))) == "x[0,-1] z[0,-1]"


def test_commuting_letters_sort_by_index(kg: KGroup) -> None:
    nf = kg.eta(parse_word("z[1,1] x[1,0] J"))
    assert str(nf) == "J x[1,0] z[1,1]"


def test_involutions_cancel(kg: KGroup) -> None:
    assert kg.eta(parse_word("x[0,1] z[2,0] z[2,0] x[0,1]")).is_identity()
    assert kg.eta(Word((J_LETTER, J_LETTER))).is_identity()
    commutator = parse_word("x[0,0] z[0,0] x[0,0] z[0,0]")
    assert kg.eta(commutator).to_word() == Word((J_LETTER,))


def test_blocks_alternate_in_m(kg: KGroup) -> None:
    nf = kg.eta(parse_word("x[0,0] x[1,0] x[0,0]"))
    assert [b.m for b in nf.blocks] == [0, 1, 0]


def test_representatives(kg: KGroup) -> None:
    assert kg.rep(0, 4) == 0
    assert kg.rep(0, 2) == -2
    assert kg.canonical_letter(x_letter(0, 5)) == x_letter(0, 1)
    with pytest.raises(NonRepresentativeIndex):
        kg.eta([x_letter(0, 2)])
    with pytest.raises(ValueError):
        kg.eta(parse_word("S"))


def test_membership_and_phi(kg: KGroup) -> None:
    xs = kg.eta(parse_word("x[0,0] x[0,1]"))
    assert kg.membership(xs, Subgroup.X)
    assert not kg.membership(xs, Subgroup.Z)
    assert kg.apply_phi(Subgroup.X, xs, 1) == kg.eta(parse_word("x[0,1] x[0,-2]"))
    zero = kg.eta(parse_word("x[0,0] z[0,0]"))
    assert kg.apply_phi(Subgroup.ZERO, zero, 1) == kg.eta(parse_word("x[1,0] z[1,0]"))
    with pytest.raises(ValueError):
        kg.apply_phi(Subgroup.Z, xs, 1)


def test_split_coset(kg: KGroup) -> None:
    element = kg.eta([x_letter(0, 0), z_letter(0, 1)])
    a, r = kg.split_coset(element, Subgroup.X)
    assert a == kg.eta([x_letter(0, 0)])
    assert r == kg.eta([z_letter(0, 1)])
    assert kg.multiply(a, r) == element


def test_word_metrics() -> None:
    assert word_metrics(parse_word("x[0,-3] J")) == (2, 15, 3)
    assert word_metrics(Word()) == (0, 0, 0)
