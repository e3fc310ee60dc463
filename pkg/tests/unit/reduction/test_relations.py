from fractions import Fraction
from pathlib import Path

import pytest

from ncsos_workbench.machines.library import halt_immediately
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.reduction.relations import (
    FAMILIES,
    RelationSet,
    load_relations,
    r6_polynomial,
    relations_Rm,
    write_relations,
)
from ncsos_workbench.words.polynomial import quotient_involutive


@pytest.fixture(scope="module")
def relations() -> RelationSet:
    return relations_Rm(1, TruncatedProvider(halt_immediately()))


def test_every_family_is_present(relations: RelationSet) -> None:
    assert set(relations.family_sizes()) == set(FAMILIES)
    assert relations.family_sizes()["R5"] == 1
    assert relations.family_sizes()["R4"] == 2
    assert relations.family_sizes()["R3"] == 4


def test_declared_bounds(relations: RelationSet) -> None:
    r6 = relations[relations.index_of("R6")]
    assert r6.declared_bound == 6
    assert r6.polynomial == r6_polynomial()
    assert r6.norm_bound() == min(Fraction(6), r6.norm1())
    assert all(r.declared_bound == 2 for r in relations.family("R1"))


def test_defining_drops_letter_relations(relations: RelationSet) -> None:
    defining = relations.defining()
    assert "R0" not in defining.family_sizes()
    assert len(defining) == len(relations) - relations.family_sizes()["R0"]


def test_letter_relations_vanish_in_involutive_quotient(relations: RelationSet) -> None:
    for r in relations.family("R0"):
        assert quotient_involutive(r.polynomial).is_zero(), r.label


def test_duplicates_are_dropped(relations: RelationSet) -> None:
    doubled = RelationSet(list(relations) + list(relations))
    assert len(doubled) == len(relations)
    assert doubled.compatible(relations)


def test_relations_file_round_trip(relations: RelationSet, tmp_path: Path) -> None:
    path = tmp_path / "r1.relations"
    write_relations(relations, path)
    loaded = load_relations(path)
    assert loaded.compatible(relations)
    assert [r.declared_bound for r in loaded] == [r.declared_bound for r in relations]


def test_rejects_m_zero() -> None:
    with pytest.raises(ValueError):
        relations_Rm(0, TruncatedProvider(halt_immediately()))
