"""Randomized suites for the normal forms of K and the word problem of G."""

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ncsos_workbench.groups.gs import (
    G_TAG_BITS,
    GroupGS,
    WordProblemOutcome,
    expand_macros,
    free_retraction,
)
from ncsos_workbench.groups.ks import J_LETTER, KGroup, word_metrics, x_letter, z_letter
from ncsos_workbench.machines.library import resolve_machine
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.utils.mp import map_trials
from ncsos_workbench.words.word import Generator, Word

from .checks import Check, count_check, scaled

DEFAULT_MACHINE = "delay:3"
M_RANGE = (0, 1, 2)
INDEX_RANGE = 3
MAX_K_WORD = 12
MAX_CONJUGATES = 20
MAX_G_WORD = 12
G_LETTERS = ("J", "S", "T", "W", "X", "Z")


@dataclass(frozen=True)
class NormalFormTrial:
    """Outcome of one random K word."""

    invariant: bool
    idempotent: bool
    monotone: bool
    abelian_sound: bool


@dataclass(frozen=True)
class BrittonTrial:
    """Outcome of one relator product and one retraction-nontrivial word."""

    trivial_ok: bool
    nontrivial_ok: bool
    lengths_ok: bool
    index_ok: bool


def _k_letter(kg: KGroup, rng: np.random.Generator) -> Generator:
    kind = int(rng.integers(5))
    if kind == 0:
        return J_LETTER
    m = int(rng.choice(M_RANGE))
    i = kg.rep(m, int(rng.integers(-INDEX_RANGE, INDEX_RANGE + 1)))
    return x_letter(m, i) if kind % 2 else z_letter(m, i)


def _k_word(kg: KGroup, rng: np.random.Generator) -> Word:
    return Word(tuple(_k_letter(kg, rng) for _ in range(int(rng.integers(0, MAX_K_WORD + 1)))))


def _k_relator(kg: KGroup, rng: np.random.Generator) -> Word:
    """A relator of K with representative indices."""
    m = int(rng.choice(M_RANGE))
    i = kg.rep(m, int(rng.integers(-INDEX_RANGE, INDEX_RANGE + 1)))
    x, z = x_letter(m, i), z_letter(m, i)
    kind = int(rng.integers(4))
    if kind == 0:
        g = (x, z, J_LETTER)[int(rng.integers(3))]
        return Word((g, g))
    if kind == 1:
        g = x if rng.random() < 0.5 else z
        return Word((J_LETTER, g, J_LETTER, g))
    if kind == 2:
        core = Word((x, z, x, z))
        return core if kg.commutes(m, i) else Word((J_LETTER,)) * core
    j = kg.rep(m, int(rng.integers(-INDEX_RANGE, INDEX_RANGE + 1)))
    if j == i:
        return Word((x, x))
    a = x if rng.random() < 0.5 else z
    b = (x_letter if rng.random() < 0.5 else z_letter)(m, j)
    return Word((a, b, a, b))


def _parities(word: Word) -> set[tuple[str, int, int]]:
    odd: set[tuple[str, int, int]] = set()
    for x in word:
        if x.indices:
            odd ^= {(x.name, x.m, x.i)}
    return odd


def normalform_trial(job: tuple[int, int, str]) -> NormalFormTrial:
    """Insert a random relator into a random word and compare normal forms."""
    seed, trial, machine = job
    rng = np.random.default_rng((seed, 1, trial))
    kg = KGroup(resolve_machine(machine))
    w = _k_word(kg, rng)
    nf = kg.eta(w)
    k = int(rng.integers(0, len(w) + 1))
    inserted = w[:k] * _k_relator(kg, rng) * w[k:]
    length, bits, max_index = word_metrics(w)
    nf_length, nf_bits, nf_index = word_metrics(nf.non_j_word())
    return NormalFormTrial(
        invariant=kg.eta(inserted) == nf,
        idempotent=kg.eta(nf.to_word()) == nf,
        monotone=nf_length <= length
        and nf_bits <= bits
        and nf_index <= max_index
        and word_metrics(nf.to_word())[2] <= max_index,
        abelian_sound=not _parities(w) or not nf.is_identity(),
    )


def normalform_suite(
    seed: int = 0,
    workers: int = 0,
    fraction: float = 1.0,
    trials: int = 10_000,
    machine: str = DEFAULT_MACHINE,
) -> list[Check]:
    """Relator insertion, idempotence, metric monotonicity and the abelian retraction."""
    n = scaled(trials, fraction)
    outcomes = map_trials(
        normalform_trial, [(seed, t, machine) for t in range(n)], workers, desc="normalform"
    )
    return [
        count_check("normalform", "relator-insertion", "eta unchanged", sum(o.invariant for o in outcomes), n),
        count_check("normalform", "idempotence", "eta(eta(w)) = eta(w)", sum(o.idempotent for o in outcomes), n),
        count_check("normalform", "metrics", "length/bits/index not increased", sum(o.monotone for o in outcomes), n),
        count_check("normalform", "abelianization", "odd letter => nontrivial", sum(o.abelian_sound for o in outcomes), n),
    ]


@lru_cache(maxsize=8)
def _g_relators(machine: str) -> tuple[Word, ...]:
    return tuple(TruncatedProvider(resolve_machine(machine)).g_relators(1, 1))


def _g_word(rng: np.random.Generator, length: int) -> Word:
    letters = []
    for _ in range(length):
        name = G_LETTERS[int(rng.integers(len(G_LETTERS)))]
        letters.append(Generator(name, name in "STW" and bool(rng.random() < 0.5)))
    return Word(tuple(letters))


def _relator_product(rng: np.random.Generator, relators: tuple[Word, ...]) -> Word:
    out = Word()
    for _ in range(int(rng.integers(1, MAX_CONJUGATES + 1))):
        r = relators[int(rng.integers(len(relators)))]
        if rng.random() < 0.5:
            r = r.star()
        c = _g_word(rng, int(rng.integers(0, 4)))
        out = out * c * r * c.star()
    return out


def britton_trial(job: tuple[int, int, str]) -> BrittonTrial:
    """Decide one product of conjugated relators and one retraction-nontrivial word."""
    seed, trial, machine = job
    rng = np.random.default_rng((seed, 2, trial))
    solver = GroupGS(resolve_machine(machine))
    product = _relator_product(rng, _g_relators(machine))
    outcome, report = solver.is_trivial(product)
    lengths = report.lengths
    growth = math.ceil(word_metrics(expand_macros(product), G_TAG_BITS)[0] / 2)
    index_ok = not report.max_indices or max(report.max_indices) <= report.max_indices[0] + growth

    word = Word()
    while not free_retraction(word):
        word = _g_word(rng, int(rng.integers(1, MAX_G_WORD + 1)))
    verdict, _ = solver.is_trivial(word)
    return BrittonTrial(
        trivial_ok=outcome is WordProblemOutcome.TRIVIAL,
        nontrivial_ok=verdict is WordProblemOutcome.NONTRIVIAL,
        lengths_ok=all(b <= a for a, b in zip(lengths, lengths[1:])),
        index_ok=index_ok,
    )


def britton_suite(
    seed: int = 0,
    workers: int = 0,
    fraction: float = 1.0,
    trials: int = 1000,
    machine: str = DEFAULT_MACHINE,
) -> list[Check]:
    """Completeness on relator products and soundness against the free retraction."""
    n = scaled(trials, fraction)
    outcomes = map_trials(
        britton_trial, [(seed, t, machine) for t in range(n)], workers, desc="britton"
    )
    return [
        count_check("britton", "relator-products", "reported trivial", sum(o.trivial_ok for o in outcomes), n),
        count_check("britton", "free-retraction", "reported nontrivial", sum(o.nontrivial_ok for o in outcomes), n),
        count_check("britton", "length-bookkeeping", "length never grows", sum(o.lengths_ok for o in outcomes), n),
        count_check("britton", "index-bookkeeping", "max index <= I + ceil(N/2)", sum(o.index_ok for o in outcomes), n),
    ]
