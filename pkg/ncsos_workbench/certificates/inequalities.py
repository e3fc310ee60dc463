"""Randomized checks of the approximate-representation inequalities.

Each property draws a random finite-dimensional state, computes the epsilon
it certifies and compares both sides of one inequality. Trials are seeded by
(seed, property, trial) so a suite gives the same numbers under any worker
count. ``calibration_report`` applies the same machinery to the P~_0 bound on
inputs where the machine has not halted yet; its violations are findings
about the configured constants, not failures.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from fractions import Fraction
from functools import partial

import numpy as np

from ncsos_workbench.certificates.halting import DEFAULT_HALTING_BUDGET
from ncsos_workbench.certificates.rounding import hermitian_sign
from ncsos_workbench.certificates.states import (
    EpsilonMode,
    FiniteState,
    TensorState,
    epsilon_of,
    perturb,
    random_near_involution,
    random_unitary_involution,
    tracial_state,
)
from ncsos_workbench.config import ReductionConfig
from ncsos_workbench.decompositions.decomposition import Entry, RDecomposition, size, verify
from ncsos_workbench.errors import VerificationFailed
from ncsos_workbench.machines.turing import TuringMachine, run_bounded
from ncsos_workbench.presentations.provider import PresentationProvider, TruncatedProvider
from ncsos_workbench.reduction.alphabet import ALPHABET
from ncsos_workbench.reduction.compiler import build_w_m, ptilde
from ncsos_workbench.reduction.relations import DEFAULT_I_BOUND, Relation, RelationSet, relations_Rm
from ncsos_workbench.reduction.wmap import monomial_wmap, wmap
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.utils.mp import map_trials
from ncsos_workbench.words.polynomial import StarPolynomial, TensorPolynomial, omega, word_poly
from ncsos_workbench.words.word import Generator, Word

logger = get_logger(__name__)

SLACK = 1e-9
NAMES = ("x", "y")
MAX_WORD = 4
CALIBRATION_DIM = 4
CALIBRATION_SCALES = (1e-3, 1e-2, 1e-1)


@dataclass(frozen=True)
class TrialOutcome:
    """Both sides of one inequality, oriented as lhs <= rhs."""

    prop: str
    trial: int
    dim: int
    lhs: float
    rhs: float

    @property
    def margin(self) -> float:
        """lhs - rhs; positive means violated."""
        return self.lhs - self.rhs

    @property
    def holds(self) -> bool:
        """Whether lhs <= rhs + slack."""
        return self.margin <= SLACK


@dataclass(frozen=True)
class PropertySummary:
    """Aggregate over the trials of one property."""

    prop: str
    description: str
    trials: int
    failures: int
    worst_margin: float

    @property
    def passed(self) -> bool:
        """No trial violated the inequality."""
        return self.failures == 0


def _rng(seed: int, prop: str, trial: int) -> np.random.Generator:
    return np.random.default_rng((seed, ord(prop), trial))


def _dim(rng: np.random.Generator, max_dim: int) -> int:
    return int(rng.integers(2, max_dim + 1))


def _word(rng: np.random.Generator, max_len: int = MAX_WORD, stars: bool = False) -> Word:
    n = int(rng.integers(0, max_len + 1))
    letters = []
    for _ in range(n):
        x = Generator(NAMES[int(rng.integers(len(NAMES)))])
        letters.append(x.star() if stars and rng.random() < 0.5 else x)
    return Word(tuple(letters))


def _coefficient(rng: np.random.Generator) -> Fraction:
    num = 0
    while num == 0:
        num = int(rng.integers(-4, 5))
    return Fraction(num, int(rng.integers(1, 4)))


def _polynomial(rng: np.random.Generator, terms: int = 3, stars: bool = False) -> StarPolynomial:
    return StarPolynomial.sum(
        word_poly(_word(rng, stars=stars), _coefficient(rng)) for _ in range(terms)
    )


def _involutions(d: int, rng: np.random.Generator) -> dict[str, np.ndarray]:
    return {name: random_unitary_involution(d, rng) for name in NAMES}


def _hermitian_part(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2


def _noisy(m: np.ndarray, rng: np.random.Generator, scale: float) -> np.ndarray:
    d = m.shape[0]
    noise = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return m + scale * noise / np.sqrt(2 * d)


def _near_transposes(
    matrices: dict[str, np.ndarray], rng: np.random.Generator, scale: float
) -> dict[str, np.ndarray]:
    """Unitary involutions close to the transposes of the given ones."""
    return {name: hermitian_sign(_hermitian_part(_noisy(m.T, rng, scale))) for name, m in matrices.items()}


def _entangled(d: int, rng: np.random.Generator, scale: float) -> np.ndarray:
    psi = np.eye(d, dtype=complex) / np.sqrt(d)
    psi = psi + scale * (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / d
    return psi / np.linalg.norm(psi)


def _test_relations() -> RelationSet:
    x, y = word_poly(Word.of("x")), word_poly(Word.of("y"))
    xy = x * y
    two = Fraction(2)
    return RelationSet(
        [
            Relation("T", "[x,y]", x * y - y * x, two),
            Relation("T", "(xy)^3", xy * xy * xy - 1, two),
            Relation("T", "braid", x * y * x - y * x * y, two),
        ],
        "test",
    )


def _random_decomposition(rng: np.random.Generator) -> RDecomposition:
    relations = _test_relations()
    entries = [
        Entry(
            _coefficient(rng),
            _word(rng),
            int(rng.integers(len(relations))),
            bool(rng.random() < 0.5),
            _word(rng),
        )
        for _ in range(int(rng.integers(1, 7)))
    ]
    draft = RDecomposition(relations, StarPolynomial(), entries)
    d = RDecomposition(relations, draft.expand(), entries)
    if not verify(d):
        raise VerificationFailed("a decomposition built from its own expansion did not verify")
    return d


def _decomposition_trial(prop: str, seed: int, trial: int, max_dim: int) -> TrialOutcome:
    rng = _rng(seed, prop, trial)
    d = _dim(rng, max_dim)
    state = tracial_state(_involutions(d, rng))
    decomposition = _random_decomposition(rng)
    eps = epsilon_of(state, decomposition.relations)
    measured = size(decomposition)
    factor = measured.coefficient_sum if prop == "a" else measured.value
    return TrialOutcome(
        prop, trial, d, state.norm(decomposition.target), float(factor) * np.sqrt(eps)
    )


def _sync_setup(
    seed: int, prop: str, trial: int, max_dim: int
) -> tuple[np.random.Generator, TensorState, float]:
    rng = _rng(seed, prop, trial)
    d = _dim(rng, max_dim)
    scale = 10 ** rng.uniform(-3, -0.5)
    left = _involutions(d, rng)
    state = TensorState(left, _near_transposes(left, rng, scale), _entangled(d, rng, scale))
    return rng, state, epsilon_of(state, NAMES, EpsilonMode.SYNCHRONOUS)


def _trial_b(seed: int, trial: int, max_dim: int) -> TrialOutcome:
    rng, state, eps = _sync_setup(seed, "b", trial, max_dim)
    u = _polynomial(rng)
    gap = TensorPolynomial.left(u) - TensorPolynomial.right(omega(u))
    return TrialOutcome("b", trial, state.dim, state.norm(gap), float(u.norm11()) * np.sqrt(eps))


def _conjugate(u: Word, a: StarPolynomial) -> StarPolynomial:
    return word_poly(u.star()) * a * word_poly(u)


def _trial_c(seed: int, trial: int, max_dim: int) -> TrialOutcome:
    rng, state, eps = _sync_setup(seed, "c", trial, max_dim)
    u = _word(rng)
    a = _polynomial(rng)
    lhs = abs(
        state.norm(TensorPolynomial.left(_conjugate(u, a))) - state.norm(TensorPolynomial.left(a))
    )
    return TrialOutcome("c", trial, state.dim, lhs, float(a.norm1()) * u.degree * np.sqrt(eps))


def _trial_d(seed: int, trial: int, max_dim: int) -> TrialOutcome:
    rng, state, eps = _sync_setup(seed, "d", trial, max_dim)
    u = _word(rng)
    b = _polynomial(rng, terms=2, stars=True)
    a = b.star() * b
    conjugated = _conjugate(u, a)
    value = state.evaluate(TensorPolynomial.left(conjugated * a)).real
    floor = -float(conjugated.norm11()) * state.norm(TensorPolynomial.left(a)) * np.sqrt(eps)
    # oriented as floor <= value
    return TrialOutcome("d", trial, state.dim, floor, value)


def _trial_f(seed: int, trial: int, max_dim: int) -> TrialOutcome:
    rng = _rng(seed, "f", trial)
    d = _dim(rng, max_dim)
    scale = 10 ** rng.uniform(-3, -0.5)
    state = tracial_state({name: random_near_involution(d, rng, scale) for name in NAMES})
    f = _polynomial(rng, stars=True)
    eps = epsilon_of(state, wmap(f))
    rounded = state.replace(
        {name: hermitian_sign(_hermitian_part(m)) for name, m in state.matrices.items()}
    )
    lhs = abs(rounded.norm(f) - state.norm(f))
    return TrialOutcome("f", trial, d, lhs, 2 * float(f.norm11()) * np.sqrt(eps))


def _letter_wmap_tensors() -> list[TensorPolynomial]:
    out = []
    for name in NAMES:
        for r in monomial_wmap(Word.of(name)):
            out.append(TensorPolynomial.left(r.polynomial))
            out.append(TensorPolynomial.right(r.polynomial))
    return out


def _trial_g(seed: int, trial: int, max_dim: int) -> TrialOutcome:
    rng = _rng(seed, "g", trial)
    d = _dim(rng, max_dim)
    scale = 10 ** rng.uniform(-3, -0.5)
    base = _involutions(d, rng)
    left = {name: _noisy(m, rng, scale) for name, m in base.items()}
    right = {name: _noisy(m.T, rng, scale) for name, m in base.items()}
    state = TensorState(left, right, np.eye(d, dtype=complex) / np.sqrt(d))
    eps = max(
        epsilon_of(state, NAMES, EpsilonMode.SYNCHRONOUS),
        epsilon_of(state, _letter_wmap_tensors()),
    )
    rounded = TensorState(
        {name: hermitian_sign(_hermitian_part(m)) for name, m in left.items()},
        {name: hermitian_sign(_hermitian_part(m)) for name, m in right.items()},
        state.psi,
    )
    lhs = epsilon_of(rounded, NAMES, EpsilonMode.SYNCHRONOUS)
    return TrialOutcome("g", trial, d, lhs, 25 * eps)


PROPERTIES: dict[str, tuple[str, Callable[[int, int, int], TrialOutcome]]] = {
    "a": ("||f||_tau <= (sum |lambda|) sqrt(eps)", partial(_decomposition_trial, "a")),
    "b": ("||u(x)1 - 1(x)omega(u)||_phi <= ||u||_11 sqrt(eps)", _trial_b),
    "c": ("| ||u*au(x)1|| - ||a(x)1|| | <= ||a||_1 deg(u) sqrt(eps)", _trial_c),
    "d": ("Re phi(u*aua(x)1) >= -||u*au||_11 ||a(x)1|| sqrt(eps)", _trial_d),
    "e": ("||f||_tau <= size sqrt(eps)", partial(_decomposition_trial, "e")),
    "f": ("| ||f||_rounded - ||f||_tau | <= 2 ||f||_11 sqrt(eps)", _trial_f),
    "g": ("rounded tensor state is (25 eps)-synchronous", _trial_g),
}


def run_trial(job: tuple[int, str, int, int]) -> TrialOutcome:
    """Run one trial; ``job`` is (seed, property, trial, max_dim)."""
    seed, prop, trial, max_dim = job
    return PROPERTIES[prop][1](seed, trial, max_dim)


def run_inequality_suite(
    seed: int = 0,
    trials: int = 100,
    max_dim: int = 8,
    workers: int = 0,
    properties: Iterable[str] = tuple(PROPERTIES),
) -> list[PropertySummary]:
    """Run the selected properties on ``trials`` random states each."""
    if max_dim < 2:
        raise ValueError(f"max_dim must be at least 2, got {max_dim}")
    props = list(properties)
    unknown = [p for p in props if p not in PROPERTIES]
    if unknown:
        raise ValueError(f"unknown properties {unknown}; choose from {sorted(PROPERTIES)}")
    jobs = [(seed, p, t, max_dim) for p in props for t in range(trials)]
    outcomes = map_trials(run_trial, jobs, workers=workers, desc="inequalities")
    summaries = []
    for p in props:
        mine = [o for o in outcomes if o.prop == p]
        failures = sum(1 for o in mine if not o.holds)
        worst = max((o.margin for o in mine), default=float("-inf"))
        summaries.append(PropertySummary(p, PROPERTIES[p][0], len(mine), failures, worst))
        if failures:
            logger.warning(f"property {p} failed on {failures}/{len(mine)} trials, worst margin {worst:.3g}")
    logger.info(f"inequality suite seed={seed}: {sum(s.passed for s in summaries)}/{len(summaries)} passed")
    return summaries


@dataclass(frozen=True)
class CalibrationFinding:
    """||P~_0||_tau against Lambda~ m^k' sqrt(eps) for one perturbation scale."""

    scale: float
    epsilon: float
    p0_norm: float
    bound: float

    @property
    def holds(self) -> bool:
        """Whether the configured constants cover this state."""
        return self.p0_norm <= self.bound + SLACK


def _calibration_base(d: int, rng: np.random.Generator) -> dict[str, np.ndarray]:
    """Every letter the identity except O_Q, so P = 0 and all of R_m holds."""
    out = {name: np.eye(d, dtype=complex) for name in ALPHABET}
    out["OQ"] = random_unitary_involution(d, rng)
    return out


def calibration_report(
    tm: TuringMachine,
    m: int,
    config: ReductionConfig | None = None,
    seed: int = 0,
    scales: Iterable[float] = CALIBRATION_SCALES,
    dim: int = CALIBRATION_DIM,
    horizon: int = DEFAULT_HALTING_BUDGET,
    provider: PresentationProvider | None = None,
    i_bound: int = DEFAULT_I_BOUND,
) -> list[CalibrationFinding]:
    """Check ||P~_0||_tau <= Lambda~ m^k' sqrt(eps) on perturbed tracial states.

    Raises:
        ValueError: if tm halts on m within the horizon.
    """
    config = config or ReductionConfig()
    if run_bounded(tm, m, horizon).halted:
        raise ValueError(f"{tm.name} halts on m={m}; calibration needs a non-halting input")
    provider = provider or TruncatedProvider(tm)
    w_m = build_w_m(relations_Rm(m, provider, i_bound))
    p0 = ptilde(0)
    constant = float(config.Lambda_tilde) * float(m) ** float(config.k_prime)
    rng = np.random.default_rng((seed, m))
    base: FiniteState = tracial_state(_calibration_base(dim, rng))
    findings = []
    for scale in scales:
        state = perturb(base, scale, rng)
        eps = epsilon_of(state, w_m)
        finding = CalibrationFinding(scale, eps, state.norm(p0), constant * float(np.sqrt(eps)))
        if not finding.holds:
            logger.warning(
                f"calibration: ||P~_0|| = {finding.p0_norm:.3g} exceeds {finding.bound:.3g} at scale {scale}"
            )
        findings.append(finding)
    logger.info(f"calibration for {tm.name}, m={m}: {sum(f.holds for f in findings)}/{len(findings)} within bound")
    return findings
