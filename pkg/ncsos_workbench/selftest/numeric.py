"""Suites for the state inequalities, the Gram solver and the key-relation decompositions."""

from fractions import Fraction

import numpy as np

from ncsos_workbench.certificates.gram import GramCertificate, certificate_residual, sos_search
from ncsos_workbench.certificates.inequalities import run_inequality_suite
from ncsos_workbench.certificates.quotients import (
    CommutativeQuotient,
    InvolutiveQuotient,
    motzkin,
    reduce_polynomial,
)
from ncsos_workbench.certificates.rounding import sign_round
from ncsos_workbench.certificates.states import random_near_involution, random_unit_vector
from ncsos_workbench.config import WorkbenchConfig
from ncsos_workbench.decompositions.decomposition import size, verify
from ncsos_workbench.decompositions.key_relation import decompose_key_relation, size_exponent
from ncsos_workbench.errors import VerificationFailed
from ncsos_workbench.machines.library import loop_forever
from ncsos_workbench.presentations.expectation import coset_expectation
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.utils.mp import map_trials
from ncsos_workbench.words.polynomial import StarPolynomial, word_poly
from ncsos_workbench.words.word import Word

from .checks import Check, count_check, scaled

logger = get_logger(__name__)

SIGN_ROUND_TRIALS = 1000
SIGN_ROUND_MAX_DIM = 16
SQUARE_TRIALS = 50
EXPECTATION_TRIALS = 50
KEY_HORIZON = 8
KEY_MS = (1, 2, 3)
COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


def inequalities_suite(
    seed: int = 0, workers: int = 0, fraction: float = 1.0, max_dim: int = 8
) -> list[Check]:
    """The seven state inequalities on 100 random states each."""
    summaries = run_inequality_suite(seed, scaled(100, fraction), max_dim, workers)
    return [
        Check(
            "inequalities",
            s.prop,
            s.description,
            f"{s.trials - s.failures}/{s.trials} (worst margin {s.worst_margin:.2e})",
            s.passed,
        )
        for s in summaries
    ]


def sign_round_trial(job: tuple[int, int]) -> bool:
    """Round one random near-involution and check the 2 eps bound and A~^2 = 1."""
    seed, trial = job
    rng = np.random.default_rng((seed, 3, trial))
    d = int(rng.integers(1, SIGN_ROUND_MAX_DIM + 1))
    a = random_near_involution(d, rng, 10 ** rng.uniform(-4, 0))
    rounded, report = sign_round(a, random_unit_vector(d, rng))
    return report.holds() and bool(np.allclose(rounded @ rounded, np.eye(d), atol=1e-9))


def _random_element(rng: np.random.Generator, basis: list[Word], terms: int = 3) -> StarPolynomial:
    picks = rng.choice(len(basis), size=min(terms, len(basis)), replace=False)
    return StarPolynomial.sum(
        word_poly(basis[int(k)], Fraction(int(rng.choice(COEFFICIENTS)))) for k in picks
    )


def _square_ok(f: StarPolynomial, quotient: InvolutiveQuotient, degree: int, config: WorkbenchConfig) -> bool:
    result = sos_search(f, quotient, degree, config.solver)
    return (
        isinstance(result, GramCertificate)
        and certificate_residual(result, f, quotient) <= config.solver.tolerance
    )


def certificates_suite(
    seed: int = 0, workers: int = 0, fraction: float = 1.0, config: WorkbenchConfig | None = None
) -> list[Check]:
    """Sign rounding, the small SOS examples, Motzkin and the coset expectation."""
    config = config or WorkbenchConfig()
    checks = []

    n = scaled(SIGN_ROUND_TRIALS, fraction)
    rounded = map_trials(sign_round_trial, [(seed, t) for t in range(n)], workers, desc="sign-round")
    checks.append(count_check("certificates", "sign-round", "||(A - A~)xi|| <= 2 eps", sum(rounded), n))

    z2 = InvolutiveQuotient(["x"])
    two_plus = StarPolynomial.constant(2) + StarPolynomial.letter("x") * 2
    result = sos_search(two_plus, z2, 1, config.solver)
    residual = result.residual if isinstance(result, GramCertificate) else result.residual_floor
    checks.append(
        Check("certificates", "2+2x", "residual", f"{residual:.2e}", result.feasible and residual <= config.solver.tolerance)
    )

    rng = np.random.default_rng((seed, 4))
    xy = InvolutiveQuotient(["x", "y"])
    basis = xy.basis(2)
    n = scaled(SQUARE_TRIALS, fraction)
    ok = 0
    for _ in range(n):
        p = _random_element(rng, basis)
        ok += _square_ok(reduce_polynomial(xy, p.star() * p), xy, 2, config)
    checks.append(count_check("certificates", "p*p", "certified", ok, n))

    plane = CommutativeQuotient(["x", "y"])
    result = sos_search(motzkin(), plane, 3, config.solver)
    floor = result.residual if isinstance(result, GramCertificate) else result.residual_floor
    checks.append(
        Check(
            "certificates",
            "motzkin",
            "residual floor",
            f"{floor:.2e}",
            not result.feasible and floor > config.solver.floor_threshold,
        )
    )

    dihedral = InvolutiveQuotient(["a", "b"])
    subgroup = {Word(), Word.of("a")}
    words = dihedral.basis(3)
    a_only = InvolutiveQuotient(["a"])
    n = scaled(EXPECTATION_TRIALS, fraction)
    ok = 0
    for _ in range(n):
        alpha = _random_element(rng, words, terms=4)
        square = reduce_polynomial(dihedral, alpha.star() * alpha)
        expectation = coset_expectation(square, lambda w: w in subgroup)
        ok += _square_ok(expectation, a_only, 1, config)
    checks.append(count_check("certificates", "coset-expectation", "E(a*a) certified", ok, n))
    return checks


def decomposition_suite(
    seed: int = 0,
    workers: int = 0,
    fraction: float = 1.0,
    horizon: int = KEY_HORIZON,
    config: WorkbenchConfig | None = None,
) -> list[Check]:
    """Key-relation decompositions on a machine that never halts, verified exactly."""
    config = config or WorkbenchConfig()
    tm = loop_forever()
    provider = TruncatedProvider(tm)
    last = max(0, int(horizon * fraction))
    points: list[tuple[int, Fraction]] = []
    ok = total = 0
    for m in KEY_MS:
        for n in range(last + 1):
            total += 1
            try:
                d = decompose_key_relation(m, n, tm, provider, config.reduction)
            except VerificationFailed as e:
                logger.warning(f"key relation m={m} n={n}: {e}")
                continue
            ok += bool(verify(d))
            points.append(((n + 1) * m, size(d).value))
    exponent = size_exponent(points)
    logger.info(f"key relation sizes grow like x^{exponent:.2f} in x = (n+1)m")
    return [
        count_check("decomposition", "key-relation", "verified", ok, total),
        Check(
            "decomposition",
            "size-growth",
            "fitted degree in (n+1)m",
            f"{exponent:.2f} (k = {config.reduction.k})",
            exponent <= float(config.reduction.k) + 1e-9,
        ),
    ]
