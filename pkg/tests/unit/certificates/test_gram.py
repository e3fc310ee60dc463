from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from ncsos_workbench.certificates.gram import (
    GramCertificate,
    InfeasibleReport,
    certificate_residual,
    parse_certificate,
    read_certificate,
    sos_search,
    trace_sos_search,
    write_certificate,
)
from ncsos_workbench.certificates.quotients import (
    CommutativeQuotient,
    FreeStarQuotient,
    InvolutiveQuotient,
    motzkin,
    reduce_polynomial,
)
from ncsos_workbench.config import SolverConfig
from ncsos_workbench.errors import ParseError, ResourceLimit
from ncsos_workbench.words.polynomial import StarPolynomial, word_poly
from ncsos_workbench.words.word import parse_word


def _involution_sum() -> StarPolynomial:
    # (1 + x)^2 + 1 with x^2 = 1
    return StarPolynomial.letter("x") * 2 + 3


def test_sos_certificate_in_involutive_quotient() -> None:
    q = InvolutiveQuotient(["x"])
    result = sos_search(_involution_sum(), q, 1)
    assert isinstance(result, GramCertificate)
    assert result.feasible
    assert result.basis == [parse_word("1"), parse_word("x")]
    assert result.min_eigenvalue >= -1e-8
    assert certificate_residual(result, _involution_sum(), q) < 1e-6
    assert result.commutators == []


def test_two_plus_two_x_over_z2() -> None:
    q = InvolutiveQuotient(["x"])
    f = StarPolynomial.constant(2) + StarPolynomial.letter("x") * 2
    result = sos_search(f, q, 1)
    assert isinstance(result, GramCertificate)
    assert result.residual <= 1e-8
    assert certificate_residual(result, f, q) <= 1e-8
    # (1 + x)^2 is the only decomposition
    assert np.allclose(result.gram, [[1, 1], [1, 1]], atol=1e-6)


def test_random_squares_are_certified() -> None:
    q = InvolutiveQuotient(["x", "y"])
    basis = q.basis(2)
    rng = np.random.default_rng(0)
    failed = []
    for _ in range(50):
        picks = rng.choice(len(basis), size=3, replace=False)
        p = StarPolynomial.sum(
            word_poly(basis[int(k)], Fraction(int(rng.choice([-3, -2, -1, 1, 2, 3])))) for k in picks
        )
        f = reduce_polynomial(q, p.star() * p)
        result = sos_search(f, q, 2)
        if not isinstance(result, GramCertificate) or certificate_residual(result, f, q) > 1e-8:
            failed.append(str(p))
    assert failed == []


@pytest.mark.parametrize(
    "p",
    [
        # boundary cases where the Gram matrix has rank one
        [(-1, "x"), (-1, "y"), (1, "x y")],
        [(3, "1"), (-1, "x"), (2, "y")],
    ],
)
def test_rank_one_squares_are_certified(p: list[tuple[int, str]]) -> None:
    q = InvolutiveQuotient(["x", "y"])
    poly = StarPolynomial.sum(word_poly(parse_word(w), c) for c, w in p)
    f = reduce_polynomial(q, poly.star() * poly)
    result = sos_search(f, q, 2)
    assert isinstance(result, GramCertificate)
    assert certificate_residual(result, f, q) <= 1e-8


def test_motzkin_is_not_a_sum_of_squares() -> None:
    config = SolverConfig()
    result = sos_search(motzkin(), CommutativeQuotient(["x", "y"]), 3, config)
    assert isinstance(result, InfeasibleReport)
    assert not result.feasible
    assert result.residual_floor > config.floor_threshold
    assert len(result.basis) == 10


def test_unreachable_monomial_is_infeasible() -> None:
    f = StarPolynomial.letter("x") * StarPolynomial.letter("x") + 1
    result = sos_search(f, CommutativeQuotient(["x"]), 0)
    assert isinstance(result, InfeasibleReport)
    assert result.residual_floor == float("inf")


def test_rejects_non_self_adjoint() -> None:
    with pytest.raises(ValueError):
        sos_search(StarPolynomial.letter("x"), FreeStarQuotient(["x"]), 1)


def test_basis_cap() -> None:
    with pytest.raises(ResourceLimit):
        sos_search(_involution_sum(), InvolutiveQuotient(["x", "y"]), 2, SolverConfig(max_basis=2))


def test_trace_certificate_uses_commutators() -> None:
    q = InvolutiveQuotient(["x", "y"])
    xy = StarPolynomial.monomial(parse_word("x y"))
    yx = StarPolynomial.monomial(parse_word("y x"))
    f = xy - yx + 1
    result = trace_sos_search(f, q, 0)
    assert isinstance(result, GramCertificate)
    assert result.commutators == [(-1.0, parse_word("y"), parse_word("x"))]
    assert certificate_residual(result, f, q) < 1e-9


def test_trace_search_prefers_plain_certificate() -> None:
    result = trace_sos_search(_involution_sum(), InvolutiveQuotient(["x"]), 1)
    assert isinstance(result, GramCertificate)
    assert result.commutators == []


def test_trace_search_rejects_non_commutator_skew_part() -> None:
    f = StarPolynomial.monomial(parse_word("x y"))
    result = trace_sos_search(f, FreeStarQuotient(["x", "y"]), 1)
    assert isinstance(result, InfeasibleReport)
    assert "commutators" in result.reason


def test_certificate_file(tmp_path: Path) -> None:
    q = InvolutiveQuotient(["x"])
    result = sos_search(_involution_sum(), q, 1)
    path = tmp_path / "cert.txt"
    write_certificate(result, path)
    loaded = read_certificate(path)
    assert isinstance(loaded, GramCertificate)
    assert loaded.basis == result.basis
    assert np.allclose(loaded.factor, result.factor)
    assert certificate_residual(loaded, _involution_sum(), q) < 1e-6


def test_infeasible_report_file(tmp_path: Path) -> None:
    report = InfeasibleReport([parse_word("1")], 0.25, 12, "mismatch floor 0.25")
    path = tmp_path / "report.txt"
    write_certificate(report, path)
    loaded = read_certificate(path)
    assert isinstance(loaded, InfeasibleReport)
    assert (loaded.residual_floor, loaded.iterations, loaded.reason) == (0.25, 12, "mismatch floor 0.25")


def test_parse_certificate_needs_sections() -> None:
    with pytest.raises(ParseError):
        parse_certificate("[basis]\n1\n")
