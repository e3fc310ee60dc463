import numpy as np
import pytest

from ncsos_workbench.certificates.rounding import hermitian_sign, involution_defects, sign_round


def test_sign_round_diagonal() -> None:
    a = np.diag([0.9, -1.1])
    xi = np.array([1.0, 0.0])
    rounded, report = sign_round(a, xi)
    assert np.allclose(rounded, np.diag([1.0, -1.0]))
    assert report.epsilon == pytest.approx(0.19)
    assert report.deviation == pytest.approx(0.1)
    assert report.bound == pytest.approx(0.38)
    assert report.holds()


def test_exact_involution_is_fixed() -> None:
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    xi = np.array([0.6, 0.8])
    rounded, report = sign_round(a, xi)
    assert np.allclose(rounded, a)
    assert report.epsilon == pytest.approx(0.0, abs=1e-12)
    assert report.deviation == pytest.approx(0.0, abs=1e-12)


def test_sign_of_zero_is_one() -> None:
    assert np.allclose(hermitian_sign(np.zeros((3, 3))), np.eye(3))


def test_defects_of_non_hermitian() -> None:
    a = np.array([[0.0, 1.0], [0.0, 0.0]])
    defects = involution_defects(a, np.array([1.0, 0.0]))
    assert defects[0] == pytest.approx(1.0)
    assert defects[4] == pytest.approx(1.0)


def test_random_near_involutions_respect_bound() -> None:
    rng = np.random.default_rng(7)
    for _ in range(20):
        d = int(rng.integers(2, 6))
        q, _ = np.linalg.qr(rng.standard_normal((d, d)))
        a = q @ np.diag(rng.choice([-1.0, 1.0], size=d)) @ q.T
        a = a + 0.05 * rng.standard_normal((d, d))
        xi = rng.standard_normal(d)
        xi /= np.linalg.norm(xi)
        _, report = sign_round(a, xi)
        assert report.holds()


@pytest.mark.parametrize(
    "a,xi",
    [
        (np.ones((2, 3)), np.ones(2)),
        (np.eye(2), np.ones(3)),
        (np.array([[np.nan, 0.0], [0.0, 1.0]]), np.ones(2)),
    ],
)
def test_sign_round_rejects(a: np.ndarray, xi: np.ndarray) -> None:
    with pytest.raises(ValueError):
        sign_round(a, xi)
