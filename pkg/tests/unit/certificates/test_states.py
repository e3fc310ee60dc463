import numpy as np
import pytest

from ncsos_workbench.certificates.states import (
    EpsilonMode,
    FiniteState,
    epsilon_of,
    perturb,
    random_unit_vector,
    random_unitary,
    random_unitary_involution,
    synchronous_state,
    tracial_state,
    vector_state,
)
from ncsos_workbench.words.polynomial import StarPolynomial, TensorPolynomial
from ncsos_workbench.words.word import parse_word

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


@pytest.fixture
def pauli() -> dict[str, np.ndarray]:
    return {"x": PAULI_X, "z": PAULI_Z}


def test_vector_and_tracial_values(pauli: dict[str, np.ndarray]) -> None:
    z = StarPolynomial.letter("z")
    assert vector_state(pauli, np.array([1.0, 0.0])).evaluate(z) == pytest.approx(1.0)
    assert tracial_state(pauli).evaluate(z) == pytest.approx(0.0)
    assert tracial_state(pauli).evaluate(z * z + 1) == pytest.approx(2.0)


def test_operator_stars_and_products(pauli: dict[str, np.ndarray]) -> None:
    state = tracial_state(pauli)
    assert np.allclose(state.operator(parse_word("x z")), PAULI_X @ PAULI_Z)
    assert np.allclose(state.operator(parse_word("x~ x")), np.eye(2))
    assert state.unitary_defect() == pytest.approx(0.0, abs=1e-12)


def test_norm(pauli: dict[str, np.ndarray]) -> None:
    state = tracial_state(pauli)
    assert state.norm(StarPolynomial.letter("x") - StarPolynomial.letter("z")) == pytest.approx(np.sqrt(2))


def test_state_validation(pauli: dict[str, np.ndarray]) -> None:
    with pytest.raises(ValueError):
        vector_state(pauli, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        FiniteState({"x": PAULI_X, "y": np.eye(3)})
    with pytest.raises(ValueError):
        tracial_state(pauli).evaluate(StarPolynomial.letter("y"))


def test_er_state_epsilon(pauli: dict[str, np.ndarray]) -> None:
    state = tracial_state(pauli)
    x, z = StarPolynomial.letter("x"), StarPolynomial.letter("z")
    assert epsilon_of(state, [x * x - 1, z * z - 1]) == pytest.approx(0.0, abs=1e-12)
    assert epsilon_of(state, [x * z - z * x]) == pytest.approx(4.0)


def test_synchronous_extension_of_a_trace() -> None:
    rng = np.random.default_rng(3)
    base = tracial_state({"a": random_unitary_involution(3, rng), "b": random_unitary_involution(3, rng)})
    sync = synchronous_state(base)
    assert epsilon_of(sync, ["a", "b"], EpsilonMode.SYNCHRONOUS) == pytest.approx(0.0, abs=1e-12)
    a = StarPolynomial.letter("a")
    assert sync.evaluate(TensorPolynomial.left(a)) == pytest.approx(base.evaluate(a))


def test_synchronous_needs_trace(pauli: dict[str, np.ndarray]) -> None:
    with pytest.raises(ValueError):
        synchronous_state(vector_state(pauli, np.array([1.0, 0.0])))


def test_tracial_defect(pauli: dict[str, np.ndarray]) -> None:
    assert epsilon_of(tracial_state(pauli), ["x", "z"], EpsilonMode.TRACIAL_DEFECT) == pytest.approx(0.0, abs=1e-12)
    v = np.array([1.0, 1j]) / np.sqrt(2)
    assert epsilon_of(vector_state(pauli, v), ["x", "z"], "tracial-defect") == pytest.approx(2.0)


def test_random_matrices() -> None:
    rng = np.random.default_rng(0)
    u = random_unitary(4, rng)
    assert np.allclose(u.conj().T @ u, np.eye(4))
    s = random_unitary_involution(4, rng)
    assert np.allclose(s @ s, np.eye(4))
    assert np.allclose(s, s.conj().T)
    assert np.linalg.norm(random_unit_vector(5, rng)) == pytest.approx(1.0)


def test_perturb_is_seeded(pauli: dict[str, np.ndarray]) -> None:
    state = tracial_state(pauli)
    first = perturb(state, 0.1, np.random.default_rng(9))
    second = perturb(state, 0.1, np.random.default_rng(9))
    assert np.allclose(first.matrices["x"], second.matrices["x"])
    assert first.unitary_defect() > 0
