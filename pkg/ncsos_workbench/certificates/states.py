"""Finite-dimensional states on *-algebras and their tensor squares.

A ``FiniteState`` assigns a matrix to every letter and evaluates polynomials
either in a vector state <v, pi(p) v> or in the normalized trace tr(pi(p))/d.
A ``TensorState`` does the same on C^d (x) C^d with separate matrices for the
two factors. The epsilon of a state measures how far it is from a
representation of a relation set, from being synchronous, or from being
tracial.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.stats import unitary_group

from ncsos_workbench.reduction.relations import RelationSet
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.polynomial import StarPolynomial, TensorPolynomial
from ncsos_workbench.words.word import Generator, Word

logger = get_logger(__name__)

NORMALIZATION_TOL = 1e-9


class EpsilonMode(str, Enum):
    """What ``epsilon_of`` measures."""

    ER_STATE = "er-state"
    SYNCHRONOUS = "synchronous"
    TRACIAL_DEFECT = "tracial-defect"


def _name(x: Generator | str) -> str:
    return x if isinstance(x, str) else x.name


def _operator(matrices: Mapping[str, np.ndarray], word: Word, dim: int) -> np.ndarray:
    out = np.eye(dim, dtype=complex)
    for x in word:
        try:
            m = matrices[x.name]
        except KeyError:
            raise ValueError(f"the state has no matrix for the letter {x.name}") from None
        out = out @ (m.conj().T if x.starred else m)
    return out


def tracial_norm(matrix: np.ndarray) -> float:
    """sqrt(tr(M* M)/d)."""
    return float(np.linalg.norm(matrix) / np.sqrt(matrix.shape[0]))


@dataclass(frozen=True, eq=False)
class FiniteState:
    """psi(p) = <v, pi(p) v>, or tr(pi(p))/d when ``vector`` is None."""

    matrices: Mapping[str, np.ndarray]
    vector: np.ndarray | None = None
    _cache: dict[Word, np.ndarray] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        """Check shapes and the normalization of the vector."""
        dims = {m.shape for m in self.matrices.values()}
        if len(dims) != 1:
            raise ValueError(f"generator matrices must share one square shape, got {dims}")
        (shape,) = dims
        if len(shape) != 2 or shape[0] != shape[1]:
            raise ValueError(f"generator matrices must be square, got {shape}")
        if self.vector is not None:
            if self.vector.shape != (shape[0],):
                raise ValueError(f"vector must have length {shape[0]}")
            if abs(np.linalg.norm(self.vector) - 1) > NORMALIZATION_TOL:
                raise ValueError("the state vector must be a unit vector")

    @property
    def dim(self) -> int:
        """Dimension of the representation space."""
        return next(iter(self.matrices.values())).shape[0]

    @property
    def tracial(self) -> bool:
        """Whether this is the normalized trace."""
        return self.vector is None

    def operator(self, word: Word) -> np.ndarray:
        """pi(word); a starred letter maps to the conjugate transpose.

        Suffix products are cached, relation sets share them heavily.
        """
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        k = len(word)
        for start in range(1, len(word)):
            if word[start:] in self._cache:
                k = start
                break
        acc = self._cache[word[k:]] if k < len(word) else np.eye(self.dim, dtype=complex)
        for start in range(k - 1, -1, -1):
            acc = _operator(self.matrices, word[start : start + 1], self.dim) @ acc
            self._cache[word[start:]] = acc
        return acc

    def polynomial_operator(self, p: StarPolynomial) -> np.ndarray:
        """pi(p)."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for w, c in p.terms.items():
            out += float(c) * self.operator(w)
        return out

    def expectation(self, matrix: np.ndarray) -> complex:
        """The state applied to an operator."""
        if self.vector is None:
            return complex(np.trace(matrix) / self.dim)
        return complex(self.vector.conj() @ matrix @ self.vector)

    def evaluate(self, p: StarPolynomial) -> complex:
        """psi(p)."""
        return self.expectation(self.polynomial_operator(p))

    def norm(self, p: StarPolynomial) -> float:
        """||p||_psi = sqrt(psi(p* p))."""
        m = self.polynomial_operator(p)
        if self.vector is None:
            return tracial_norm(m)
        return float(np.linalg.norm(m @ self.vector))

    def unitary_defect(self) -> float:
        """max over letters of ||A* A - 1||_2."""
        eye = np.eye(self.dim)
        return max(
            (float(np.linalg.norm(m.conj().T @ m - eye, 2)) for m in self.matrices.values()),
            default=0.0,
        )

    def replace(self, matrices: Mapping[str, np.ndarray]) -> FiniteState:
        """The same kind of state with new generator matrices."""
        return FiniteState(dict(matrices), self.vector)


def vector_state(matrices: Mapping[str, np.ndarray], vector: np.ndarray) -> FiniteState:
    """<v, . v> for a unit vector v."""
    return FiniteState(dict(matrices), np.asarray(vector, dtype=complex))


def tracial_state(matrices: Mapping[str, np.ndarray]) -> FiniteState:
    """The normalized trace."""
    return FiniteState(dict(matrices))


@dataclass(frozen=True, eq=False)
class TensorState:
    """phi(a (x) b) = <psi, (pi_L(a) (x) pi_R(b)) psi> on C^d (x) C^d.

    psi is stored as a d x d matrix Psi, so (A (x) B) psi is A Psi B^T.
    """

    left: Mapping[str, np.ndarray]
    right: Mapping[str, np.ndarray]
    psi: np.ndarray

    def __post_init__(self) -> None:
        """Check shapes and normalization."""
        d = self.psi.shape[0]
        if self.psi.shape != (d, d):
            raise ValueError(f"psi must be a square matrix, got {self.psi.shape}")
        for m in list(self.left.values()) + list(self.right.values()):
            if m.shape != (d, d):
                raise ValueError(f"operators must be {d} x {d}, got {m.shape}")
        if abs(np.linalg.norm(self.psi) - 1) > NORMALIZATION_TOL:
            raise ValueError("psi must be a unit vector")

    @property
    def dim(self) -> int:
        """Dimension of one factor."""
        return self.psi.shape[0]

    def _apply(self, p: TensorPolynomial) -> np.ndarray:
        out = np.zeros_like(self.psi, dtype=complex)
        for (u, v), c in p.terms.items():
            a = _operator(self.left, u, self.dim)
            b = _operator(self.right, v, self.dim)
            out += float(c) * (a @ self.psi @ b.T)
        return out

    def evaluate(self, p: TensorPolynomial) -> complex:
        """phi(p)."""
        return complex(np.sum(self.psi.conj() * self._apply(p)))

    def norm(self, p: TensorPolynomial) -> float:
        """||p||_phi."""
        return float(np.linalg.norm(self._apply(p)))


def synchronous_state(state: FiniteState) -> TensorState:
    """Extend the normalized trace to C^d (x) C^d with phi(a (x) b) = tau(a omega(b)).

    Uses the maximally entangled vector and the transposed matrices on the
    right factor.
    """
    if not state.tracial:
        raise ValueError("the synchronous extension needs the normalized trace")
    d = state.dim
    right = {name: m.T for name, m in state.matrices.items()}
    return TensorState(dict(state.matrices), right, np.eye(d, dtype=complex) / np.sqrt(d))


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar random unitary."""
    return unitary_group.rvs(d, random_state=rng) if d > 1 else np.ones((1, 1), dtype=complex)


def random_unitary_involution(d: int, rng: np.random.Generator) -> np.ndarray:
    """V diag(+-1) V* for a Haar random V."""
    v = random_unitary(d, rng)
    signs = rng.choice([-1.0, 1.0], size=d)
    return (v * signs) @ v.conj().T


def random_near_involution(d: int, rng: np.random.Generator, scale: float) -> np.ndarray:
    """A unitary involution plus complex Gaussian noise of operator size about ``scale``."""
    noise = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return random_unitary_involution(d, rng) + scale * noise / np.sqrt(2 * d)


def random_unit_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform random unit vector in C^d."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def perturb(state: FiniteState, scale: float, rng: np.random.Generator) -> FiniteState:
    """Add independent complex Gaussian noise of size about ``scale`` to every matrix."""
    d = state.dim
    out = {}
    for name in sorted(state.matrices):
        noise = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        out[name] = state.matrices[name] + scale * noise / np.sqrt(2 * d)
    return state.replace(out)


def epsilon_of(
    state: FiniteState | TensorState,
    relations: RelationSet | Sequence[StarPolynomial] | Sequence[TensorPolynomial] | Sequence[str | Generator],
    mode: EpsilonMode | str = EpsilonMode.ER_STATE,
) -> float:
    """The smallest epsilon the state certifies.

    Modes:
        er-state: max over r in R and R* of psi(r* r).
        synchronous: max over generators x of ||x (x) 1 - 1 (x) x||_phi^2.
        tracial-defect: max over letters a, b and their stars of |psi(ab) - psi(ba)|.
    """
    mode = EpsilonMode(mode)
    if mode is EpsilonMode.ER_STATE:
        values = [0.0]
        polys = relations.polynomials() if isinstance(relations, RelationSet) else relations
        for r in polys:
            if isinstance(r, TensorPolynomial):
                if not isinstance(state, TensorState):
                    raise ValueError("tensor relations need a tensor state")
                values.extend([state.norm(r) ** 2, state.norm(r.star()) ** 2])
            elif isinstance(state, TensorState):
                t = TensorPolynomial.left(r)
                values.extend([state.norm(t) ** 2, state.norm(t.star()) ** 2])
            else:
                values.extend([state.norm(r) ** 2, state.norm(r.star()) ** 2])
        return max(values)

    names = [_name(x) for x in relations]  # type: ignore[arg-type]
    if mode is EpsilonMode.SYNCHRONOUS:
        if not isinstance(state, TensorState):
            raise ValueError("synchronous epsilon needs a tensor state")
        values = [0.0]
        for name in names:
            x = StarPolynomial.letter(name)
            values.append(state.norm(TensorPolynomial.left(x) - TensorPolynomial.right(x)) ** 2)
        return max(values)

    if not isinstance(state, FiniteState):
        raise ValueError("the tracial defect is defined for states on one algebra")
    letters = [Word((Generator(n, s),)) for n in names for s in (False, True)]
    ops = [state.operator(w) for w in letters]
    defect = 0.0
    for a in ops:
        for b in ops:
            defect = max(defect, abs(state.expectation(a @ b) - state.expectation(b @ a)))
    return defect
