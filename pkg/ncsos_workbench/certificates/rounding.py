"""Rounding an approximate unitary involution to an exact one.

For a matrix A that nearly satisfies A^2 = A*^2 = A A* = A* A = 1 and A = A*
on a vector xi, the sign of its hermitian part is a unitary involution that
moves xi by at most twice the largest of those five defects.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from ncsos_workbench.errors import VerificationFailed
from ncsos_workbench.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RoundingReport:
    """The five defects on xi, their maximum and the distance moved."""

    residuals: tuple[float, float, float, float, float]
    epsilon: float
    deviation: float

    @property
    def bound(self) -> float:
        """2 epsilon."""
        return 2 * self.epsilon

    def holds(self, slack: float = 1e-9) -> bool:
        """Whether deviation <= 2 epsilon + slack."""
        return self.deviation <= self.bound + slack


def involution_defects(a: np.ndarray, xi: np.ndarray) -> tuple[float, float, float, float, float]:
    """||(A^2-1)xi||, ||(A*^2-1)xi||, ||(AA*-1)xi||, ||(A*A-1)xi||, ||(A-A*)xi||."""
    eye = np.eye(a.shape[0])
    ah = a.conj().T
    return (
        float(np.linalg.norm((a @ a - eye) @ xi)),
        float(np.linalg.norm((ah @ ah - eye) @ xi)),
        float(np.linalg.norm((a @ ah - eye) @ xi)),
        float(np.linalg.norm((ah @ a - eye) @ xi)),
        float(np.linalg.norm((a - ah) @ xi)),
    )


def hermitian_sign(h: np.ndarray) -> np.ndarray:
    """sgn of a hermitian matrix through its eigendecomposition, with sgn(0) = 1.

    Raises:
        VerificationFailed: if the eigensolver does not converge.
    """
    try:
        w, v = scipy.linalg.eigh(h)
    except (scipy.linalg.LinAlgError, ValueError) as e:
        raise VerificationFailed(f"eigendecomposition failed: {e}") from e
    signs = np.where(w >= 0, 1.0, -1.0)
    return (v * signs) @ v.conj().T


def sign_round(a: np.ndarray, xi: np.ndarray) -> tuple[np.ndarray, RoundingReport]:
    """A~ = sgn((A + A*)/2) and the report on ||(A - A~) xi|| <= 2 epsilon.

    Raises:
        ValueError: if A is not square, xi has the wrong length, or the input
            is not finite.
        VerificationFailed: if the eigensolver fails.
    """
    a = np.asarray(a)
    xi = np.asarray(xi)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"A must be square, got shape {a.shape}")
    if xi.shape != (a.shape[0],):
        raise ValueError(f"xi must have length {a.shape[0]}, got shape {xi.shape}")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(xi))):
        raise ValueError("A and xi must be finite")
    rounded = hermitian_sign((a + a.conj().T) / 2)
    residuals = involution_defects(a, xi)
    report = RoundingReport(
        residuals, max(residuals), float(np.linalg.norm((a - rounded) @ xi))
    )
    if not report.holds():
        logger.warning(f"rounding moved xi by {report.deviation:.3g} > 2 eps = {report.bound:.3g}")
    return rounded, report
