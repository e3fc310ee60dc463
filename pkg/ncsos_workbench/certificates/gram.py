"""Bounded-degree Gram searches for sums of hermitian squares.

A polynomial f is a sum of squares at degree d when f = b* G b for the vector b
of canonical monomials of degree at most d and some PSD matrix G. Grouping the
pairs (i, j) by the class of b_i* b_j turns this into one linear equation per
class. An interior-point solver minimises the largest mismatch t over PSD
matrices G; a small optimum is then refined by least squares on a factor of G
until the equations hold to tolerance. For the trace version
the classes are cyclic classes, so f is matched up to commutators.

A failed search only means that this solver found no certificate at this
degree and tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import cvxpy as cp
import numpy as np
import scipy.linalg
import scipy.sparse
from scipy.optimize import least_squares

from ncsos_workbench.certificates.quotients import Quotient, cyclic_chain, reduce_polynomial
from ncsos_workbench.config import SolverConfig
from ncsos_workbench.errors import ParseError, ResourceLimit
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.polynomial import StarPolynomial
from ncsos_workbench.words.word import Word, parse_word

logger = get_logger(__name__)

# Burer-Monteiro polishing builds a dense jacobian of size classes x k^2.
POLISH_LIMIT = 40


@dataclass
class GramCertificate:
    """f = sum_k (sum_i L_ik b_i)* (sum_j L_jk b_j), plus commutators for the trace version."""

    basis: list[Word]
    factor: np.ndarray
    residual: float
    min_eigenvalue: float
    iterations: int = 0
    commutators: list[tuple[float, Word, Word]] = field(default_factory=list)

    def __post_init__(self) -> None:
        """Check the factor matches the basis."""
        k = len(self.basis)
        if self.factor.shape != (k, k):
            raise ValueError(f"factor has shape {self.factor.shape}, basis has {k} monomials")
        if self.residual < 0:
            raise ValueError(f"residual must be non-negative, got {self.residual}")

    @property
    def gram(self) -> np.ndarray:
        """G = L L^T."""
        return self.factor @ self.factor.T

    def square_roots(self, tol: float = 1e-9) -> list[dict[Word, float]]:
        """The b_k as monomial -> coefficient maps, dropping negligible ones."""
        out = []
        for col in self.factor.T:
            if np.linalg.norm(col) <= tol:
                continue
            out.append({w: float(c) for w, c in zip(self.basis, col) if abs(c) > tol})
        return out

    @property
    def feasible(self) -> bool:
        """Always true; see ``InfeasibleReport``."""
        return True


@dataclass
class InfeasibleReport:
    """No certificate at this degree: the best residual the search reached."""

    basis: list[Word]
    residual_floor: float
    iterations: int
    reason: str

    @property
    def feasible(self) -> bool:
        """Always false."""
        return False


SearchResult = GramCertificate | InfeasibleReport


@dataclass
class _Problem:
    basis: list[Word]
    classes: list[Word]
    class_ids: np.ndarray
    targets: np.ndarray


def _adjoint(quotient: Quotient, p: StarPolynomial) -> StarPolynomial:
    return p.map_words(quotient.adjoint)


def _setup(
    f: StarPolynomial, quotient: Quotient, degree: int, config: SolverConfig, cyclic: bool
) -> tuple[_Problem | None, str]:
    basis = quotient.basis(degree)
    if len(basis) > config.max_basis:
        raise ResourceLimit(
            f"degree {degree} basis has {len(basis)} monomials, the cap is {config.max_basis}"
        )

    def key(w: Word) -> Word:
        return cyclic_chain(quotient, w)[0] if cyclic else quotient.normal_form(w)

    index: dict[Word, int] = {}
    k = len(basis)
    class_ids = np.empty((k, k), dtype=np.int64)
    adjoints = [quotient.adjoint(b) for b in basis]
    for i in range(k):
        for j in range(k):
            c = key(adjoints[i] * basis[j])
            class_ids[i, j] = index.setdefault(c, len(index))
    classes = list(index)

    targets = np.zeros(len(classes))
    totals: dict[Word, Fraction] = {}
    for w, c in reduce_polynomial(quotient, f).terms.items():
        rep = key(w)
        totals[rep] = totals.get(rep, Fraction(0)) + c
    for rep, c in totals.items():
        if c == 0:
            continue
        if rep not in index:
            return None, f"monomial class {rep} of f is not reached by any pair of the basis"
        targets[index[rep]] = float(c)
    return _Problem(basis, classes, class_ids, targets), ""


def _coefficients(problem: _Problem, gram: np.ndarray) -> np.ndarray:
    return np.bincount(
        problem.class_ids.ravel(), weights=gram.ravel(), minlength=len(problem.classes)
    )


def _psd(gram: np.ndarray) -> np.ndarray:
    w, v = scipy.linalg.eigh(gram)
    return (v * np.clip(w, 0, None)) @ v.T


def _residual(problem: _Problem, gram: np.ndarray) -> float:
    return float(np.max(np.abs(_coefficients(problem, gram) - problem.targets), initial=0.0))


def _polish(problem: _Problem, gram: np.ndarray) -> np.ndarray:
    """Refine G = L L^T by least squares on the class equations."""
    k = len(problem.basis)
    w, v = scipy.linalg.eigh(gram)
    start = v * np.sqrt(np.clip(w, 0, None))
    rows, cols = np.indices((k, k))
    ids, ri, ci = problem.class_ids.ravel(), rows.ravel(), cols.ravel()
    n = len(problem.classes)

    def fun(x: np.ndarray) -> np.ndarray:
        factor = x.reshape(k, k)
        return _coefficients(problem, factor @ factor.T) - problem.targets

    def jac(x: np.ndarray) -> np.ndarray:
        factor = x.reshape(k, k)
        out = np.zeros((n, k, k))
        np.add.at(out, (ids, ri), factor[ci])
        np.add.at(out, (ids, ci), factor[ri])
        return out.reshape(n, k * k)

    result = least_squares(
        fun, start.ravel(), jac=jac, xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=500
    )
    factor = result.x.reshape(k, k)
    return factor @ factor.T


def _lower_factor(gram: np.ndarray) -> np.ndarray:
    w, v = scipy.linalg.eigh(gram)
    root = v * np.sqrt(np.clip(w, 0, None))
    # root root^T = G and root^T = Q R give G = R^T R.
    _, r = np.linalg.qr(root.T)
    return r.T


def _sdp(problem: _Problem, config: SolverConfig) -> tuple[np.ndarray | None, float, int, str]:
    """Minimise the largest coefficient mismatch t over PSD G with an interior-point solver."""
    k = len(problem.basis)
    selector = scipy.sparse.csr_matrix(
        (np.ones(k * k), (problem.class_ids.ravel(), np.arange(k * k))),
        shape=(len(problem.classes), k * k),
    )
    gram = cp.Variable((k, k), symmetric=True)
    t = cp.Variable(nonneg=True)
    # G is symmetric, so the row-major class layout matches cp.vec in either order.
    mismatch = selector @ cp.vec(gram) - problem.targets
    sdp = cp.Problem(cp.Minimize(t), [gram >> 0, cp.abs(mismatch) <= t])
    try:
        sdp.solve(
            solver=cp.CLARABEL,
            verbose=False,
            max_iter=config.max_iterations,
            tol_gap_abs=1e-10,
            tol_gap_rel=1e-10,
            tol_feas=1e-10,
        )
    except cp.SolverError as e:
        return None, float("inf"), 0, f"SDP solver failed: {e}"
    iterations = int(sdp.solver_stats.num_iters or 0) if sdp.solver_stats else 0
    if gram.value is None or t.value is None:
        return None, float("inf"), iterations, f"SDP solver returned status {sdp.status}"
    value = np.asarray(gram.value, dtype=float)
    return (value + value.T) / 2, float(t.value), iterations, str(sdp.status)


def _search(
    f: StarPolynomial, quotient: Quotient, degree: int, config: SolverConfig, cyclic: bool
) -> tuple[SearchResult, _Problem | None]:
    problem, reason = _setup(f, quotient, degree, config, cyclic)
    if problem is None:
        basis = quotient.basis(degree)
        logger.info(f"no certificate at degree {degree}: {reason}")
        return InfeasibleReport(basis, float("inf"), 0, reason), None

    k = len(problem.basis)
    solved, floor, iterations, status = _sdp(problem, config)
    if solved is None:
        logger.info(f"no certificate at degree {degree}: {status}")
        return InfeasibleReport(problem.basis, floor, iterations, status), problem
    logger.debug(f"SDP {status} after {iterations} iterations, mismatch {floor:.3g}")
    if floor > config.floor_threshold:
        reason = f"smallest coefficient mismatch over PSD Gram matrices is {floor:.3g}"
        logger.info(f"no certificate at degree {degree}: {reason}")
        return InfeasibleReport(problem.basis, floor, iterations, reason), problem

    best_gram = _psd(solved)
    best = _residual(problem, best_gram)
    if best > config.tolerance and k <= POLISH_LIMIT:
        polished = _polish(problem, best_gram)
        residual = _residual(problem, polished)
        logger.debug(f"polished residual {residual:.3g}")
        if residual < best:
            best, best_gram = residual, polished

    factor = _lower_factor(best_gram)
    gram = factor @ factor.T
    residual = _residual(problem, gram)
    min_eig = float(scipy.linalg.eigvalsh(gram)[0])
    if residual <= config.tolerance and min_eig >= -config.tolerance:
        logger.info(f"certificate at degree {degree}: {k} monomials, residual {residual:.3g}")
        cert = GramCertificate(problem.basis, factor, residual, min_eig, iterations)
        return cert, problem
    reason = f"residual {residual:.3g} above tolerance after polishing"
    logger.info(f"no certificate at degree {degree}: {reason}")
    return InfeasibleReport(problem.basis, max(floor, residual), iterations, reason), problem


def sos_search(
    f: StarPolynomial, quotient: Quotient, degree: int, config: SolverConfig | None = None
) -> SearchResult:
    """Look for f = sum b_i* b_i with b_i spanned by monomials of degree <= degree.

    Args:
        f: a self-adjoint polynomial (in the quotient).
        quotient: the monomial quotient the basis and the equations live in.
        degree: largest monomial degree of the b_i.
        config: solver settings.

    Raises:
        ValueError: if f is not self-adjoint in the quotient.
        ResourceLimit: if the basis exceeds ``config.max_basis``.
    """
    config = config or SolverConfig()
    reduced = reduce_polynomial(quotient, f)
    if _adjoint(quotient, reduced) != reduced:
        raise ValueError(f"f is not self-adjoint in the quotient: {reduced}")
    result, _ = _search(reduced, quotient, degree, config, cyclic=False)
    return result


def _commutator_part(
    f: StarPolynomial, quotient: Quotient, problem: _Problem, gram: np.ndarray
) -> list[tuple[float, Word, Word]]:
    """f - sum G_ij b_i* b_j as sum c [g, h], from the cyclic walks of every monomial."""
    acc: dict[tuple[Word, Word], float] = {}

    def add(word: Word, c: float) -> None:
        for g, h in cyclic_chain(quotient, word)[1]:
            acc[(g, h)] = acc.get((g, h), 0.0) + c

    for w, c in reduce_polynomial(quotient, f).terms.items():
        add(w, float(c))
    k = len(problem.basis)
    for i in range(k):
        left = quotient.adjoint(problem.basis[i])
        for j in range(k):
            if gram[i, j] != 0:
                add(left * problem.basis[j], -float(gram[i, j]))
    return [(c, g, h) for (g, h), c in acc.items() if c != 0]


def trace_sos_search(
    f: StarPolynomial, quotient: Quotient, degree: int, config: SolverConfig | None = None
) -> SearchResult:
    """Look for f = sum b_i* b_i + sum [g_j, h_j] at the given degree.

    A plain certificate is tried first, so a sum of squares comes back with no
    commutators. Otherwise f is matched class by class up to cyclic rotation
    and the commutators are returned explicitly.

    Raises:
        ResourceLimit: if the basis exceeds ``config.max_basis``.
    """
    config = config or SolverConfig()
    reduced = reduce_polynomial(quotient, f)
    if _adjoint(quotient, reduced) == reduced:
        plain, _ = _search(reduced, quotient, degree, config, cyclic=False)
        if isinstance(plain, GramCertificate):
            return plain

    difference = reduced - _adjoint(quotient, reduced)
    totals: dict[Word, Fraction] = {}
    for w, c in difference.terms.items():
        rep = cyclic_chain(quotient, w)[0]
        totals[rep] = totals.get(rep, Fraction(0)) + c
    if any(totals.values()):
        basis = quotient.basis(degree)
        return InfeasibleReport(basis, float("inf"), 0, "f - f* is not a sum of commutators")

    result, problem = _search(reduced, quotient, degree, config, cyclic=True)
    if isinstance(result, GramCertificate) and problem is not None:
        result.commutators = _commutator_part(reduced, quotient, problem, result.gram)
    return result


def format_certificate(result: SearchResult) -> str:
    """Render the ``[basis]``/``[factor]``/``[footer]`` certificate format."""
    lines = ["[basis]"]
    lines.extend(str(w) for w in result.basis)
    if isinstance(result, GramCertificate):
        lines.append("[factor]")
        lines.extend(" ".join(f"{v:.17g}" for v in row) for row in result.factor)
        if result.commutators:
            lines.append("[commutators]")
            lines.extend(f"{c:.17g} : {g} : {h}" for c, g, h in result.commutators)
        lines.append("[footer]")
        lines.append("status = certified")
        lines.append(f"residual = {result.residual:.17g}")
        lines.append(f"min_eigenvalue = {result.min_eigenvalue:.17g}")
    else:
        lines.append("[footer]")
        lines.append("status = infeasible")
        lines.append(f"residual_floor = {result.residual_floor:.17g}")
        lines.append(f"reason = {result.reason}")
    lines.append(f"iterations = {result.iterations}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> SearchResult:
    """Inverse of ``format_certificate``."""
    sections: dict[str, list[str]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1]
            sections[current] = []
        elif current is None:
            raise ParseError("expected a section header", raw, 0)
        else:
            sections[current].append(line)
    if "basis" not in sections or "footer" not in sections:
        raise ParseError("a certificate needs [basis] and [footer] sections", text[:80], 0)
    basis = [parse_word(line) for line in sections["basis"]]
    footer = dict((part.strip() for part in line.split("=", 1)) for line in sections["footer"])
    iterations = int(footer.get("iterations", 0))
    if footer.get("status") == "infeasible":
        return InfeasibleReport(
            basis, float(footer["residual_floor"]), iterations, footer.get("reason", "")
        )
    factor = np.array([[float(v) for v in line.split()] for line in sections.get("factor", [])])
    commutators = []
    for line in sections.get("commutators", []):
        c, g, h = line.split(":")
        commutators.append((float(c), parse_word(g), parse_word(h)))
    return GramCertificate(
        basis,
        factor.reshape(len(basis), len(basis)),
        float(footer["residual"]),
        float(footer["min_eigenvalue"]),
        iterations,
        commutators,
    )


def write_certificate(result: SearchResult, path: str | Path) -> None:
    """Write a certificate or infeasibility report."""
    Path(path).write_text(format_certificate(result))
    logger.info(f"wrote {'certificate' if result.feasible else 'infeasibility report'} to {path}")


def read_certificate(path: str | Path) -> SearchResult:
    """Read a certificate file."""
    return parse_certificate(Path(path).read_text())


def expand_certificate(cert: GramCertificate, quotient: Quotient) -> dict[Word, float]:
    """sum G_ij b_i* b_j + sum c (g h - h g) in the quotient, as floats."""
    acc: dict[Word, float] = {}
    gram = cert.gram
    for i, bi in enumerate(cert.basis):
        left = quotient.adjoint(bi)
        for j, bj in enumerate(cert.basis):
            w = quotient.normal_form(left * bj)
            acc[w] = acc.get(w, 0.0) + float(gram[i, j])
    for c, g, h in cert.commutators:
        for w, s in ((quotient.normal_form(g * h), c), (quotient.normal_form(h * g), -c)):
            acc[w] = acc.get(w, 0.0) + s
    return acc


def certificate_residual(cert: GramCertificate, f: StarPolynomial, quotient: Quotient) -> float:
    """Largest coefficient mismatch between f and the re-expanded certificate."""
    acc = expand_certificate(cert, quotient)
    for w, c in reduce_polynomial(quotient, f).terms.items():
        acc[w] = acc.get(w, 0.0) - float(c)
    return max((abs(v) for v in acc.values()), default=0.0)
