"""The block representation of A(m) over Q[H] for a halting input m.

With n = h(m) the auxiliary letters act on (Q[H])^{2(n+1)}, split into two
blocks indexed by Z/(n+1). C is the cyclic shift e_i -> e_{i-1} and

    U1 = [[0, C], [C^-1, 0]],   U2 = [[0, 1], [1, 0]],   so U = diag(C, C^-1),
    Xt = diag(X_{m,i} at i ; X_{m,i} at -i),   Zt likewise,
    P  = diag(P_i at i ; P_i at -i),   P_i = (1-J)/2 prod_{i<=j<n} (1 - Z_{m,j})/2,
    Q  = E_00 in both blocks,

with OP = 1 - 2P, OQ = 1 - 2Q and every letter of H acting as a scalar. The
trace tau(M) = (1/2(n+1)) sum_k tau0(M_kk) is tracial and tau(PQ) = 1/(2^{n+1}(n+1)).
All arithmetic is exact.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from ncsos_workbench.config import ReductionConfig
from ncsos_workbench.errors import BudgetExhausted, VerificationFailed
from ncsos_workbench.groups.cover import H_NAMES, InvolutiveCover
from ncsos_workbench.groups.group_ring import GroupRing, GroupRingElement
from ncsos_workbench.machines.turing import TuringMachine, run_bounded
from ncsos_workbench.presentations.provider import PresentationProvider
from ncsos_workbench.reduction.alphabet import AUX_NAMES, P, Q, x_mi, z_mi
from ncsos_workbench.reduction.compiler import compile_alpha, compile_beta, ptilde
from ncsos_workbench.reduction.relations import RelationSet
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.polynomial import (
    StarPolynomial,
    TensorPolynomial,
    quotient_involutive,
)
from ncsos_workbench.words.word import EMPTY, Generator, Word

logger = get_logger(__name__)

DEFAULT_HALTING_BUDGET = 64

Index = tuple[int, int]


class BlockMatrix:
    """Sparse square matrix with group ring entries."""

    __slots__ = ("ring", "size", "entries")

    def __init__(
        self, ring: GroupRing, size: int, entries: Mapping[Index, GroupRingElement] | None = None
    ) -> None:
        """Create a matrix, dropping zero entries."""
        self.ring = ring
        self.size = size
        self.entries: dict[Index, GroupRingElement] = {
            k: v for k, v in (entries or {}).items() if not v.is_zero()
        }

    @classmethod
    def identity(cls, ring: GroupRing, size: int) -> BlockMatrix:
        """The identity matrix."""
        return cls(ring, size, {(k, k): ring.one() for k in range(size)})

    @classmethod
    def diagonal(cls, ring: GroupRing, values: Iterable[GroupRingElement]) -> BlockMatrix:
        """diag(values)."""
        values = list(values)
        return cls(ring, len(values), {(k, k): v for k, v in enumerate(values)})

    @classmethod
    def permutation(cls, ring: GroupRing, image: list[int]) -> BlockMatrix:
        """The matrix sending e_k to e_{image[k]}."""
        return cls(ring, len(image), {(image[k], k): ring.one() for k in range(len(image))})

    def is_zero(self) -> bool:
        """Whether every entry vanishes."""
        return not self.entries

    def star(self) -> BlockMatrix:
        """Conjugate transpose (entries go through the ring involution)."""
        return BlockMatrix(self.ring, self.size, {(c, r): v.star() for (r, c), v in self.entries.items()})

    def scale_right(self, g: GroupRingElement) -> BlockMatrix:
        """M (g Id)."""
        return BlockMatrix(self.ring, self.size, {k: v * g for k, v in self.entries.items()})

    def __add__(self, other: BlockMatrix) -> BlockMatrix:
        """Entrywise sum."""
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out[k] + v if k in out else v
        return BlockMatrix(self.ring, self.size, out)

    def __sub__(self, other: BlockMatrix) -> BlockMatrix:
        """Entrywise difference."""
        return self + other * Fraction(-1)

    def __mul__(self, other: BlockMatrix | Fraction | int) -> BlockMatrix:
        """Matrix product, or scaling by a rational."""
        if not isinstance(other, BlockMatrix):
            return BlockMatrix(self.ring, self.size, {k: v * other for k, v in self.entries.items()})
        rows: dict[int, list[tuple[int, GroupRingElement]]] = {}
        for (r, c), v in other.entries.items():
            rows.setdefault(r, []).append((c, v))
        out: dict[Index, GroupRingElement] = {}
        for (r, mid), a in self.entries.items():
            for c, b in rows.get(mid, ()):
                prod = a * b
                out[(r, c)] = out[(r, c)] + prod if (r, c) in out else prod
        return BlockMatrix(self.ring, self.size, out)

    def __eq__(self, other: object) -> bool:
        """Entrywise equality."""
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None  # type: ignore[assignment]


@dataclass(eq=False)
class BlockRep:
    """pi~ for a halting input: generator images, evaluation and the trace."""

    tm: TuringMachine
    m: int
    n: int
    ring: GroupRing
    images: dict[str, BlockMatrix] = field(default_factory=dict)

    @property
    def size(self) -> int:
        """2(n+1)."""
        return 2 * (self.n + 1)

    def zero(self) -> BlockMatrix:
        """The zero matrix."""
        return BlockMatrix(self.ring, self.size)

    def evaluate(self, p: StarPolynomial) -> BlockMatrix:
        """pi~(p), computed on the image of p in the free product of Z_2's."""
        acc = self.zero()
        for w, c in quotient_involutive(p).terms.items():
            acc = acc + self.word(w) * c
        return acc

    def word(self, w: Word) -> BlockMatrix:
        """pi~(w); runs of letters of H are collapsed into one group element."""
        acc = BlockMatrix.identity(self.ring, self.size)
        run: list[Generator] = []
        for x in w:
            if x.name in H_NAMES:
                run.append(x)
                continue
            if run:
                acc = acc.scale_right(self.ring.group_element(Word(tuple(run))))
                run = []
            try:
                acc = acc * self.images[x.name]
            except KeyError:
                raise ValueError(f"letter {x.name} is not in the alphabet of A(m)") from None
        if run:
            acc = acc.scale_right(self.ring.group_element(Word(tuple(run))))
        return acc

    def tau(self, matrix: BlockMatrix) -> Fraction:
        """(1/N) sum_k tau0(M_kk)."""
        total = sum(
            (v.tau0() for (r, c), v in matrix.entries.items() if r == c), Fraction(0)
        )
        return total / self.size

    def state(self, p: StarPolynomial) -> Fraction:
        """tau(pi~(p))."""
        return self.tau(self.evaluate(p))

    def square_value(self, r: StarPolynomial) -> Fraction:
        """tau(pi~(r)* pi~(r)); zero without evaluation when r vanishes in the Z_2 quotient."""
        q = quotient_involutive(r)
        if q.is_zero():
            return Fraction(0)
        mat = self.evaluate(q)
        return self.tau(mat.star() * mat)

    def sync_value(self, t: TensorPolynomial) -> Fraction:
        """phi(t) = sum c tau(pi~(u omega(v))) for the synchronous extension."""
        return self.state(_flatten(t))

    def sync_square_value(self, s: TensorPolynomial) -> Fraction:
        """phi(s* s), which equals tau(s^* s^) for s^ = sum c u omega(v) since tau is tracial."""
        return self.square_value(_flatten(s))

    def verify(self, relations: RelationSet) -> None:
        """Check every letter is a self-adjoint involution and pi~(r) = 0 for every relation.

        Raises:
            VerificationFailed: naming the first relation that does not vanish.
        """
        one = BlockMatrix.identity(self.ring, self.size)
        for name in H_NAMES + AUX_NAMES:
            image = self.word(Word.of(name))
            if image.star() != image or image * image != one:
                raise VerificationFailed(f"pi~({name}) is not a self-adjoint involution")
        for r in relations:
            if not self.evaluate(r.polynomial).is_zero():
                raise VerificationFailed(f"pi~ does not annihilate {r.label}")
        logger.info(f"pi~ annihilates all {len(relations)} relations for m={self.m}, n={self.n}")


def _flatten(t: TensorPolynomial) -> StarPolynomial:
    acc: dict[Word, Fraction] = {}
    for (u, v), c in t.terms.items():
        w = u * v.reverse()
        acc[w] = acc.get(w, Fraction(0)) + c
    return StarPolynomial(acc)


def _block_images(ring: GroupRing, m: int, n: int) -> dict[str, BlockMatrix]:
    size = n + 1
    N = 2 * size

    def pos1(i: int) -> int:
        return i % size

    def pos2(i: int) -> int:
        return size + (-i) % size

    one = ring.one()
    shift = [(k - 1) % size for k in range(size)]
    unshift = [(k + 1) % size for k in range(size)]
    # U1 e_k = C^-1 e_k in the second block for k in the first, and C e_k back.
    u1 = [size + unshift[k] for k in range(size)] + [shift[k] for k in range(size)]
    u2 = [size + k for k in range(size)] + list(range(size))

    def diag_from(values: list[GroupRingElement]) -> BlockMatrix:
        slots = [one] * N
        for i, v in enumerate(values):
            slots[pos1(i)] = v
            slots[pos2(i)] = v
        return BlockMatrix.diagonal(ring, slots)

    xs = [ring.group_element(x_mi(m, i)) for i in range(size)]
    zs = [ring.group_element(z_mi(m, i)) for i in range(size)]
    half = Fraction(1, 2)
    j = ring.group_element(Word.of("J"))
    ps = []
    for i in range(size):
        p = (one - j) * half
        for k in range(i, n):
            p = p * ((one - zs[k]) * half)
        ps.append(p)
    op = diag_from([one - p * 2 for p in ps])
    oq_slots = [one] * N
    oq_slots[pos1(0)] = -one
    oq_slots[pos2(0)] = -one

    return {
        "U1": BlockMatrix.permutation(ring, u1),
        "U2": BlockMatrix.permutation(ring, u2),
        "Xt": diag_from(xs),
        "Zt": diag_from(zs),
        "OP": op,
        "OQ": BlockMatrix.diagonal(ring, oq_slots),
    }


def halting_rep(
    tm: TuringMachine,
    m: int,
    budget: int = DEFAULT_HALTING_BUDGET,
    cover_budget: int | None = None,
) -> BlockRep:
    """The block representation for an input m on which tm halts within budget.

    Raises:
        ValueError: if m < 1.
        BudgetExhausted: if tm does not halt on m within budget steps.
    """
    if m < 1:
        raise ValueError(f"the representation is defined for m >= 1, got {m}")
    profile = run_bounded(tm, m, budget)
    if not profile.halted:
        raise BudgetExhausted(f"{tm.name} does not halt on m={m} within {budget} steps")
    n = profile.steps
    ring = GroupRing(InvolutiveCover(tm, cover_budget))
    rep = BlockRep(tm, m, n, ring, _block_images(ring, m, n))
    logger.debug(f"block representation for {tm.name}, m={m}: h(m)={n}, size {rep.size}")
    return rep


def tau_pq(rep: BlockRep) -> Fraction:
    """tau(P Q)."""
    return rep.state(P * Q)


def expected_tau_pq(n: int) -> Fraction:
    """1 / (2^{n+1} (n+1))."""
    return Fraction(1, 2 ** (n + 1) * (n + 1))


@dataclass(frozen=True)
class StateEvaluation:
    """Exact value of a compiled reduction under the representation's state."""

    m: int
    n: int
    value: Fraction
    squares: int
    nonzero_squares: int
    penalty: Fraction
    tau_p0: Fraction

    @property
    def expected(self) -> Fraction:
        """-penalty tau(P~_0* P~_0)."""
        return -self.penalty * self.tau_p0


def eval_state_alpha(
    tm: TuringMachine,
    m: int,
    config: ReductionConfig | None = None,
    rep: BlockRep | None = None,
    provider: PresentationProvider | None = None,
) -> StateEvaluation:
    """(tau o q)(pi(alpha(m))) evaluated square by square.

    Every r* r with r in W_m or W_m* contributes tau(pi~(r)* pi~(r)), which is
    0 since pi~ annihilates R_m and factors through the Z_2 quotient.

    Raises:
        BudgetExhausted: if tm does not halt on m within the default budget.
    """
    config = config or ReductionConfig()
    rep = rep or halting_rep(tm, m)
    compiled = compile_alpha(m, tm, config, provider)
    values = [rep.square_value(r) for r in compiled.square_roots]
    p0 = rep.evaluate(ptilde(0))
    tau_p0 = rep.tau(p0.star() * p0)
    value = sum(values, Fraction(0)) - compiled.penalty * tau_p0
    out = StateEvaluation(
        m, rep.n, value, len(values), sum(1 for v in values if v), compiled.penalty, tau_p0
    )
    logger.info(f"tau(alpha({m})) = {value} over {out.squares} squares")
    return out


def eval_sync_state_beta(
    tm: TuringMachine,
    m: int,
    config: ReductionConfig | None = None,
    rep: BlockRep | None = None,
    provider: PresentationProvider | None = None,
) -> StateEvaluation:
    """phi(beta(m)) for the synchronous extension phi(a (x) b) = tau(a omega(b)).

    The synchronization squares flatten to x - x = 0 and the other squares to
    elements of W_m or their reversals, so only the penalty survives.

    Raises:
        BudgetExhausted: if tm does not halt on m within the default budget.
    """
    config = config or ReductionConfig()
    rep = rep or halting_rep(tm, m)
    compiled = compile_beta(m, tm, config, provider)
    values = [rep.sync_square_value(s) for s in compiled.square_roots + compiled.sync]
    p0sq = TensorPolynomial.left(compiled.p0.star() * compiled.p0)
    tau_p0 = rep.sync_value(p0sq)
    value = sum(values, Fraction(0)) - compiled.penalty * tau_p0
    out = StateEvaluation(
        m, rep.n, value, len(values), sum(1 for v in values if v), compiled.penalty, tau_p0
    )
    logger.info(f"phi(beta({m})) = {value} over {out.squares} squares")
    return out


def unit_tensor() -> TensorPolynomial:
    """1 (x) 1."""
    return TensorPolynomial({(EMPTY, EMPTY): 1})
