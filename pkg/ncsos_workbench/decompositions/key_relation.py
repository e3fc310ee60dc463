"""Decompositions of P~_n + X~_n P~_n X~_n - P~_{n+1} before the machine halts.

With f = Q U^n (P + Xt P Xt - U P U*) U^-n and g = U^n (1 + J Xt Zt Xt Zt) U^-n Q
the target T_n satisfies

    T_n = 1/2 f g - 1/2 f (g - 2Q) - (f Q - T_n).

f g is Q U^n R6 U^-n Q and needs four entries. g - 2Q is reached by pushing U
to the right through the letters of H and the tilde letters, moving OQ to the
left (trading Xt, Zt for X_{m0}, Z_{m0} on the way) and finally removing the
relator J X_mn Z_mn X_mn Z_mn, which lies in R1 once the index window covers n.
f Q - T_n is zero after both sides are brought to the same normal form with
U pushed right, U* pushed left and OQ pushed right.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from ncsos_workbench.config import ReductionConfig
from ncsos_workbench.decompositions.chain import ChainBuilder, RewriteRule, make_rule
from ncsos_workbench.decompositions.decomposition import (
    Entry,
    RDecomposition,
    combine,
    compose,
    from_relator_product,
    multiply,
    scale,
    size,
    verify,
)
from ncsos_workbench.errors import VerificationFailed
from ncsos_workbench.machines.turing import TuringMachine, halting_time
from ncsos_workbench.presentations.provider import TruncatedProvider
from ncsos_workbench.reduction.alphabet import HALF, ONE, P, Q, S, T, U, U_STAR, XT, ZT
from ncsos_workbench.reduction.compiler import ptilde, xtilde
from ncsos_workbench.reduction.relations import DEFAULT_I_BOUND, RelationSet, relations_Rm
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.polynomial import StarPolynomial, quotient_involutive, word_poly
from ncsos_workbench.words.word import EMPTY, Word

logger = get_logger(__name__)

OQ = Word.of("OQ")
COMMUTING = ("J", "X", "Z", "S", "T")
UNITARY = {"S": S, "T": T}


def _y(name: str) -> Word:
    return UNITARY.get(name, Word.of(name))


def push_u_right(relations: RelationSet) -> list[RewriteRule]:
    """U Y -> Y U for the letters of H, U Xt -> S Xt S* U and U Zt -> T Zt T* U."""
    rules = []
    for name in COMMUTING:
        y = _y(name)
        label = f"R2:[U,{name}]"
        rules.append(make_rule(relations, label, U * y))
        if name in UNITARY:
            rules.append(make_rule(relations, label, U * y.star(), left=y.star(), right=y.star()))
    rules.append(make_rule(relations, "R4:UXtU*-SXtS*", U * XT, right=U))
    rules.append(make_rule(relations, "R4:UZtU*-TZtT*", U * ZT, right=U))
    return rules


def pull_u_star_left(relations: RelationSet) -> list[RewriteRule]:
    """Y U* -> U* Y, Xt U* -> U* S Xt S* and Zt U* -> U* T Zt T*."""
    rules = []
    for name in COMMUTING:
        y = _y(name)
        label = f"R2:[U,{name}]"
        rules.append(make_rule(relations, label, y * U_STAR, left=U_STAR, right=U_STAR))
        if name in UNITARY:
            rules.append(
                make_rule(
                    relations, label, y.star() * U_STAR, left=U_STAR * y.star(), right=y.star() * U_STAR
                )
            )
    rules.append(make_rule(relations, "R4:UXtU*-SXtS*", XT * U_STAR, left=U_STAR))
    rules.append(make_rule(relations, "R4:UZtU*-TZtT*", ZT * U_STAR, left=U_STAR))
    return rules


def push_oq_right(relations: RelationSet) -> list[RewriteRule]:
    """OQ Y -> Y OQ for Y in J, X, Z, S, S*, T, T*, Xt and Zt."""
    rules = []
    for name in COMMUTING:
        y = _y(name)
        label = f"R2:[Q,{name}]"
        rules.append(make_rule(relations, label, OQ * y))
        if name in UNITARY:
            rules.append(make_rule(relations, label, OQ * y.star(), left=y.star(), right=y.star()))
    rules.append(make_rule(relations, "R3:[Xt,Q]", OQ * XT))
    rules.append(make_rule(relations, "R3:[Zt,Q]", OQ * ZT))
    return rules


def pull_oq_left(relations: RelationSet) -> list[RewriteRule]:
    """OQ Xt -> Xt - X_m0 + OQ X_m0 and the same for Zt, then Y OQ -> OQ Y.

    The two trading rules come first and are meant for ``priority`` rewriting.
    """
    rules = [
        make_rule(relations, "R3:XtQ-Xm0Q", OQ * XT, starred=True),
        make_rule(relations, "R3:ZtQ-Zm0Q", OQ * ZT, starred=True),
    ]
    for name in ("J", "S", "T"):
        y = _y(name)
        label = f"R2:[Q,{name}]"
        rules.append(make_rule(relations, label, y * OQ))
        if name in UNITARY:
            rules.append(make_rule(relations, label, y.star() * OQ, left=y.star(), right=y.star()))
    rules.append(make_rule(relations, "R3:[Xt,Q]", XT * OQ))
    rules.append(make_rule(relations, "R3:[Zt,Q]", ZT * OQ))
    return rules


def normalizing_rules(relations: RelationSet) -> list[RewriteRule]:
    """Rules whose normal forms agree on f Q and on the key relation target."""
    return push_u_right(relations) + pull_u_star_left(relations) + push_oq_right(relations)


def key_target(n: int) -> StarPolynomial:
    """P~_n + X~_n P~_n X~_n - P~_{n+1}."""
    x = word_poly(xtilde(n))
    return ptilde(n) + x * ptilde(n) * x - ptilde(n + 1)


def _f(n: int) -> StarPolynomial:
    Xt = word_poly(XT)
    inner = P + Xt * P * Xt - word_poly(U) * P * word_poly(U_STAR)
    return Q * U.power(n) * inner * U.power(-n)


def _g(n: int) -> StarPolynomial:
    core = ONE + word_poly(Word.of("J", "Xt", "Zt", "Xt", "Zt"))
    return word_poly(U.power(n)) * core * U.power(-n) * Q


def _r6_part(relations: RelationSet, n: int) -> RDecomposition:
    """Q U^n R6 U^-n Q, with Q = (1 - OQ)/2 on both sides."""
    index = relations.index_of("R6")
    halves = [(EMPTY, HALF), (OQ, -HALF)]
    entries = [
        Entry(ca * cb, a * U.power(n), index, False, U.power(-n) * b)
        for a, ca in halves
        for b, cb in halves
    ]
    target = Q * U.power(n) * relations.polynomial(index) * U.power(-n) * Q
    return RDecomposition(relations, target, entries)


def _g_part(relations: RelationSet, provider: TruncatedProvider, m: int, n: int) -> RDecomposition:
    """g - 2Q."""
    chain = ChainBuilder(relations, _g(n))
    chain.rewrite(push_u_right(relations))
    chain.rewrite(pull_oq_left(relations), priority=True)
    relator = provider.key_relator(m, n)
    chain.eliminate(from_relator_product([(EMPTY, relator, False)], relations))
    expected = quotient_involutive(Q * 2)
    if chain.current != expected:
        raise VerificationFailed(f"chain for g stopped at {chain.current}, expected {expected}")
    return chain.decomposition()


def _normal_form_part(relations: RelationSet, f: StarPolynomial, n: int) -> RDecomposition:
    """f Q - T_n, via a common normal form."""
    rules = normalizing_rules(relations)
    left = ChainBuilder(relations, f * Q)
    left.rewrite(rules)
    right = ChainBuilder(relations, key_target(n))
    right.rewrite(rules)
    if left.current != right.current:
        difference = left.current - right.current
        raise VerificationFailed(f"normal forms of f Q and T_{n} differ by {difference}")
    return compose(left.decomposition(), scale(-1, right.decomposition()))


def decompose_key_relation(
    m: int,
    n: int,
    tm: TuringMachine,
    provider: TruncatedProvider | None = None,
    config: ReductionConfig | None = None,
    budget: int | None = None,
) -> RDecomposition:
    """An R_m-decomposition of P~_n + X~_n P~_n X~_n - P~_{n+1} for 0 <= n < h(m).

    Args:
        m: machine input, m >= 1.
        n: step index below the halting time.
        tm: the machine.
        provider: presentation provider (a truncated one by default).
        config: reduction constants; the size is logged against C ((n+1) m)^k.
        budget: steps simulated to check n < h(m) (defaults to n).

    Raises:
        ValueError: if m < 1, n < 0 or the machine halts at or before step n.
        VerificationFailed: if one of the internal chains does not close.
    """
    if m < 1 or n < 0:
        raise ValueError(f"need m >= 1 and n >= 0, got m={m}, n={n}")
    h = halting_time(tm, m, n if budget is None else max(budget, n))
    if h is not None and n >= h:
        raise ValueError(f"{tm.name} halts on m={m} at step {h}; the key relation needs n < {h}")
    provider = provider or TruncatedProvider(tm)
    config = config or ReductionConfig()
    relations = relations_Rm(m, provider, max(DEFAULT_I_BOUND, n))

    f = _f(n)
    g_part = _g_part(relations, provider, m, n)
    parts = [
        (HALF, _r6_part(relations, n)),
        (-HALF, multiply(g_part, left=f)),
        (-1, _normal_form_part(relations, f, n)),
    ]
    d = combine(relations, parts)
    d = RDecomposition(relations, key_target(n), d.entries)
    result = verify(d)
    if not result:
        raise VerificationFailed(f"key relation decomposition for m={m}, n={n} is off by {result.difference}")
    s = size(d)
    bound = config.size_bound(m, n)
    logger.info(
        f"key relation m={m} n={n}: {len(d)} entries, size {float(s.value):.1f} "
        f"(C((n+1)m)^k = {float(bound):.1f})"
    )
    return d


def size_exponent(points: list[tuple[int, Fraction]]) -> float:
    """Least-squares slope of log(size) against log(x) over points (x, size)."""
    xs = np.log([float(x) for x, _ in points])
    ys = np.log([float(s) for _, s in points])
    if len(points) < 2 or np.ptp(xs) == 0:
        return 0.0
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)
