"""Compiled reductions alpha(m) and beta(m).

alpha(m) = sum over r in W_m and W_m* of r* r  -  P~_0* P~_0 / (Lambda~^2 m^(2k'))

with W_m = W(R_m) u W(R_m*) u W(P~_0) u R_m, and

beta(m) = sum over r in the tensor set and its star of r* r
          + sum over letters x of (x(x)1 - 1(x)x)* (x(x)1 - 1(x)x)
          - (P~_0* P~_0 (x) 1) / (Gamma~^2 m^(2k')).

The compiled objects keep the list of squared elements and the penalty so that
states can be evaluated term by term; the expanded polynomial is built lazily.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from ncsos_workbench.config import ReductionConfig
from ncsos_workbench.machines.turing import TuringMachine
from ncsos_workbench.presentations.provider import PresentationProvider, TruncatedProvider
from ncsos_workbench.reduction.alphabet import P, Q, U, XT, letters
from ncsos_workbench.reduction.relations import DEFAULT_I_BOUND, RelationSet, relations_Rm
from ncsos_workbench.reduction.wmap import sync_terms, tensor_wmap, wmap
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.polynomial import StarPolynomial, TensorPolynomial
from ncsos_workbench.words.word import Word

logger = get_logger(__name__)


def xtilde(n: int) -> Word:
    """X~_n = U^n Xt U^-n, a monomial of degree 4n + 1."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return U.power(n) * XT * U.power(-n)


def ptilde(n: int) -> StarPolynomial:
    """P~_n = Q U^n P U^-n Q."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return Q * U.power(n) * P * U.power(-n) * Q


def _dedup(polys: list) -> list:
    seen: set[tuple] = set()
    out = []
    for p in polys:
        key = tuple(p.items())
        if key not in seen:
            seen.add(key)
            out.append(p)
    return out


def build_w_m(relations: RelationSet) -> RelationSet:
    """W_m: rounding relations of R_m, of R_m* and of P~_0, together with R_m."""
    defining = relations.defining()
    polys = defining.polynomials()
    rounding = wmap(polys + [p.star() for p in polys] + [ptilde(0)])
    return RelationSet(list(rounding) + list(defining), f"W_{relations.name}")


@dataclass(frozen=True, eq=False)
class CompiledAlpha:
    """alpha(m) in structured form."""

    m: int
    relations: RelationSet
    w_m: RelationSet
    penalty: Fraction

    @cached_property
    def square_roots(self) -> list[StarPolynomial]:
        """Elements r of W_m and W_m*, each entering alpha as r* r."""
        polys = self.w_m.polynomials()
        return _dedup(polys + [p.star() for p in polys])

    @cached_property
    def p0(self) -> StarPolynomial:
        """P~_0."""
        return ptilde(0)

    @cached_property
    def polynomial(self) -> StarPolynomial:
        """The expanded *-polynomial."""
        squares = StarPolynomial.sum(r.star() * r for r in self.square_roots)
        out = squares - self.p0.star() * self.p0 * self.penalty
        logger.debug(f"alpha({self.m}) expanded to {len(out)} terms")
        return out

    def support(self) -> list:
        """Monomials of the expanded polynomial."""
        return self.polynomial.support()


@dataclass(frozen=True, eq=False)
class CompiledBeta:
    """beta(m) in structured form."""

    m: int
    relations: RelationSet
    square_roots: list[TensorPolynomial]
    sync: list[TensorPolynomial]
    penalty: Fraction

    @cached_property
    def p0(self) -> StarPolynomial:
        """P~_0."""
        return ptilde(0)

    @cached_property
    def polynomial(self) -> TensorPolynomial:
        """The expanded tensor polynomial."""
        parts = [r.star() * r for r in self.square_roots]
        parts.extend(s.star() * s for s in self.sync)
        p0sq = TensorPolynomial.left(self.p0.star() * self.p0)
        parts.append(-(p0sq * self.penalty))
        out = TensorPolynomial.sum(parts)
        logger.debug(f"beta({self.m}) expanded to {len(out)} terms")
        return out


def _provider(tm: TuringMachine, provider: PresentationProvider | None) -> PresentationProvider:
    return provider if provider is not None else TruncatedProvider(tm)


def compile_alpha(
    m: int,
    tm: TuringMachine,
    config: ReductionConfig | None = None,
    provider: PresentationProvider | None = None,
    i_bound: int = DEFAULT_I_BOUND,
) -> CompiledAlpha:
    """alpha(m) for the machine tm."""
    if m < 1:
        raise ValueError(f"alpha is defined for m >= 1, got {m}")
    config = config or ReductionConfig()
    relations = relations_Rm(m, _provider(tm, provider), i_bound)
    w_m = build_w_m(relations)
    logger.info(f"compiled alpha({m}) for {tm.name}: |W_m| = {len(w_m)}")
    return CompiledAlpha(m, relations, w_m, config.alpha_penalty(m))


def compile_beta(
    m: int,
    tm: TuringMachine,
    config: ReductionConfig | None = None,
    provider: PresentationProvider | None = None,
    i_bound: int = DEFAULT_I_BOUND,
) -> CompiledBeta:
    """beta(m) for the machine tm."""
    if m < 1:
        raise ValueError(f"beta is defined for m >= 1, got {m}")
    config = config or ReductionConfig()
    relations = relations_Rm(m, _provider(tm, provider), i_bound)
    w_m = build_w_m(relations)
    generators = letters()
    roots = tensor_wmap(w_m, generators)
    roots = _dedup(roots + [r.star() for r in roots])
    logger.info(f"compiled beta({m}) for {tm.name}: {len(roots)} squared tensors")
    return CompiledBeta(m, relations, roots, sync_terms(generators), config.beta_penalty(m))
