"""Build decompositions by rewriting a polynomial one relation at a time.

A ``ChainBuilder`` starts from a polynomial f and keeps a current polynomial c
together with entries satisfying f - c = sum of entries in the quotient
algebra. A rewrite rule is licensed by a relation: if rho = left r right
contains the pattern with coefficient k, then a term l u pattern v may be
replaced by -l u (rho - k pattern)/k v at the cost of the entry
(l/k, u left, r, right v).
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction

from ncsos_workbench.decompositions.decomposition import Entry, RDecomposition, multiply
from ncsos_workbench.errors import VerificationFailed
from ncsos_workbench.reduction.relations import RelationSet
from ncsos_workbench.utils.logging import get_logger
from ncsos_workbench.words.polynomial import StarPolynomial, involutive_reduce, quotient_involutive
from ncsos_workbench.words.word import EMPTY, Generator, Word

logger = get_logger(__name__)

DEFAULT_MAX_STEPS = 200_000


@dataclass(frozen=True, eq=False)
class RewriteRule:
    """pattern -> replacement, licensed by relation ``index`` (starred or not)."""

    name: str
    index: int
    starred: bool
    left: Word
    right: Word
    pattern: Word
    coefficient: Fraction
    replacement: StarPolynomial


def make_rule(
    relations: RelationSet,
    label: str,
    pattern: Word,
    starred: bool = False,
    left: Word = EMPTY,
    right: Word = EMPTY,
    name: str | None = None,
) -> RewriteRule:
    """Derive the rule that eliminates ``pattern`` using ``left r right``.

    Raises:
        VerificationFailed: if the pattern does not occur in left r right.
    """
    index = relations.index_of(label)
    rho = quotient_involutive(
        StarPolynomial.monomial(left) * relations.polynomial(index, starred) * right
    )
    pattern = involutive_reduce(pattern)
    k = rho.coefficient(pattern)
    name = name or f"{pattern} via {label}"
    if k == 0:
        raise VerificationFailed(f"rule {name!r} is not licensed: {pattern} is not a monomial of {rho}")
    replacement = StarPolynomial.monomial(pattern) - rho * (1 / k)
    return RewriteRule(
        name, index, starred, involutive_reduce(left), involutive_reduce(right), pattern, k, replacement
    )


def find(word: Word, pattern: Word, start: int = 0) -> int:
    """First position >= start where pattern occurs in word, or -1."""
    letters, target = word.letters, pattern.letters
    k = len(target)
    for pos in range(start, len(letters) - k + 1):
        if letters[pos : pos + k] == target:
            return pos
    return -1


class ChainBuilder:
    """Track f - current = sum of entries while rewriting current."""

    def __init__(
        self, relations: RelationSet, start: StarPolynomial, max_steps: int = DEFAULT_MAX_STEPS
    ) -> None:
        """Start a chain at f (taken in the quotient algebra)."""
        self.relations = relations
        self.start = quotient_involutive(start)
        self._current: dict[Word, Fraction] = dict(self.start.terms)
        self.entries: list[Entry] = []
        self.max_steps = max_steps
        self.steps = 0

    @property
    def current(self) -> StarPolynomial:
        """The polynomial reached so far."""
        return StarPolynomial(self._current)

    def _add(self, word: Word, c: Fraction) -> None:
        value = self._current.get(word, Fraction(0)) + c
        if value:
            self._current[word] = value
        else:
            self._current.pop(word, None)

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.max_steps:
            raise VerificationFailed(f"rewriting did not terminate within {self.max_steps} steps")

    def apply(self, rule: RewriteRule, word: Word, position: int) -> None:
        """Rewrite the pattern occurrence at ``position`` of the term ``word``."""
        lam = self._current[word]
        u = word[:position]
        v = word[position + len(rule.pattern) :]
        self._tick()
        self.entries.append(
            Entry(
                lam / rule.coefficient,
                involutive_reduce(u * rule.left),
                rule.index,
                rule.starred,
                involutive_reduce(rule.right * v),
            )
        )
        self._add(word, -lam)
        for w, c in rule.replacement.terms.items():
            self._add(involutive_reduce(u * w * v), lam * c)

    def rewrite(self, rules: Sequence[RewriteRule], priority: bool = False) -> int:
        """Apply rules at the leftmost match of each term until none applies.

        Among rules matching at the same position, the earlier one wins. With
        ``priority`` the earliest rule matching anywhere in the term wins.
        Returns the number of rewrites performed.
        """
        by_first: dict[Generator, list[RewriteRule]] = {}
        for rule in rules:
            by_first.setdefault(rule.pattern.letters[0], []).append(rule)
        clean: set[Word] = set()
        count = 0
        while True:
            todo = [w for w in self._current if w not in clean]
            if not todo:
                break
            for word in sorted(todo, key=lambda w: w.sort_key):
                if word not in self._current:
                    continue
                if priority:
                    match = self._first_rule(word, rules)
                else:
                    match = self._leftmost(word, by_first)
                if match is None:
                    clean.add(word)
                    continue
                rule, position = match
                self.apply(rule, word, position)
                count += 1
        logger.debug(f"{count} rewrites, {len(self._current)} terms left")
        return count

    @staticmethod
    def _first_rule(word: Word, rules: Sequence[RewriteRule]) -> tuple[RewriteRule, int] | None:
        for rule in rules:
            pos = find(word, rule.pattern)
            if pos >= 0:
                return rule, pos
        return None

    @staticmethod
    def _leftmost(
        word: Word, by_first: dict[Generator, list[RewriteRule]]
    ) -> tuple[RewriteRule, int] | None:
        letters = word.letters
        n = len(letters)
        for pos, x in enumerate(letters):
            for rule in by_first.get(x, ()):
                k = len(rule.pattern.letters)
                if pos + k <= n and letters[pos : pos + k] == rule.pattern.letters:
                    return rule, pos
        return None

    def eliminate(self, relator: RDecomposition) -> int:
        """Replace every occurrence of w by 1, given a decomposition of w - 1.

        Raises:
            ValueError: if the decomposition target is not of the form w - 1.
        """
        target = quotient_involutive(relator.target)
        if target.coefficient(EMPTY) != -1 or len(target) != 2:
            raise ValueError(f"expected a decomposition of w - 1, got target {target}")
        (pattern,) = [w for w in target.terms if w != EMPTY]
        if target.coefficient(pattern) != 1:
            raise ValueError(f"expected a decomposition of w - 1, got target {target}")
        count = 0
        while True:
            hits = [(w, find(w, pattern)) for w in self._current]
            hits = [(w, pos) for w, pos in hits if pos >= 0]
            if not hits:
                break
            for word, pos in sorted(hits, key=lambda h: h[0].sort_key):
                if word not in self._current:
                    continue
                lam = self._current[word]
                u, v = word[:pos], word[pos + len(pattern) :]
                self._tick()
                moved = multiply(relator, left=u, right=v)
                self.entries.extend(
                    Entry(lam * e.coefficient, e.left, e.index, e.starred, e.right)
                    for e in moved.entries
                )
                self._add(word, -lam)
                self._add(involutive_reduce(u * v), lam)
                count += 1
        logger.debug(f"eliminated {pattern} {count} times")
        return count

    def decomposition(self) -> RDecomposition:
        """The decomposition of start - current accumulated so far."""
        return RDecomposition(self.relations, self.start - self.current, list(self.entries))
