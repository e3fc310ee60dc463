"""Conditional expectation of a group algebra onto a subgroup algebra."""

from collections.abc import Callable, Mapping
from fractions import Fraction

from ncsos_workbench.errors import BudgetExhausted
from ncsos_workbench.words.polynomial import StarPolynomial
from ncsos_workbench.words.word import Word

MembershipOracle = Callable[[Word], bool | None]


def coset_expectation(
    p: StarPolynomial | Mapping[Word, Fraction], in_subgroup: MembershipOracle
) -> StarPolynomial:
    """Keep the terms whose group element lies in the subgroup, drop the rest.

    The map is linear and sends a hermitian square a*a to a sum of hermitian
    squares of the coset components of a.

    Args:
        p: a group algebra element, one reduced word per group element.
        in_subgroup: membership oracle; None means it could not decide.

    Raises:
        BudgetExhausted: when the oracle is undecided on some support word.
    """
    terms = p.terms if isinstance(p, StarPolynomial) else p
    kept = {}
    for word, c in terms.items():
        verdict = in_subgroup(word)
        if verdict is None:
            raise BudgetExhausted(f"membership of {word} is undecided")
        if verdict:
            kept[word] = c
    return StarPolynomial(kept)
