"""Combinatorial identities behind the Brieskorn classification.

Each identity is evaluated pointwise over exact integers; the sweep helpers
return an :class:`IdentityReport` with the first counterexample, if any.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Any, Iterator, Sequence

from .exact_arith import (
    DomainError,
    binomial,
    elementary_symmetric_all,
    pairwise_coprime,
    product,
    rational_to_json,
)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    tested_range: str
    checked: int
    passed: bool
    counterexample: Any = None

    def __post_init__(self) -> None:
        if not self.passed and self.counterexample is None:
            raise ValueError("a failed report needs a counterexample")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "tested_range": self.tested_range,
            "checked": self.checked,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }


def f_value(n: int) -> int:
    """``sum_{j=0}^{n} (-1)^j (n - j) C(n+1, j)``."""
    if n < 1:
        raise DomainError("n must be positive")
    return sum((-1) ** j * (n - j) * binomial(n + 1, j) for j in range(n + 1))


def f_value_derivative(n: int) -> int:
    """``f(n)`` recovered from ``d/dx (x - 1)^(n+1)`` at ``x = 1``.

    The derivative vanishes, and splitting ``(n + 1 - j) = (n - j) + 1``
    gives ``0 = f(n) + sum_{j<=n} (-1)^j C(n+1, j)``; the last sum equals
    ``-(-1)^(n+1)`` because the full alternating row sums to zero.
    """
    if n < 1:
        raise DomainError("n must be positive")
    derivative_at_one = sum((-1) ** j * (n + 1 - j) * binomial(n + 1, j) for j in range(n + 1))
    if derivative_at_one != 0:
        raise ArithmeticError("derivative of (x-1)^(n+1) at 1 is not zero")
    partial_row = sum((-1) ** j * binomial(n + 1, j) for j in range(n + 1))
    return derivative_at_one - partial_row


def _numerator_and_gap(exponents: Sequence[int]) -> tuple[int, int]:
    n = len(exponents) - 1
    shifted = elementary_symmetric_all([a - 1 for a in exponents])
    numerator = sum((n - j) * shifted[j] for j in range(n))
    e = elementary_symmetric_all(exponents)
    return numerator, e[n] - e[n + 1]


def reduction_check(exponents: Sequence[int]) -> bool:
    """Do the predicates ``numerator == e_n - e_{n+1}`` and
    ``prod(a_j - 1) == 0`` agree on this tuple?"""
    exps = list(exponents)
    if len(exps) < 2:
        raise DomainError("need at least two exponents")
    if not pairwise_coprime(exps):
        raise DomainError("exponents must be pairwise coprime")
    if sum(Fraction(1, a) for a in exps) <= 1:
        raise DomainError("requires sum 1/a_j > 1")
    numerator, gap = _numerator_and_gap(exps)
    return (numerator == gap) == (product(a - 1 for a in exps) == 0)


@dataclass(frozen=True)
class UnitFractionResult:
    sum: Fraction
    equals_one: bool
    divisibility_witness: dict | None

    def to_json(self) -> dict:
        return {
            "sum": rational_to_json(self.sum),
            "equals_one": self.equals_one,
            "divisibility_witness": self.divisibility_witness,
        }


def unit_fraction_sum_check(exponents: Sequence[int]) -> UnitFractionResult:
    """Exact ``sum 1/a_j``; when it equals one, ``a_0`` divides the product of
    the remaining exponents, which rules out pairwise coprimality."""
    exps = list(exponents)
    if not exps or any(a < 1 for a in exps):
        raise DomainError("expected a nonempty sequence of positive integers")
    s = sum((Fraction(1, a) for a in exps), Fraction(0))
    witness = None
    if s == 1:
        rest = product(exps[1:])
        witness = {"divisor": exps[0], "product": rest, "divides": rest % exps[0] == 0}
    return UnitFractionResult(sum=s, equals_one=s == 1, divisibility_witness=witness)


# ---------------------------------------------------------------------------
# Sweeps


def coprime_tuples(length: int, max_exponent: int, min_exponent: int = 1) -> Iterator[tuple[int, ...]]:
    """Nondecreasing pairwise-coprime tuples in lexicographic order.

    Only 1 may repeat, since any other repeated value shares a factor.
    """
    for t in combinations_with_replacement(range(min_exponent, max_exponent + 1), length):
        if pairwise_coprime(t):
            yield t


def sweep_f(f_max: int) -> IdentityReport:
    checked = 0
    for n in range(1, f_max + 1):
        expected = 1 if (n + 1) % 2 == 0 else -1
        a, b = f_value(n), f_value_derivative(n)
        checked += 1
        if a != expected or b != expected:
            return IdentityReport("f(n) = (-1)^(n+1)", f"1..{f_max}", checked, False, {"n": n, "direct": a, "derivative": b})
    return IdentityReport("f(n) = (-1)^(n+1)", f"1..{f_max}", checked, True)


def sweep_reduction(n: int, tuple_max: int) -> IdentityReport:
    name = "mec = (-1)^(n+1)/2 iff prod(a_j - 1) = 0"
    checked = 0
    for t in coprime_tuples(n + 1, tuple_max):
        if sum(Fraction(1, a) for a in t) <= 1:
            continue
        checked += 1
        if not reduction_check(t):
            return IdentityReport(name, f"n={n}, a_i<={tuple_max}", checked, False, list(t))
    return IdentityReport(name, f"n={n}, a_i<={tuple_max}", checked, True)


def sweep_unit_fraction(n: int, tuple_max: int) -> IdentityReport:
    name = "pairwise coprime => sum 1/a_j != 1"
    checked = 0
    for t in coprime_tuples(n + 1, tuple_max):
        checked += 1
        if unit_fraction_sum_check(t).equals_one:
            return IdentityReport(name, f"n={n}, a_i<={tuple_max}", checked, False, list(t))
    return IdentityReport(name, f"n={n}, a_i<={tuple_max}", checked, True)
