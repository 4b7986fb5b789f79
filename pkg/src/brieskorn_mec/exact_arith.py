"""Exact integer and rational primitives.

Python ints are already unbounded, and ``fractions.Fraction`` keeps values in
lowest terms with a positive denominator, so both are used directly as the
``BigInt`` and ``Rational`` types.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

BigInt = int
Rational = Fraction


class DomainError(ValueError):
    """Raised when an input lies outside an operation's mathematical domain."""


def elementary_symmetric(values: Sequence[int], degree: int) -> int:
    """Return ``e_degree(values)``.

    Uses the recurrence ``E_k <- E_k + v * E_{k-1}`` over the values, which
    is the coefficient expansion of ``prod(1 + v t)``.
    """
    values = list(values)
    if degree < 0 or degree > len(values):
        raise DomainError(f"degree {degree} outside 0..{len(values)}")
    coeffs = [1] + [0] * degree
    for v in values:
        for k in range(degree, 0, -1):
            coeffs[k] += v * coeffs[k - 1]
    return coeffs[degree]


def elementary_symmetric_all(values: Sequence[int]) -> list[int]:
    """All of ``e_0 .. e_len`` in one pass."""
    coeffs = [1] + [0] * len(values)
    for i, v in enumerate(values, start=1):
        for k in range(i, 0, -1):
            coeffs[k] += v * coeffs[k - 1]
    return coeffs


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise DomainError("binomial arguments must be nonnegative")
    return math.comb(n, k)


def _check_positive(values: Sequence[int]) -> list[int]:
    values = list(values)
    if not values:
        raise DomainError("empty sequence")
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise DomainError(f"expected positive integers, got {v!r}")
    return values


def pairwise_coprime(values: Sequence[int]) -> bool:
    values = _check_positive(values)
    # a running lcm detects any shared factor with an earlier value
    acc = 1
    for v in values:
        if math.gcd(acc, v) != 1:
            return False
        acc *= v
    return True


def lcm_all(values: Sequence[int]) -> int:
    values = _check_positive(values)
    return reduce(math.lcm, values, 1)


def product(values: Iterable[int]) -> int:
    return math.prod(values)


def is_half_integer(x: Fraction) -> bool:
    """True when ``x`` lies in ``Z + 1/2``."""
    return x.denominator == 2


def rational_to_json(x: Fraction | int) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def rational_from_json(obj: dict[str, int]) -> Fraction:
    den = int(obj["den"])
    if den <= 0:
        raise DomainError("denominator must be positive")
    return Fraction(int(obj["num"]), den)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"
