"""Independent reference computations used to freeze expected values.

Nothing here imports the package; each oracle works from definitions only.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd, prod


def e_by_subsets(values, degree):
    return sum(prod(c) for c in combinations(values, degree))


def pascal(n, k):
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return row[k] if 0 <= k <= n else 0


def coprime_by_pairs(values):
    return all(gcd(a, b) == 1 for a, b in combinations(values, 2))


def generators_by_time(exponents):
    """Sum over one principal period of (number of coordinates back in place) - 1."""
    total = 0
    for t in range(1, prod(exponents) + 1):
        k = sum(1 for a in exponents if t % a == 0)
        total += max(0, k - 1)
    return total


def mec_by_time(exponents):
    n = len(exponents) - 1
    mu = 2 * prod(exponents) * (sum(Fraction(1, a) for a in exponents) - 1)
    return (-1) ** (n + 1) * Fraction(generators_by_time(exponents), abs(int(mu)))


def times_with_exact_support(exponents, support):
    """Times in 1..P-1 whose set of returning coordinates is exactly ``support``."""
    support = set(support)
    P = prod(exponents)
    return sum(
        1 for t in range(1, P) if {j for j, a in enumerate(exponents) if t % a == 0} == support
    )
