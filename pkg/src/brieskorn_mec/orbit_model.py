"""Periodic-orbit strata of the Brieskorn Reeb flow.

The flow rotates coordinate ``j`` with angular speed ``4/a_j``.  Measuring time
in units of pi/2, coordinate ``j`` returns after exactly ``a_j`` units, so a
point whose nonzero coordinates are indexed by ``I`` is periodic at every
common multiple of ``{a_j : j in I}``.  Points on the Brieskorn variety have at
least two nonzero coordinates, hence only supports with ``|I| >= 2`` occur.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .exact_arith import DomainError, lcm_all, pairwise_coprime, product

UNSUPPORTED_LATTICE = "unsupported: period lattice requires pairwise coprime exponents"


@dataclass(frozen=True)
class OrbitSpace:
    """One stratum ``N_I`` of periodic Reeb orbits."""

    support: tuple[int, ...]
    period: int
    manifold_dim: int
    equivariant_euler: int
    multiplicity: int
    degree_parity: int

    @property
    def size(self) -> int:
        return len(self.support)

    def to_json(self) -> dict:
        return {
            "support": list(self.support),
            "period": self.period,
            "manifold_dim": self.manifold_dim,
            "equivariant_euler": self.equivariant_euler,
            "multiplicity": self.multiplicity,
            "degree_parity": self.degree_parity,
        }


def _validate_exponents(exponents: Sequence[int]) -> list[int]:
    exps = list(exponents)
    if len(exps) < 3:
        raise DomainError("need at least three exponents (n >= 2)")
    for a in exps:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise DomainError(f"exponents must be positive integers, got {a!r}")
    return exps


def equivariant_euler_of_sphere(manifold_dim: int) -> int:
    """Euler characteristic of the circle-equivariant homology of a rational
    homology sphere of dimension ``2m+1`` with a fixed-point free action,
    which is ``m + 1`` (the equivariant homology is that of CP^m)."""
    if manifold_dim < 1 or manifold_dim % 2 == 0:
        raise DomainError(f"dimension must be odd and positive, got {manifold_dim}")
    return (manifold_dim - 1) // 2 + 1


def support_at_time(exponents: Sequence[int], t: int) -> frozenset[int]:
    """Indices ``j`` with ``a_j | t``: the coordinates back in place at time t."""
    if t < 1:
        raise DomainError("time must be a positive integer")
    return frozenset(j for j, a in enumerate(exponents) if t % a == 0)


def phi_product_formula(exponents: Sequence[int], support: Iterable[int]) -> int:
    """Number of times the stratum over ``support`` appears in one principal
    period without lying in a larger stratum: ``prod_{j not in I} (a_j - 1)``."""
    exps = list(exponents)
    sup = set(support)
    if not sup <= set(range(len(exps))):
        raise DomainError(f"support {sorted(sup)} not inside 0..{len(exps) - 1}")
    if len(sup) < 2:
        raise DomainError("support must contain at least two indices")
    if not pairwise_coprime(exps):
        raise DomainError(UNSUPPORTED_LATTICE)
    return product(a - 1 for j, a in enumerate(exps) if j not in sup)


def phi_count(T_i: int, larger_periods: Sequence[int], T_k: int) -> int:
    """Count ``a >= 1`` with ``a*T_i < T_k`` and ``a*T_i`` not a multiple of any
    period in ``larger_periods``.

    The inequality is strict, so ``phi_count(T, [], T) == 0``.
    """
    if T_i < 1 or T_k < 1:
        raise DomainError("periods must be positive")
    if T_k % T_i:
        raise DomainError(f"{T_i} does not divide {T_k}")
    for T in larger_periods:
        if T <= T_i or T_k % T:
            raise DomainError(f"larger period {T} must exceed {T_i} and divide {T_k}")
    if T_k >= 2**62:
        raise DomainError("principal period too large for direct counting")
    # a multiple of T' is a multiple of every divisor of T', so only the
    # minimal periods under divisibility need testing
    tests = sorted(set(larger_periods))
    tests = [T for i, T in enumerate(tests) if not any(T % S == 0 for S in tests[:i])]
    multiples = np.arange(1, (T_k - 1) // T_i + 1, dtype=np.int64) * T_i
    keep = np.ones(len(multiples), dtype=bool)
    for T in tests:
        keep &= multiples % T != 0
    return int(keep.sum())


def enumerate_orbit_spaces(exponents: Sequence[int]) -> list[OrbitSpace]:
    """All strata with ``|I| >= 2``, sorted by period then support."""
    exps = _validate_exponents(exponents)
    if not pairwise_coprime(exps):
        raise DomainError(UNSUPPORTED_LATTICE)
    n = len(exps) - 1
    full = tuple(range(n + 1))
    strata = []
    for k in range(2, n + 2):
        for sup in combinations(full, k):
            dim = 2 * k - 3
            strata.append(
                OrbitSpace(
                    support=sup,
                    period=lcm_all([exps[j] for j in sup]),
                    manifold_dim=dim,
                    equivariant_euler=equivariant_euler_of_sphere(dim),
                    # the full support appears exactly once per period
                    multiplicity=1 if sup == full else phi_product_formula(exps, sup),
                    degree_parity=(n + 1) % 2,
                )
            )
    strata.sort(key=lambda s: (s.period, s.support))
    return strata


def larger_periods_for(strata: Sequence[OrbitSpace], stratum: OrbitSpace) -> list[int]:
    """Distinct periods strictly above ``stratum.period`` among ``strata``."""
    return sorted({s.period for s in strata if s.period > stratum.period})


def stratum_phi_count(exponents: Sequence[int], stratum: OrbitSpace, strata: Sequence[OrbitSpace]) -> int:
    """``phi`` of a stratum by the counting definition.

    Orbit spaces are indexed by period.  When unit exponents make a larger
    support return at the same period, the stratum is part of that larger
    orbit space and never appears on its own, so its count is zero.
    """
    if support_at_time(exponents, stratum.period) != set(stratum.support):
        return 0
    principal = max(s.period for s in strata)
    return phi_count(stratum.period, larger_periods_for(strata, stratum), principal)


def generator_count_by_time(exponents: Sequence[int]) -> int:
    """``sum_{t=1}^{prod a} max(0, |J(t)| - 1)`` by direct time enumeration."""
    exps = list(exponents)
    total = 0
    for t in range(1, product(exps) + 1):
        total += max(0, len(support_at_time(exps, t)) - 1)
    return total
