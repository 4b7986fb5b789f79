"""Brieskorn manifolds ``Sigma(a_0, ..., a_n)`` and their mean Euler characteristic.

The mean Euler characteristic is computed three ways which share no code path
beyond the principal Maslov index:

* :func:`mec_closed_form` evaluates the symmetric-polynomial closed formula;
* :func:`mec_bruteforce` walks one principal period time step by time step;
* :func:`mec_via_engine` feeds the enumerated strata to the orbibundle engine.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact_arith import (
    DomainError,
    elementary_symmetric_all,
    lcm_all,
    pairwise_coprime,
    product,
)
from .mec_engine import GradedStratum, MecInput, MecStratum, mec_orbibundle
from .orbit_model import OrbitSpace, enumerate_orbit_spaces, support_at_time

DEFAULT_ORACLE_CAP = 10**7

LOW_DIMENSION = "dimension below 3 not modeled"
COPRIME_ONLY = "closed form proved only for pairwise coprime exponents"
SIGN_UNDEFINED = "index sign undefined: μ_P = 0"
ORACLE_TOO_LARGE = "oracle too large"


class IndexSign(str, enum.Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"


@dataclass(frozen=True)
class BrieskornExponents:
    exponents: tuple[int, ...]
    dimension: int
    pairwise_coprime: bool
    has_unit_exponent: bool
    integral_homology_sphere: bool
    homeomorphic_to_sphere: bool

    @property
    def n(self) -> int:
        return len(self.exponents) - 1

    @property
    def standard_sphere(self) -> bool:
        """A unit exponent makes the variety a graph over C^n, so the contact
        manifold is the standard sphere."""
        return self.has_unit_exponent

    def to_json(self) -> dict:
        return {
            "exponents": list(self.exponents),
            "n": self.n,
            "dimension": self.dimension,
            "pairwise_coprime": self.pairwise_coprime,
            "has_unit_exponent": self.has_unit_exponent,
            "integral_homology_sphere": self.integral_homology_sphere,
            "homeomorphic_to_sphere": self.homeomorphic_to_sphere,
        }


def validate(exponents: Sequence[int]) -> BrieskornExponents:
    exps = tuple(exponents)
    for a in exps:
        if not isinstance(a, int) or isinstance(a, bool) or a < 1:
            raise DomainError(f"exponents must be positive integers, got {a!r}")
    if len(exps) < 3:
        raise DomainError(LOW_DIMENSION)
    n = len(exps) - 1
    coprime = pairwise_coprime(exps)
    return BrieskornExponents(
        exponents=exps,
        dimension=2 * n - 1,
        pairwise_coprime=coprime,
        has_unit_exponent=1 in exps,
        integral_homology_sphere=coprime,
        homeomorphic_to_sphere=coprime and n > 2,
    )


def unit_fraction_sum(exponents: Sequence[int]) -> Fraction:
    return sum((Fraction(1, a) for a in exponents), Fraction(0))


def principal_maslov(exponents: Sequence[int]) -> Fraction:
    """``2 lcm(a) (sum 1/a_j - 1)``.

    Integer valued in general; for pairwise coprime exponents it equals
    ``2 (e_n(a) - e_{n+1}(a))``.
    """
    exps = validate(exponents).exponents
    return 2 * lcm_all(exps) * (unit_fraction_sum(exps) - 1)


def principal_maslov_symmetric(exponents: Sequence[int]) -> int:
    """``2 (e_n(a) - e_{n+1}(a))``, the coprime integer form."""
    e = elementary_symmetric_all(validate(exponents).exponents)
    return 2 * (e[-2] - e[-1])


def index_sign(exponents: Sequence[int]) -> IndexSign:
    s = unit_fraction_sum(validate(exponents).exponents)
    if s == 1:
        raise DomainError(SIGN_UNDEFINED)
    return IndexSign.POSITIVE if s > 1 else IndexSign.NEGATIVE


def _require_coprime(exponents: Sequence[int], message: str = COPRIME_ONLY) -> BrieskornExponents:
    prof = validate(exponents)
    if not prof.pairwise_coprime:
        raise DomainError(message)
    return prof


def _sign(n: int) -> int:
    return -1 if (n + 1) % 2 else 1


def closed_form_numerator(exponents: Sequence[int]) -> int:
    """``sum_{j=0}^{n-1} (n - j) e_j(a_0 - 1, ..., a_n - 1)``."""
    n = len(exponents) - 1
    e = elementary_symmetric_all([a - 1 for a in exponents])
    return sum((n - j) * e[j] for j in range(n))


def mec_closed_form(exponents: Sequence[int]) -> Fraction:
    prof = _require_coprime(exponents)
    mu = principal_maslov_symmetric(prof.exponents)
    if mu == 0:
        raise DomainError(SIGN_UNDEFINED)
    return _sign(prof.n) * Fraction(closed_form_numerator(prof.exponents), abs(mu))


def mec_bruteforce(exponents: Sequence[int], cap: int = DEFAULT_ORACLE_CAP, jobs: int = 1) -> Fraction:
    """Count Reeb-orbit generators in one principal period by time stepping.

    At each time ``t`` the points returning to themselves are those supported
    on ``J(t) = {j : a_j | t}``; that family is a Brieskorn manifold of
    dimension ``2|J|-3`` contributing ``|J| - 1`` equivariant generators.
    """
    prof = _require_coprime(exponents)
    exps = prof.exponents
    period = product(exps)
    if period > cap:
        raise DomainError(ORACLE_TOO_LARGE)
    mu = 2 * lcm_all(exps) * (unit_fraction_sum(exps) - 1)
    if mu == 0:
        raise DomainError(SIGN_UNDEFINED)
    total = count_generators_parallel(exps, jobs)
    return _sign(prof.n) * Fraction(total, abs(int(mu)))


def _count_generators(exps: Sequence[int], start: int, stop: int) -> int:
    """``sum max(0, |J(t)| - 1)`` for ``start <= t < stop``.

    Sieve over the time block: each exponent marks the times it divides.
    """
    hits = np.zeros(stop - start, dtype=np.int16)
    for a in exps:
        hits[(-start) % a :: a] += 1
    return int(np.maximum(hits - 1, 0).sum(dtype=np.int64))


def count_generators_parallel(exponents: Sequence[int], jobs: int) -> int:
    """The oracle's time sum, split into contiguous blocks over ``jobs``
    worker processes; the integer reduction makes the result independent of
    the split."""
    exps = tuple(exponents)
    period = product(exps)
    if jobs <= 1:
        return _count_generators(exps, 1, period + 1)
    bounds = [1 + (period * i) // jobs for i in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_generators, [exps] * jobs, bounds[:-1], bounds[1:]))


def build_mec_input(exponents: Sequence[int]) -> MecInput:
    prof = _require_coprime(exponents)
    sign = _sign(prof.n)
    strata = tuple(
        MecStratum(
            period=s.period,
            degree_sign=sign,
            equivariant_euler=s.equivariant_euler,
            multiplicity=s.multiplicity,
        )
        for s in enumerate_orbit_spaces(prof.exponents)
        # strata swallowed by a larger one at every iterate carry no generators
        if s.multiplicity > 0
    )
    return MecInput(strata=strata, principal_maslov=principal_maslov_symmetric(prof.exponents))


def mec_via_engine(exponents: Sequence[int]) -> Fraction:
    return mec_orbibundle(build_mec_input(exponents))


# ---------------------------------------------------------------------------
# Optional integer degrees


def iterate_maslov(exponents: Sequence[int], t: int) -> int:
    """Robbin-Salamon index of the family of orbits of period ``t``.

    Uses the standard formula for a diagonal circle action with weights
    ``1/a_j``: ``sum_j (floor(t/a_j) + ceil(t/a_j)) - 2t``.  At ``t = lcm(a)``
    this reduces to the principal Maslov index.  Not needed for the mean
    Euler characteristic, which only uses the degree parity.
    """
    total = 0
    for a in exponents:
        q, r = divmod(t, a)
        total += 2 * q + (1 if r else 0)
    return total - 2 * t


def graded_strata(exponents: Sequence[int]) -> list[GradedStratum]:
    """One graded family per time step of the first principal period,
    with degree ``mu(S_t) - (|J(t)| - 2)``."""
    prof = _require_coprime(exponents)
    exps = prof.exponents
    out = []
    for t in range(1, lcm_all(exps) + 1):
        k = len(support_at_time(exps, t))
        if k < 2:
            continue
        out.append(GradedStratum(degree=iterate_maslov(exps, t) - (k - 2), manifold_dim=2 * k - 3))
    return out


@dataclass(frozen=True)
class BrieskornInvariants:
    mu_p: Fraction
    unit_fraction_sum: Fraction
    index_sign: IndexSign
    mec: Fraction | None
    orbit_spaces: tuple[OrbitSpace, ...] = field(default=())

    def to_json(self) -> dict:
        from .exact_arith import rational_to_json

        return {
            "mu_p": rational_to_json(self.mu_p),
            "unit_fraction_sum": rational_to_json(self.unit_fraction_sum),
            "index_sign": self.index_sign.value,
            "mec": None if self.mec is None else rational_to_json(self.mec),
            "orbit_spaces": [s.to_json() for s in self.orbit_spaces],
        }


def invariants(exponents: Sequence[int]) -> BrieskornInvariants:
    """Everything computable for the tuple; ``mec`` and ``orbit_spaces`` are
    left empty for non-coprime exponents."""
    prof = validate(exponents)
    exps = prof.exponents
    mu = principal_maslov(exps)
    sign = index_sign(exps)
    if prof.pairwise_coprime:
        return BrieskornInvariants(
            mu_p=mu,
            unit_fraction_sum=unit_fraction_sum(exps),
            index_sign=sign,
            mec=mec_closed_form(exps),
            orbit_spaces=tuple(enumerate_orbit_spaces(exps)),
        )
    return BrieskornInvariants(mu_p=mu, unit_fraction_sum=unit_fraction_sum(exps), index_sign=sign, mec=None)
