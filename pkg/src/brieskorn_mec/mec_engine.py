"""Mean Euler characteristic of circle orbibundles.

Two routes are provided.  :func:`mec_orbibundle` evaluates the closed
orbibundle formula from stratum data (periods, degree signs, equivariant Euler
characteristics, multiplicities).  :func:`mec_partial_sum` evaluates the
Cesaro average ``(1/N) sum_{-N}^{N} (-1)^i b_i`` for an explicit sequence of
generator counts, which converges to the same number when the counts come from
a periodic E^2-page.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .exact_arith import DomainError

MU_P_ZERO = "mean Euler characteristic undefined: μ_P = 0"
DEGREE_REQUIRED = "degree data required"


@dataclass(frozen=True)
class MecStratum:
    period: int
    degree_sign: int
    equivariant_euler: int
    multiplicity: int

    def __post_init__(self) -> None:
        if self.period < 1:
            raise DomainError(f"period must be positive, got {self.period}")
        if self.degree_sign not in (1, -1):
            raise DomainError(f"degree_sign must be +1 or -1, got {self.degree_sign}")
        if self.multiplicity < 1:
            raise DomainError(f"multiplicity must be positive, got {self.multiplicity}")


@dataclass(frozen=True)
class MecInput:
    """Stratum data for one principal period plus the principal Maslov index."""

    strata: tuple[MecStratum, ...]
    principal_maslov: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "strata", tuple(self.strata))
        if not self.strata:
            raise DomainError("at least one stratum is required")
        top = max(s.period for s in self.strata)
        for s in self.strata:
            if top % s.period:
                raise DomainError(f"period {s.period} does not divide principal period {top}")

    @property
    def periods(self) -> list[int]:
        return sorted({s.period for s in self.strata})

    def to_json(self) -> dict:
        return {
            "principal_maslov": self.principal_maslov,
            "strata": [
                {
                    "period": s.period,
                    "degree_sign": s.degree_sign,
                    "equivariant_euler": s.equivariant_euler,
                    "multiplicity": s.multiplicity,
                }
                for s in self.strata
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MecInput":
        try:
            strata = tuple(
                MecStratum(
                    period=int(s["period"]),
                    degree_sign=int(s["degree_sign"]),
                    equivariant_euler=int(s["equivariant_euler"]),
                    multiplicity=int(s["multiplicity"]),
                )
                for s in obj["strata"]
            )
            mu = int(obj["principal_maslov"])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed MecInput: {exc}") from exc
        return cls(strata=strata, principal_maslov=mu)

    @classmethod
    def from_text(cls, text: str) -> "MecInput":
        """Parse the line format::

            mu_p 74
            # period sign chi mult
            6 + 1 24
            210 + 3 1
        """
        strata = []
        mu = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if parts[0].lower() in ("mu_p", "principal_maslov"):
                if len(parts) != 2:
                    raise DomainError(f"line {lineno}: expected 'mu_p <int>'")
                mu = int(parts[1])
                continue
            if len(parts) != 4:
                raise DomainError(f"line {lineno}: expected 'period sign chi mult'")
            sign = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}.get(parts[1])
            if sign is None:
                raise DomainError(f"line {lineno}: bad sign {parts[1]!r}")
            strata.append(MecStratum(int(parts[0]), sign, int(parts[2]), int(parts[3])))
        if mu is None:
            raise DomainError("missing 'mu_p' line")
        return cls(strata=tuple(strata), principal_maslov=mu)

    @classmethod
    def loads(cls, text: str) -> "MecInput":
        stripped = text.lstrip()
        if stripped.startswith("{"):
            return cls.from_json(json.loads(text))
        return cls.from_text(text)


def mec_orbibundle(data: MecInput) -> Fraction:
    """``sum(sign * multiplicity * chi) / |mu_P|`` as an exact rational."""
    if data.principal_maslov == 0:
        raise DomainError(MU_P_ZERO)
    numerator = sum(s.degree_sign * s.multiplicity * s.equivariant_euler for s in data.strata)
    return Fraction(numerator, abs(data.principal_maslov))


def is_bad_orbit(mu_cover: int, mu_underlying: int) -> bool:
    return (mu_cover - mu_underlying) % 2 == 1


# ---------------------------------------------------------------------------
# Graded generator counts


@dataclass(frozen=True)
class IndexCountSequence:
    """Generator counts per degree.

    ``prefix`` holds explicit counts.  If ``pattern`` is non-empty, degrees on
    the tail side of ``onset`` (``i >= onset`` for ``direction=+1``,
    ``i <= onset`` for ``direction=-1``) repeat ``pattern``, with
    ``pattern[k]`` the count at ``onset + direction*k``.  A ``func`` sequence
    is opaque and carries no boundedness certificate.
    """

    prefix: Mapping[int, int] = field(default_factory=dict)
    pattern: tuple[int, ...] = ()
    onset: int = 0
    direction: int = 1
    func: Callable[[int], int] | None = None

    @classmethod
    def zero(cls) -> "IndexCountSequence":
        return cls(pattern=(0,))

    @classmethod
    def from_function(cls, f: Callable[[int], int]) -> "IndexCountSequence":
        return cls(func=f)

    @property
    def periodic(self) -> bool:
        return bool(self.pattern)

    @property
    def period(self) -> int:
        return len(self.pattern)

    def count(self, i: int) -> int:
        if self.func is not None:
            return self.func(i)
        if self.pattern:
            k = (i - self.onset) * self.direction
            if k >= 0:
                return self.pattern[k % len(self.pattern)]
        return self.prefix.get(i, 0)

    def signed_period_sum(self) -> int:
        """``sum (-1)^i count(i)`` over one tail period."""
        return sum(
            (-1) ** ((self.onset + self.direction * k) % 2) * c for k, c in enumerate(self.pattern)
        )

    def unsigned_period_sum(self) -> int:
        return sum(self.pattern)


def mec_partial_sum(counts: IndexCountSequence, N: int) -> Fraction:
    if N < 1:
        raise DomainError("N must be positive")
    total = 0
    for i in range(-N, N + 1):
        c = counts.count(i)
        total += -c if i % 2 else c
    return Fraction(total, N)


def mec_partial_sums(counts: IndexCountSequence, N_max: int) -> list[Fraction]:
    """``[mec_partial_sum(counts, N) for N in 1..N_max]`` in linear time."""
    out = []
    total = counts.count(0)
    for N in range(1, N_max + 1):
        for i in (N, -N):
            c = counts.count(i)
            total += -c if i % 2 else c
        out.append(Fraction(total, N))
    return out


@dataclass(frozen=True)
class BoundednessReport:
    bounded: bool
    bound: int

    def to_json(self) -> dict:
        return {"bounded": self.bounded, "bound": self.bound}


def boundedness_check(counts: IndexCountSequence, window: tuple[int, int]) -> BoundednessReport:
    """Maximum count over the closed ``window`` and whether the sequence's
    periodicity (or finite support) certifies that bound globally."""
    lo, hi = window
    if lo > hi:
        raise DomainError("empty window")
    bound = max(counts.count(i) for i in range(lo, hi + 1))
    # a finite prefix plus a periodic tail is bounded; opaque functions are not
    return BoundednessReport(bounded=counts.func is None, bound=bound)


# ---------------------------------------------------------------------------
# E^2-page


@dataclass(frozen=True)
class GradedStratum:
    """A critical family with an explicit integer degree ``mu - dim/2``."""

    degree: int | None
    manifold_dim: int
    bad: bool = False

    def fiber_degrees(self) -> range:
        # equivariant homology of a rational homology sphere of dim 2m+1 is
        # that of CP^m: one class in each even degree 0..2m
        return range(0, self.manifold_dim, 2)


Page = dict[tuple[int, int], int]


def e2_page_dims(
    strata: Sequence[GradedStratum],
    degree_window: tuple[int, int],
    principal_maslov: int | None = None,
) -> Page:
    """Dimensions ``(q, p) -> dim E^2_{p,q}`` with ``q`` in ``degree_window``.

    ``strata`` lists the families of one principal period.  When
    ``principal_maslov`` is given, the families of later periods are added as
    copies shifted by ``m * principal_maslov`` for ``m >= 1``, since the index
    is additive under concatenation with a principal orbit.  Bad families
    contribute nothing.
    """
    lo, hi = degree_window
    page: Page = {}
    for s in strata:
        if s.degree is None:
            raise DomainError(DEGREE_REQUIRED)
        if s.bad:
            continue
        for q in _shifted_degrees(s.degree, lo, hi, principal_maslov):
            for p in s.fiber_degrees():
                page[(q, p)] = page.get((q, p), 0) + 1
    return dict(sorted(page.items()))


def _shifted_degrees(q0: int, lo: int, hi: int, mu: int | None) -> Iterable[int]:
    if not mu:
        if lo <= q0 <= hi:
            yield q0
        return
    # m >= 0 with lo <= q0 + m*mu <= hi
    if mu > 0:
        m_lo = max(0, -((q0 - lo) // mu))
        m = m_lo
        while q0 + m * mu <= hi:
            if q0 + m * mu >= lo:
                yield q0 + m * mu
            m += 1
    else:
        step = -mu
        m = max(0, -((hi - q0) // step))
        while q0 - m * step >= lo:
            if q0 - m * step <= hi:
                yield q0 - m * step
            m += 1


def page_window(page: Page, q_lo: int, q_hi: int, shift: int = 0) -> Page:
    """Restrict to ``q_lo <= q <= q_hi`` and re-index ``q -> q - shift``."""
    return {(q - shift, p): d for (q, p), d in page.items() if q_lo <= q <= q_hi}


def signed_column_sum(page: Page) -> int:
    """``sum (-1)^(p+q) dim`` over the page."""
    return sum((-1) ** ((q + p) % 2) * d for (q, p), d in page.items())


def index_counts(strata: Sequence[GradedStratum], principal_maslov: int) -> IndexCountSequence:
    """Generator counts by total degree ``p + q`` for the iterated page."""
    if principal_maslov == 0:
        raise DomainError(MU_P_ZERO)
    if int(principal_maslov) != principal_maslov:
        raise DomainError("principal Maslov index must be an integer")
    principal_maslov = int(principal_maslov)
    base: dict[int, int] = {}
    for s in strata:
        if s.degree is None:
            raise DomainError(DEGREE_REQUIRED)
        if s.bad:
            continue
        for p in s.fiber_degrees():
            base[s.degree + p] = base.get(s.degree + p, 0) + 1
    if not base:
        return IndexCountSequence.zero()
    mu = principal_maslov
    step = abs(mu)
    direction = 1 if mu > 0 else -1
    lo, hi = min(base), max(base)
    # beyond the far end of the base degrees every residue class is saturated
    onset = hi - step + 1 if mu > 0 else lo + step - 1

    def raw(i: int) -> int:
        return sum(c for d, c in base.items() if (i - d) % step == 0 and (i - d) * direction >= 0)

    pattern = tuple(raw(onset + direction * k) for k in range(step))
    if mu > 0:
        prefix = {i: raw(i) for i in range(lo, onset) if raw(i)}
    else:
        prefix = {i: raw(i) for i in range(onset + 1, hi + 1) if raw(i)}
    return IndexCountSequence(prefix=prefix, pattern=pattern, onset=onset, direction=direction)
