"""Displaceability obstruction for Brieskorn manifolds.

A simply connected rational homology sphere with a displaceable exact contact
embedding and an index-definite contact form must be index-positive, and the
mean Euler characteristic of the filling must be ``(-1)^(n+1)/2``.  The
classifier below checks which of these necessary conditions fails.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import brieskorn
from .exact_arith import DomainError, is_half_integer, pairwise_coprime, rational_to_json

AMBIENT_HYPOTHESES = (
    "ambient exact symplectic manifold assumed convex with c_1 vanishing on pi_2; "
    "not checked"
)


class Label(str, enum.Enum):
    OBSTRUCTED_INDEX_NEGATIVE = "obstructed_index_negative"
    OBSTRUCTED_MEC_MISMATCH = "obstructed_mec_mismatch"
    UNOBSTRUCTED_STANDARD_SPHERE = "unobstructed_standard_sphere"
    OUT_OF_THEOREM_SCOPE = "out_of_theorem_scope"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class Reason:
    rule: str
    citation: str
    values: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rule": self.rule, "citation": self.citation, "values": _jsonable(self.values)}


@dataclass(frozen=True)
class Verdict:
    label: Label
    reasons: tuple[Reason, ...]
    exponents: tuple[int, ...]

    @property
    def obstructed(self) -> bool:
        return self.label in (Label.OBSTRUCTED_INDEX_NEGATIVE, Label.OBSTRUCTED_MEC_MISMATCH)

    def to_json(self) -> dict:
        return {
            "label": self.label.value,
            "reasons": [r.to_json() for r in self.reasons],
            "inputs": {"exponents": list(self.exponents)},
        }


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return rational_to_json(value)
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


# ---------------------------------------------------------------------------
# Filling-side expectations


@dataclass(frozen=True)
class FillingExpectation:
    n: int
    relative_homology: dict[int, int]
    relative_euler: int
    expected_mec: Fraction

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "relative_homology": {str(k): v for k, v in sorted(self.relative_homology.items())},
            "relative_euler": self.relative_euler,
            "expected_mec": rational_to_json(self.expected_mec),
        }


def expected_filling_mec(n: int, relative_euler: int) -> Fraction:
    sign = 1 if (n + 1) % 2 == 0 else -1
    return Fraction(sign * relative_euler, 2)


def filling_profile_of_homology_sphere(n: int) -> FillingExpectation:
    """Relative rational homology of a filling ``W`` of a simply connected
    rational homology sphere of dimension ``2n-1``: a single class in degree
    ``2n``."""
    if n < 2:
        raise DomainError("n must be at least 2")
    table = {k: (1 if k == 2 * n else 0) for k in range(2 * n + 1)}
    chi = sum((-1) ** k * b for k, b in table.items())
    return FillingExpectation(n=n, relative_homology=table, relative_euler=chi, expected_mec=expected_filling_mec(n, chi))


# ---------------------------------------------------------------------------
# Index bounds


def cz_bounds(mean_index: Fraction, n: int, N: int) -> tuple[int, int]:
    """Admissible range of ``mu_CZ(gamma^N)`` given ``|mu_CZ - N*Delta| <= n - 1``.

    Non-integer endpoints are rounded outward.
    """
    if N < 1:
        raise DomainError("N must be positive")
    centre = N * Fraction(mean_index)
    lo = centre - (n - 1)
    hi = centre + (n - 1)
    return math.floor(lo), math.ceil(hi)


def index_negative_contradiction(n: int, mean_indices: Sequence[Fraction]) -> bool:
    """True when no iterate of any orbit can reach degree ``n + 1``.

    For negative mean index the upper bound ``N*Delta + n - 1`` decreases in
    ``N``, so its supremum over ``N >= 1`` is attained at ``N = 1``.
    """
    deltas = [Fraction(d) for d in mean_indices]
    for d in deltas:
        if d >= 0:
            raise DomainError(f"mean index must be negative, got {d}")
    return all(cz_bounds(d, n, 1)[1] < n + 1 for d in deltas)


# ---------------------------------------------------------------------------
# Classifier


def classify_displaceability(exponents: Sequence[int]) -> Verdict:
    exps = tuple(exponents)
    reasons: list[Reason] = []

    def done(label: Label) -> Verdict:
        return Verdict(label=label, reasons=tuple(reasons), exponents=exps)

    if len(exps) < 3 or any(not isinstance(a, int) or a < 1 for a in exps):
        reasons.append(
            Reason("R0-input", "exponents must be at least three positive integers", {"exponents": list(exps)})
        )
        return done(Label.OUT_OF_THEOREM_SCOPE)

    n = len(exps) - 1
    if n <= 2:
        values: dict[str, Any] = {"n": n, "dimension": 2 * n - 1}
        # informational only: the verdict abstains in dimension 3
        if pairwise_coprime(exps):
            try:
                values["mec"] = brieskorn.mec_closed_form(exps)
            except DomainError:
                pass
        reasons.append(
            Reason(
                "R1-dimension",
                "theorem requires n > 2; in dimension 3 Reeb orbits can become contractible in the filling",
                values,
            )
        )
        return done(Label.OUT_OF_THEOREM_SCOPE)

    if not pairwise_coprime(exps):
        reasons.append(
            Reason(
                "R2-coprime",
                "exponents not pairwise coprime; homology-sphere hypothesis unavailable",
                {"n": n, "pairwise_coprime": False},
            )
        )
        return done(Label.OUT_OF_THEOREM_SCOPE)

    reasons.append(
        Reason(
            "R2-coprime",
            "pairwise coprime exponents give an integral homology sphere homeomorphic to S^(2n-1); "
            + AMBIENT_HYPOTHESES,
            {"n": n, "pairwise_coprime": True},
        )
    )

    if 1 in exps:
        reasons.append(
            Reason(
                "R3-unit-exponent",
                "an exponent equal to 1 makes the manifold contactomorphic to the standard sphere",
                {"unit_index": exps.index(1), "mec": brieskorn.mec_closed_form(exps)},
            )
        )
        return done(Label.UNOBSTRUCTED_STANDARD_SPHERE)

    s = brieskorn.unit_fraction_sum(exps)
    mu = brieskorn.principal_maslov(exps)
    if s < 1:
        reasons.append(
            Reason(
                "R4-index-negative",
                "sum 1/a_j < 1 makes the contact form index-negative; a displaceable embedding forces index-positivity",
                {"unit_fraction_sum": s, "mu_p": mu},
            )
        )
        return done(Label.OBSTRUCTED_INDEX_NEGATIVE)

    if s == 1:
        # impossible for coprime exponents; kept so the tree is total
        reasons.append(Reason("R6-indeterminate", "sum 1/a_j = 1, so mu_P = 0", {"unit_fraction_sum": s}))
        return done(Label.INDETERMINATE)

    mec = brieskorn.mec_closed_form(exps)
    expected = expected_filling_mec(n, 1)
    values = {
        "unit_fraction_sum": s,
        "mu_p": mu,
        "mec": mec,
        "expected": expected,
        "half_integer": is_half_integer(mec),
    }
    if mec != expected:
        reasons.append(
            Reason(
                "R5-mec-mismatch",
                "index-positive; a displaceable embedding forces mean Euler characteristic (-1)^(n+1)/2",
                values,
            )
        )
        return done(Label.OBSTRUCTED_MEC_MISMATCH)

    reasons.append(Reason("R6-indeterminate", "mean Euler characteristic matches the filling value", values))
    return done(Label.INDETERMINATE)
