"""Exact mean Euler characteristics and displaceability verdicts for Brieskorn manifolds."""

from .brieskorn import (
    BrieskornExponents,
    BrieskornInvariants,
    IndexSign,
    index_sign,
    invariants,
    mec_bruteforce,
    mec_closed_form,
    mec_via_engine,
    principal_maslov,
    validate,
)
from .exact_arith import DomainError
from .obstruction import Label, Verdict, classify_displaceability

__all__ = [
    "BrieskornExponents",
    "BrieskornInvariants",
    "DomainError",
    "IndexSign",
    "Label",
    "Verdict",
    "classify_displaceability",
    "index_sign",
    "invariants",
    "mec_bruteforce",
    "mec_closed_form",
    "mec_via_engine",
    "principal_maslov",
    "validate",
]
