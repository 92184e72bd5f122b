"""Exact commutative algebra: fields, sparse polynomials, Groebner bases, ideal queries."""

from essalg.ring_core.buchberger import Budget, default_budget
from essalg.ring_core.fields import GF, QQ, Field, PrimeField, field_from_json
from essalg.ring_core.ideal import (
    ZERO_RING_DIMENSION,
    Ideal,
    colon_ideal,
    eliminate,
    groebner_basis,
    ideal_membership_witness,
    normal_form,
)
from essalg.ring_core.polynomial import GREVLEX, LEX, MonomialOrder, PolyRing, Polynomial
from essalg.ring_core.presentation import (
    CommPresentation,
    krull_dimension,
    krull_dimension_checked,
    localization_model,
)

__all__ = [
    "Budget",
    "CommPresentation",
    "Field",
    "GF",
    "GREVLEX",
    "Ideal",
    "LEX",
    "MonomialOrder",
    "PolyRing",
    "Polynomial",
    "PrimeField",
    "QQ",
    "ZERO_RING_DIMENSION",
    "colon_ideal",
    "default_budget",
    "eliminate",
    "field_from_json",
    "groebner_basis",
    "ideal_membership_witness",
    "krull_dimension",
    "krull_dimension_checked",
    "localization_model",
    "normal_form",
]
