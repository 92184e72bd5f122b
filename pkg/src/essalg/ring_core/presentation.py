"""Commutative finitely presented algebras ``k[x_1..x_n]/I``."""

from __future__ import annotations

from functools import cached_property
from typing import Sequence

from essalg.errors import InputError
from essalg.ring_core.buchberger import Budget
from essalg.ring_core.fields import QQ, Field
from essalg.ring_core.ideal import (
    ZERO_RING_DIMENSION,
    Ideal,
    fresh_name,
    krull_dimension_of_ideal,
)
from essalg.ring_core.polynomial import GREVLEX, LEX, MonomialOrder, PolyRing, Polynomial


class CommPresentation:
    """``k[variables]/(relations)``; the ideal and its Groebner basis are cached."""

    def __init__(self, variables: Sequence[str], relations: Sequence[Polynomial | str] = (),
                 field: Field = QQ, order: MonomialOrder = GREVLEX, budget: Budget | None = None):
        self.ring = PolyRing(variables, field, order)
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = self.ring.parse(r)
            elif not isinstance(r, Polynomial):
                r = self.ring.const(r)
            elif not r.ring.same_variables(self.ring):
                raise InputError(f"relation {r} is not in k[{', '.join(variables)}]")
            rels.append(Polynomial(self.ring, r.terms))
        self.relations = tuple(rels)
        self.budget = budget

    @classmethod
    def from_ideal(cls, ideal: Ideal) -> "CommPresentation":
        return cls(ideal.ring.variables, ideal.generators, ideal.ring.field, ideal.ring.order,
                   ideal.budget)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.ring.variables

    @property
    def field(self) -> Field:
        return self.ring.field

    @cached_property
    def ideal(self) -> Ideal:
        return Ideal(self.relations, self.ring, self.budget)

    def parse(self, text: str) -> Polynomial:
        return self.ring.parse(text)

    def element(self, p) -> Polynomial:
        if isinstance(p, str):
            return self.ring.parse(p)
        if isinstance(p, Polynomial):
            if not p.ring.same_variables(self.ring):
                raise InputError(f"{p} is not an element of {self}")
            return Polynomial(self.ring, p.terms)
        return self.ring.const(p)

    def normal_form(self, p) -> Polynomial:
        return self.ideal.normal_form(self.element(p))

    def is_zero_ring(self) -> bool:
        return self.ideal.is_unit()

    def with_relations(self, extra: Sequence[Polynomial | str]) -> "CommPresentation":
        return CommPresentation(self.variables, list(self.relations) + [self.element(e) for e in extra],
                                self.field, self.ring.order, self.budget)

    def with_order(self, order: MonomialOrder) -> "CommPresentation":
        return CommPresentation(self.variables, self.relations, self.field, order, self.budget)

    def same_algebra(self, other: "CommPresentation") -> bool:
        """Same variables and same ideal (compared through reduced bases)."""
        return self.variables == other.variables and self.ideal.same_ideal(other.ideal)

    def to_json(self) -> dict:
        return {
            "kind": "comm_presentation",
            "base_field": self.field.to_json(),
            "variables": list(self.variables),
            "relations": [str(r) for r in self.relations],
        }

    def __repr__(self) -> str:
        rels = ", ".join(map(str, self.relations)) or "0"
        return f"{self.field!r}[{', '.join(self.variables)}]/({rels})"


def krull_dimension(A: CommPresentation) -> int:
    """Krull dimension via maximal independent sets of the leading-term ideal.

    Returns ``ZERO_RING_DIMENSION`` (-1) for the zero ring.
    """
    return krull_dimension_of_ideal(A.ideal)


def krull_dimension_checked(A: CommPresentation) -> int:
    """Krull dimension computed under grevlex and lex; raises if the two disagree."""
    d1 = krull_dimension_of_ideal(A.ideal.with_order(GREVLEX))
    d2 = krull_dimension_of_ideal(A.ideal.with_order(LEX))
    if d1 != d2:  # pragma: no cover - would indicate an engine bug
        raise AssertionError(f"order-dependent dimension {d1} != {d2}")
    return d1


def localization_model(A: CommPresentation, f, var: str = "t") -> CommPresentation:
    """``A_f`` presented as ``A[t]/(t*f - 1)``."""
    f = A.element(f)
    if A.normal_form(f).is_zero():
        raise InputError(f"localizing at zero: {f} vanishes in {A}")
    t = fresh_name(var, A.variables)
    variables = A.variables + (t,)
    ring = PolyRing(variables, A.field, A.ring.order)
    rels = [r.in_ring(ring) for r in A.relations]
    rels.append(ring.var(t) * f.in_ring(ring) - 1)
    return CommPresentation(variables, rels, A.field, A.ring.order, A.budget)


__all__ = [
    "CommPresentation",
    "ZERO_RING_DIMENSION",
    "krull_dimension",
    "krull_dimension_checked",
    "localization_model",
]
