"""Brute-force hom-sets ``Hom(A, B)`` into small structure-constant algebras over GF(p).

A point is the tuple of generator images, followed by the image of the unit
(``None`` when ``A`` is nonunital and therefore has no unit to send).  Tuples
are scanned in lexicographic order of their coordinate vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from essalg.errors import InputError, ResourceError
from essalg.homology import FinDimAlgebra
from essalg.nc_algebra import NCPresentation, abelianize, as_nc, unitize
from essalg.ring_core import GF, CommPresentation, PrimeField

DEFAULT_BUDGET = 10**7
SUPPORTED_PRIMES = (2, 3, 5)


class _Target:
    """Integer-coded arithmetic in a structure-constant algebra over GF(p)."""

    def __init__(self, B: FinDimAlgebra):
        if not isinstance(B.field, PrimeField) or B.field.p not in SUPPORTED_PRIMES:
            raise InputError(f"targets must be over GF(p) with p in {SUPPORTED_PRIMES}")
        self.p = B.field.p
        self.d = B.dim
        self.table = [[[(k, c) for k, c in enumerate(B.mult[i][j]) if c] for j in range(self.d)]
                      for i in range(self.d)]
        self.zero = (0,) * self.d
        self.one = tuple(B.unit)

    def mul(self, u, v):
        out = [0] * self.d
        for i, a in enumerate(u):
            if a:
                row = self.table[i]
                for j, b in enumerate(v):
                    if b:
                        ab = a * b
                        for k, c in row[j]:
                            out[k] += ab * c
        return tuple(x % self.p for x in out)

    def add_scaled(self, u, v, c):
        return tuple((a + c * b) % self.p for a, b in zip(u, v))


def _source_relations(A, p: int):
    """Relations as lists of ``(word, coefficient mod p)``; commutative sources gain commutators."""
    if isinstance(A, CommPresentation):
        A = as_nc(A)
    F = GF(p)
    rels = []
    for r in A.relations:
        terms = []
        for w, c in r.terms.items():
            try:
                v = F(c)
            except (InputError, ZeroDivisionError) as exc:
                raise InputError(f"coefficient {c} of {r} has no image in GF({p})") from exc
            if v:
                terms.append((w, v))
        rels.append(terms)
    return A, rels


def _evaluate(terms, images, unit, T: _Target):
    acc = T.zero
    for w, c in terms:
        if w:
            v = images[w[0]]
            for i in w[1:]:
                v = T.mul(v, images[i])
        else:
            v = unit
        acc = T.add_scaled(acc, v, c)
    return acc


@dataclass
class PointSet:
    source: object
    target: FinDimAlgebra
    unital_only: bool
    commutative: bool
    points: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.points)

    def as_set(self) -> set:
        return set(self.points)

    def to_json(self) -> dict:
        return {"unital_only": self.unital_only, "commutative": self.commutative, "count": len(self.points),
                "points": [[list(x) if x is not None else None for x in pt] for pt in self.points]}


def enumerate_homs(A: NCPresentation | CommPresentation, B: FinDimAlgebra, unital_only: bool = True,
                   commutative: bool = False, budget: int = DEFAULT_BUDGET) -> PointSet:
    """All algebra maps ``A -> B`` as image tuples.

    ``unital_only=False`` allows maps that do not preserve the unit: the unit
    of a unital ``A`` may go to any idempotent acting as the identity on the
    generator images.  ``commutative=True`` keeps only maps whose generator
    images pairwise commute (maps in the commutative category).
    Coefficients of ``A`` are read in ``B``'s field.
    """
    T = _Target(B)
    nc, rels = _source_relations(A, T.p)
    k = len(nc.generators)
    has_unit = nc.unital
    free_unit = has_unit and not unital_only
    slots = k + (1 if free_unit else 0)
    size = T.p ** (T.d * slots)
    if size > budget:
        raise ResourceError("points", budget, f"{size} candidate tuples exceed the budget {budget}")
    elements = list(product(range(T.p), repeat=T.d))
    if free_unit:
        units = [e for e in elements if T.mul(e, e) == e]
    else:
        units = [T.one if has_unit else None]
    points = []
    for images in product(elements, repeat=k):
        if commutative and any(T.mul(images[i], images[j]) != T.mul(images[j], images[i])
                               for i in range(k) for j in range(i + 1, k)):
            continue
        for u in units:
            if free_unit and any(T.mul(u, x) != x or T.mul(x, u) != x for x in images):
                continue
            if all(_evaluate(terms, images, u, T) == T.zero for terms in rels):
                points.append(tuple(images) + (u,))
    points.sort(key=lambda pt: tuple(c for x in pt if x is not None for c in x))
    return PointSet(A, B, unital_only, commutative, points)


def verify_point(A, B: FinDimAlgebra, point) -> bool:
    """Re-evaluate every relation of ``A`` at ``point``."""
    T = _Target(B)
    _, rels = _source_relations(A, T.p)
    *images, unit = point
    return all(_evaluate(terms, images, unit, T) == T.zero for terms in rels)


def _relation(a: set, b: set) -> str:
    if a == b:
        return "="
    if a < b:
        return "⊂"
    if a > b:
        return "⊃"
    return "incomparable"


def _generator_images(ps: PointSet) -> set:
    # the unit slot is None for nonunital sources, so compare generator images only
    return {pt[:-1] for pt in ps.points}


def abelianization_of(A: NCPresentation | CommPresentation) -> CommPresentation:
    if isinstance(A, CommPresentation):
        return A
    return abelianize(A if A.unital else unitize(A))


def compare_point_sets(A, targets: Sequence[FinDimAlgebra], flags1: dict, flags2: dict,
                       budget: int = DEFAULT_BUDGET) -> list[dict]:
    """Set relation between two enumerations per target; commutative targets also get the
    unital abelianization bijection check."""
    out = []
    for B in targets:
        s1 = enumerate_homs(A, B, budget=budget, **flags1)
        s2 = enumerate_homs(A, B, budget=budget, **flags2)
        row = {"target_dim": B.dim, "p": B.field.p, "sizes": [len(s1), len(s2)],
               "relation": _relation(s1.as_set(), s2.as_set())}
        if B.is_commutative():
            lhs = enumerate_homs(A, B, True, False, budget)
            rhs = enumerate_homs(abelianization_of(A), B, True, False, budget)
            row["abelianization_bijection"] = _generator_images(lhs) == _generator_images(rhs)
            row["abelianization_counts"] = [len(lhs), len(rhs)]
        out.append(row)
    return out
