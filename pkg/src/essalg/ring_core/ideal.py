"""Ideals with cached reduced Groebner bases, and the ideal-theoretic queries built on them."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from essalg.errors import InputError
from essalg.ring_core.buchberger import Budget, BudgetUsage, buchberger
from essalg.ring_core.polynomial import (
    GREVLEX,
    LEX,
    MonomialOrder,
    PolyRing,
    Polynomial,
    mono_div,
    mono_divides,
)

ZERO_RING_DIMENSION = -1


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    k = 0
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


class Ideal:
    """An ideal of ``ring`` given by generators.

    The reduced Groebner basis and its cofactor matrix are computed once, on
    first use, and cached on the instance.
    """

    def __init__(self, generators: Sequence[Polynomial], ring: PolyRing | None = None,
                 budget: Budget | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise InputError("an ideal without generators needs an explicit ring")
            ring = gens[0].ring
        self.ring = ring
        moved = []
        for g in gens:
            if not isinstance(g, Polynomial):
                g = ring.const(g)
            if not g.ring.same_variables(ring):
                raise InputError(f"generator {g} is not in {ring!r}")
            moved.append(Polynomial(ring, g.terms))
        self.generators = tuple(moved)
        self.budget = budget

    def __repr__(self) -> str:
        return f"Ideal([{', '.join(map(str, self.generators))}], order={self.ring.order})"

    @cached_property
    def _gb(self) -> tuple[list[Polynomial], list[list[Polynomial]], BudgetUsage]:
        return buchberger(list(self.generators), self.ring, self.budget)

    @property
    def basis(self) -> list[Polynomial]:
        """Reduced Groebner basis, monic, sorted by increasing leading monomial."""
        return self._gb[0]

    @property
    def cofactors(self) -> list[list[Polynomial]]:
        """``basis[i] == sum(cofactors[i][j] * generators[j])`` exactly."""
        return self._gb[1]

    @property
    def usage(self) -> BudgetUsage:
        return self._gb[2]

    def leading_monomials(self) -> list[tuple]:
        return [g.lm for g in self.basis]

    def is_unit(self) -> bool:
        b = self.basis
        return len(b) == 1 and b[0].is_constant()

    def is_zero(self) -> bool:
        return not self.basis

    def with_order(self, order: MonomialOrder) -> "Ideal":
        ring = self.ring.with_order(order)
        return Ideal([Polynomial(ring, g.terms) for g in self.generators], ring, self.budget)

    def with_generators(self, extra: Iterable[Polynomial]) -> "Ideal":
        return Ideal(list(self.generators) + [self._own(p) for p in extra], self.ring, self.budget)

    def _own(self, p) -> Polynomial:
        if not isinstance(p, Polynomial):
            return self.ring.const(p)
        if not p.ring.same_variables(self.ring):
            raise InputError(f"polynomial {p} is not in {self.ring!r}")
        return Polynomial(self.ring, p.terms)

    # -- reduction --------------------------------------------------------

    def divide(self, p: Polynomial) -> tuple[list[Polynomial], Polynomial]:
        """Division by the reduced basis: ``p == sum(q[i] * basis[i]) + r``."""
        p = self._own(p)
        ring, F, key = self.ring, self.ring.field, self.ring.order.key
        basis = self.basis
        quotients: list[dict] = [{} for _ in basis]
        rest = dict(p.terms)
        rem: dict = {}
        while rest:
            m = max(rest, key=key)
            c = rest[m]
            for k, g in enumerate(basis):
                if mono_divides(g.lm, m):
                    q = mono_div(m, g.lm)
                    f = F.div(c, g.lc)
                    quotients[k][q] = F.add(quotients[k].get(q, F.zero), f)
                    for gm, gc in g.terms.items():
                        t = tuple(a + b for a, b in zip(gm, q))
                        v = F.sub(rest.get(t, F.zero), F.mul(f, gc))
                        if F.is_zero(v):
                            rest.pop(t, None)
                        else:
                            rest[t] = v
                    break
            else:
                rem[m] = c
                del rest[m]
        qs = [Polynomial(ring, {m: c for m, c in q.items() if not F.is_zero(c)}) for q in quotients]
        return qs, Polynomial(ring, rem)

    def normal_form(self, p: Polynomial) -> Polynomial:
        return self.divide(p)[1]

    def contains(self, p: Polynomial) -> bool:
        return self.normal_form(p).is_zero()

    def __contains__(self, p) -> bool:
        return self.contains(p)

    def membership_witness(self, p: Polynomial) -> list[Polynomial] | None:
        """Coefficients ``c`` with ``p == sum(c[j] * generators[j])``, or None if ``p`` is not a member.

        The identity is re-verified by expansion before returning.
        """
        p = self._own(p)
        qs, r = self.divide(p)
        if not r.is_zero():
            return None
        ring = self.ring
        coeffs = [ring.zero() for _ in self.generators]
        for q, row in zip(qs, self.cofactors):
            if q.is_zero():
                continue
            for j, c in enumerate(row):
                if not c.is_zero():
                    coeffs[j] = coeffs[j] + q * c
        check = ring.zero()
        for c, g in zip(coeffs, self.generators):
            check = check + c * g
        if check != p:  # pragma: no cover - would indicate a cofactor bug
            raise AssertionError("membership witness failed exact replay")
        return coeffs

    def same_ideal(self, other: "Ideal") -> bool:
        """Equality of ideals via reduced bases under a common order."""
        if not self.ring.same_variables(other.ring):
            return False
        if other.ring.order != self.ring.order:
            other = other.with_order(self.ring.order)
        return [g.terms for g in self.basis] == [g.terms for g in other.basis]

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.generators)


# -- module-level operations -------------------------------------------


def groebner_basis(ideal: Ideal) -> Ideal:
    """Force computation of the reduced basis and cofactors; returns the same ideal."""
    ideal.basis  # noqa: B018 - populate the cache
    return ideal


def normal_form(p: Polynomial, ideal: Ideal) -> Polynomial:
    if not p.ring.same_variables(ideal.ring):
        raise InputError(f"{p} does not live in the ring of {ideal!r}")
    return ideal.normal_form(p)


def ideal_membership_witness(p: Polynomial, ideal: Ideal) -> list[Polynomial] | None:
    return ideal.membership_witness(p)


def _eliminate_polys(ideal: Ideal, drop: Sequence[str]) -> list[Polynomial]:
    """Basis elements of ``ideal`` free of the variables in ``drop``, in the original ring."""
    ring = ideal.ring
    keep = [v for v in ring.variables if v not in drop]
    elim_ring = PolyRing(list(drop) + keep, ring.field, MonomialOrder("elim", len(drop)))
    J = Ideal([g.in_ring(elim_ring) for g in ideal.generators], elim_ring, ideal.budget)
    k = len(drop)
    out = []
    for g in J.basis:
        if all(not any(m[:k]) for m in g.terms):
            out.append(_rename(g, ring))
    return out


def _rename(p: Polynomial, ring: PolyRing) -> Polynomial:
    """Move ``p`` into ``ring`` by variable name; variables absent from ``ring`` must not occur."""
    src = p.ring.variables
    idx = []
    for i, v in enumerate(src):
        idx.append(ring.index(v) if v in ring.variables else None)
    out = {}
    for m, c in p.terms.items():
        e = [0] * ring.nvars
        for i, x in enumerate(m):
            if x:
                if idx[i] is None:
                    raise ValueError(f"variable {src[i]} does not exist in target ring")
                e[idx[i]] += x
        out[tuple(e)] = c
    return Polynomial(ring, out)


def eliminate(ideal: Ideal, keep: Sequence[str]) -> Ideal:
    """Generators of the elimination ideal ``I ∩ k[keep]`` (an ideal of the subring on ``keep``)."""
    ring = ideal.ring
    for v in keep:
        ring.index(v)
    drop = [v for v in ring.variables if v not in keep]
    keep_sorted = [v for v in ring.variables if v in keep]
    sub = PolyRing(keep_sorted, ring.field, ring.order)
    polys = _eliminate_polys(ideal, drop)
    return Ideal([_rename(p, sub) for p in polys], sub, ideal.budget)


def colon_ideal(ideal: Ideal, f: Polynomial) -> Ideal:
    """``(I : f) = {g : g*f in I}`` via ``I ∩ (f)`` computed with a tag variable."""
    ring = ideal.ring
    f = ideal._own(f)
    if f.is_zero():
        raise InputError("colon by the zero polynomial")
    gens = [g for g in ideal.generators if not g.is_zero()]
    if not gens:
        return Ideal([], ring, ideal.budget)
    t = fresh_name("t", ring.variables)
    big = PolyRing((t,) + ring.variables, ring.field, ring.order)
    tv = big.var(t)
    fb = f.in_ring(big)
    tagged = [tv * g.in_ring(big) for g in gens] + [(1 - tv) * fb]
    inter = _eliminate_polys(Ideal(tagged, big, ideal.budget), [t])
    quotients = [_rename(h, ring).exact_div(f) for h in inter]
    return Ideal(quotients, ring, ideal.budget)


def independent_set_dimension(leading: Sequence[tuple], nvars: int) -> int:
    """Largest size of a variable set containing the support of no leading monomial."""
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in leading]
    if any(not s for s in supports):
        return ZERO_RING_DIMENSION
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            S = set(subset)
            if all(not s <= S for s in supports):
                return size
    return 0  # pragma: no cover - the empty set always qualifies


def krull_dimension_of_ideal(ideal: Ideal) -> int:
    if ideal.is_unit():
        return ZERO_RING_DIMENSION
    return independent_set_dimension(ideal.leading_monomials(), ideal.ring.nvars)


__all__ = [
    "GREVLEX",
    "LEX",
    "Ideal",
    "ZERO_RING_DIMENSION",
    "colon_ideal",
    "eliminate",
    "fresh_name",
    "groebner_basis",
    "ideal_membership_witness",
    "independent_set_dimension",
    "krull_dimension_of_ideal",
    "normal_form",
]
