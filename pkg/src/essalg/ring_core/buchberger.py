"""Deterministic Buchberger algorithm with cofactor tracking.

Works on raw ``dict[monomial, coefficient]`` values for speed; the public
wrappers live in :mod:`essalg.ring_core.ideal`.

Pair handling follows the Gebauer-Moeller update (product and chain
criteria).  Pairs are selected by the normal strategy: smallest lcm under the
monomial order, ties resolved first-in-first-out by creation index.  Every
basis element carries a cofactor row expressing it in the input generators.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from essalg.errors import ResourceError
from essalg.ring_core.polynomial import (
    PolyRing,
    Polynomial,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

DEFAULT_DEGREE_BUDGET = 40
DEFAULT_PAIR_BUDGET = 10**6


@dataclass(frozen=True)
class Budget:
    degree: int = DEFAULT_DEGREE_BUDGET
    pairs: int = DEFAULT_PAIR_BUDGET


@dataclass
class BudgetUsage:
    pairs_processed: int = 0
    max_degree: int = 0
    reductions: int = 0


def default_budget() -> Budget:
    """Budget from ``ESSALG_BUDGET_DEGREE`` / ``ESSALG_BUDGET_PAIRS`` or the defaults."""
    return Budget(
        degree=int(os.environ.get("ESSALG_BUDGET_DEGREE", DEFAULT_DEGREE_BUDGET)),
        pairs=int(os.environ.get("ESSALG_BUDGET_PAIRS", DEFAULT_PAIR_BUDGET)),
    )


# -- raw dict arithmetic ------------------------------------------------


def _axpy(target: dict, c, mono, src: dict, F) -> None:
    """``target -= c * mono * src`` in place."""
    for m, a in src.items():
        t = mono_mul(m, mono)
        v = F.sub(target[t], F.mul(c, a)) if t in target else F.neg(F.mul(c, a))
        if F.is_zero(v):
            target.pop(t, None)
        else:
            target[t] = v


def _scaled(src: dict, c, mono, F) -> dict:
    return {mono_mul(m, mono): F.mul(c, a) for m, a in src.items()} if not F.is_zero(c) else {}


@dataclass
class _Elem:
    poly: dict
    cof: list  # list[dict], one per input generator
    lm: tuple
    lc: object


@dataclass
class _Engine:
    ring: PolyRing
    ngens: int
    budget: Budget
    usage: BudgetUsage = field(default_factory=BudgetUsage)

    def __post_init__(self):
        self.F = self.ring.field
        self.key = self.ring.order.key

    def lead(self, poly: dict):
        m = max(poly, key=self.key)
        return m, poly[m]

    def make(self, poly: dict, cof: list) -> _Elem:
        m, c = self.lead(poly)
        return _Elem(poly, cof, m, c)

    def reduce(self, poly: dict, cof: list, basis: list[_Elem]) -> tuple[dict, list]:
        """Full reduction of ``poly`` by ``basis``; ``cof`` is updated alongside."""
        F, key = self.F, self.key
        poly = dict(poly)
        cof = [dict(c) for c in cof]
        rem: dict = {}
        while poly:
            m = max(poly, key=key)
            c = poly[m]
            for g in basis:
                if mono_divides(g.lm, m):
                    q = mono_div(m, g.lm)
                    f = F.div(c, g.lc)
                    _axpy(poly, f, q, g.poly, F)
                    for row, grow in zip(cof, g.cof):
                        _axpy(row, f, q, grow, F)
                    self.usage.reductions += 1
                    break
            else:
                rem[m] = c
                del poly[m]
        return rem, cof

    def spoly(self, a: _Elem, b: _Elem) -> tuple[dict, list]:
        F = self.F
        lcm = mono_lcm(a.lm, b.lm)
        qa, qb = mono_div(lcm, a.lm), mono_div(lcm, b.lm)
        ca, cb = F.inv(a.lc), F.inv(b.lc)
        poly = _scaled(a.poly, ca, qa, F)
        _axpy(poly, cb, qb, b.poly, F)
        cof = [_scaled(r, ca, qa, F) for r in a.cof]
        for row, brow in zip(cof, b.cof):
            _axpy(row, cb, qb, brow, F)
        return poly, cof


def _disjoint(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(generators: list[Polynomial], ring: PolyRing,
               budget: Budget | None = None) -> tuple[list[Polynomial], list[list[Polynomial]], BudgetUsage]:
    """Reduced Groebner basis of ``generators`` plus cofactor rows.

    Returns ``(basis, cofactors, usage)`` where ``basis[i] == sum(cofactors[i][j] * generators[j])``.
    The basis is sorted by increasing leading monomial and every element is monic.
    """
    budget = budget or default_budget()
    F = ring.field
    n = len(generators)
    eng = _Engine(ring, n, budget)
    one = ring.zero_monomial

    elems: list[_Elem] = []
    active: list[int] = []
    pairs: list[tuple] = []  # (lcm, i, j, seq)
    seq = 0
    unit: _Elem | None = None

    def update(t: int) -> None:
        nonlocal pairs, active, seq
        h = elems[t]
        C = [(g, mono_lcm(h.lm, elems[g].lm)) for g in active]
        D = []
        while C:
            g1, l1 = C.pop(0)
            if _disjoint(h.lm, elems[g1].lm) or not (
                any(mono_divides(l2, l1) for _, l2 in C) or any(mono_divides(l2, l1) for _, l2 in D)
            ):
                D.append((g1, l1))
        E = [(g, l) for g, l in D if not _disjoint(h.lm, elems[g].lm)]
        kept = []
        for p in pairs:
            l12, i, j, s = p
            if (mono_divides(h.lm, l12) and mono_lcm(elems[i].lm, h.lm) != l12
                    and mono_lcm(elems[j].lm, h.lm) != l12):
                continue
            kept.append(p)
        for g, l in E:
            kept.append((l, g, t, seq))
            seq += 1
        pairs = kept
        active = [g for g in active if not mono_divides(h.lm, elems[g].lm)] + [t]

    def add(poly: dict, cof: list) -> bool:
        """Insert a reduced nonzero element; returns True when it is a unit."""
        nonlocal unit
        e = eng.make(poly, cof)
        elems.append(e)
        if e.lm == one:
            unit = e
            return True
        update(len(elems) - 1)
        return False

    for idx, g in enumerate(generators):
        if g.ring.variables != ring.variables:
            raise ValueError("generator lives in a different ring")
        if g.is_zero():
            continue
        cof = [{} for _ in range(n)]
        cof[idx] = {one: F.one}
        poly, cof = eng.reduce(g.terms, cof, [elems[i] for i in active])
        if not poly:
            continue
        if add(poly, cof):
            break

    while unit is None and pairs:
        best = min(range(len(pairs)), key=lambda k: (eng.key(pairs[k][0]), pairs[k][3]))
        lcm, i, j, _ = pairs.pop(best)
        deg = sum(lcm)
        if deg > budget.degree:
            raise ResourceError("degree", budget.degree,
                                f"degree budget exceeded: pair lcm of degree {deg} > {budget.degree}")
        eng.usage.pairs_processed += 1
        eng.usage.max_degree = max(eng.usage.max_degree, deg)
        if eng.usage.pairs_processed > budget.pairs:
            raise ResourceError("pairs", budget.pairs)
        poly, cof = eng.spoly(elems[i], elems[j])
        poly, cof = eng.reduce(poly, cof, [elems[k] for k in active])
        if poly and add(poly, cof):
            break

    if unit is not None:
        basis_elems = [unit]
    else:
        basis_elems = [elems[k] for k in active]
    basis_elems.sort(key=lambda e: eng.key(e.lm))

    # inter-reduce and normalise
    reduced: list[_Elem] = []
    for k, e in enumerate(basis_elems):
        others = basis_elems[:k] + basis_elems[k + 1:]
        head = {e.lm: e.lc}
        tail = {m: c for m, c in e.poly.items() if m != e.lm}
        # reducing from a zero cofactor row yields the correction to add to e.cof
        tail, tail_cof = eng.reduce(tail, [{}] * n, others) if tail else (tail, [{}] * n)
        poly = dict(head)
        poly.update(tail)
        cof = []
        for orig, delta in zip(e.cof, tail_cof):
            row = dict(orig)
            for m, c in delta.items():
                v = F.add(row[m], c) if m in row else c
                if F.is_zero(v):
                    row.pop(m, None)
                else:
                    row[m] = v
            cof.append(row)
        inv = F.inv(e.lc)
        poly = {m: F.mul(c, inv) for m, c in poly.items()}
        cof = [{m: F.mul(c, inv) for m, c in row.items()} for row in cof]
        reduced.append(_Elem(poly, cof, e.lm, F.one))
        basis_elems[k] = reduced[-1]

    basis = [Polynomial(ring, e.poly) for e in reduced]
    cofactors = [[Polynomial(ring, row) for row in e.cof] for e in reduced]
    return basis, cofactors, eng.usage
