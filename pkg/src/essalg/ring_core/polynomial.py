"""Sparse multivariate polynomials over an exact field.

A polynomial is a dict from exponent tuples to nonzero coefficients, tied to a
:class:`PolyRing` that fixes the field, the variable names and the active
monomial order.  Values are treated as immutable once built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping

from essalg.errors import InputError
from essalg.ring_core.fields import QQ, Field, RationalField

Monomial = tuple  # tuple[int, ...], one exponent per variable


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _grevlex_key(m: Monomial) -> tuple:
    return (sum(m), tuple(-e for e in reversed(m)))


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``elim`` (block order eliminating the first ``block`` variables).

    Keys grow with the monomial: the leading term is the one with the largest key.
    """

    name: str = "grevlex"
    block: int = 0

    def __post_init__(self):
        if self.name not in ("lex", "grevlex", "elim"):
            raise InputError(f"unknown monomial order {self.name!r}")
        if self.name == "elim" and self.block < 0:
            raise InputError("elimination block size must be nonnegative")

    def key(self, m: Monomial):
        if self.name == "lex":
            return m
        if self.name == "grevlex":
            return _grevlex_key(m)
        k = self.block
        return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))

    def __str__(self) -> str:
        return f"elim({self.block})" if self.name == "elim" else self.name

    @classmethod
    def parse(cls, text: str) -> "MonomialOrder":
        text = text.strip()
        if text.startswith("elim(") and text.endswith(")"):
            return cls("elim", int(text[5:-1]))
        return cls(text)


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


class PolyRing:
    """k[x_1..x_n] with a fixed monomial order."""

    def __init__(self, variables: Iterable[str], field: Field = QQ,
                 order: MonomialOrder = GREVLEX):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise InputError(f"duplicate variable names in {self.variables}")
        self.field = field
        self.order = order
        self.nvars = len(self.variables)
        self._index = {v: i for i, v in enumerate(self.variables)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, PolyRing) and self.variables == other.variables
                and self.field == other.field and self.order == other.order)

    def __hash__(self) -> int:
        return hash((self.variables, self.field, self.order))

    def __repr__(self) -> str:
        return f"PolyRing({list(self.variables)}, {self.field!r}, {self.order})"

    def same_variables(self, other: "PolyRing") -> bool:
        return self.variables == other.variables and self.field == other.field

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.variables, self.field, order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown variable {name!r}; ring has {list(self.variables)}") from None

    @property
    def zero_monomial(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {} if self.field.is_zero(c) else {self.zero_monomial: c})

    def var(self, name: str) -> "Polynomial":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def monomial(self, exps: Monomial, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {} if self.field.is_zero(c) else {tuple(exps): c})

    def parse(self, text: str) -> "Polynomial":
        from essalg.parsing import parse_expression

        return parse_expression(text, self)


class Polynomial:
    """Element of a :class:`PolyRing`.  ``terms`` never stores a zero coefficient."""

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, object], _trusted: bool = True):
        self.ring = ring
        if _trusted:
            self.terms = dict(terms)
        else:
            F = ring.field
            self.terms = {}
            for m, c in terms.items():
                c = F(c)
                if len(m) != ring.nvars:
                    raise InputError(f"monomial {m} has wrong length for {ring!r}")
                if not F.is_zero(c):
                    self.terms[tuple(m)] = c

    # -- structure -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_monomial in self.terms)

    def constant_coefficient(self):
        return self.terms.get(self.ring.zero_monomial, self.ring.field.zero)

    @cached_property
    def lm(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.order.key)

    @property
    def lc(self):
        return self.terms[self.lm]

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms in decreasing order under the ring's monomial order."""
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def __iter__(self) -> Iterator[tuple[Monomial, object]]:
        return iter(self.sorted_terms())

    def __len__(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def variables_used(self) -> set[int]:
        return {i for m in self.terms for i, e in enumerate(m) if e}

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                if other.ring.same_variables(self.ring):
                    return Polynomial(self.ring, other.terms)
                raise InputError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F.add(out[m], c) if m in out else c
            if F.is_zero(s):
                out.pop(m, None)
            else:
                out[m] = s
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        F = self.ring.field
        return Polynomial(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "Polynomial":
        F = self.ring.field
        c = F(c)
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: F.mul(a, c) for m, a in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Polynomial":
        F = self.ring.field
        if F.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {mono_mul(m, mono): F.mul(a, c) for m, a in self.terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._coerce(other)
        F = self.ring.field
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = F.mul(c1, c2)
                if m in out:
                    s = F.add(out[m], c)
                    if F.is_zero(s):
                        del out[m]
                    else:
                        out[m] = s
                elif not F.is_zero(c):
                    out[m] = c
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise InputError("polynomial exponents must be nonnegative integers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        F = self.ring.field
        return self.scale(F.inv(self.lc))

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if ``divisor`` does not divide ``self``."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.ring.field
        lm, lc = divisor.lm, divisor.lc
        rest = dict(self.terms)
        quotient: dict = {}
        key = self.ring.order.key
        while rest:
            m = max(rest, key=key)
            if not mono_divides(lm, m):
                raise ValueError("division is not exact")
            q = mono_div(m, lm)
            c = F.div(rest[m], lc)
            quotient[q] = c
            for dm, dc in divisor.terms.items():
                t = mono_mul(dm, q)
                s = F.sub(rest.get(t, F.zero), F.mul(c, dc))
                if F.is_zero(s):
                    rest.pop(t, None)
                else:
                    rest[t] = s
        return Polynomial(self.ring, quotient)

    def diff(self, i: int) -> "Polynomial":
        F = self.ring.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                c2 = F.mul(c, F(e))
                if not F.is_zero(c2):
                    out[m[:i] + (e - 1,) + m[i + 1:]] = c2
        return Polynomial(self.ring, out)

    def substitute(self, images: list["Polynomial"], target: PolyRing | None = None) -> "Polynomial":
        """Evaluate with variable ``i`` replaced by ``images[i]``."""
        target = target or (images[0].ring if images else self.ring)
        result = target.zero()
        cache: dict = {}
        for m, c in self.terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    key = (i, e)
                    if key not in cache:
                        cache[key] = images[i] ** e
                    term = term * cache[key]
            result = result + term
        return result

    def in_ring(self, ring: PolyRing) -> "Polynomial":
        """Reinterpret in a ring over the same field whose variables include ours (by name)."""
        if ring == self.ring:
            return self
        if ring.field != self.ring.field:
            raise InputError("cannot move a polynomial between different fields")
        idx = [ring.index(v) for v in self.ring.variables]
        out = {}
        for m, c in self.terms.items():
            e = [0] * ring.nvars
            for i, x in zip(idx, m):
                e[i] += x
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # -- comparison / display -------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring.same_variables(other.ring) and self.terms == other.terms
        try:
            return self.terms == self.ring.const(other).terms
        except InputError:
            return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring.variables, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return format_terms(self.sorted_terms(), self.ring.variables, self.ring.field,
                            _mono_str)


def _mono_str(m: Monomial, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_terms(terms, names, field: Field, mono_str) -> str:
    """Render (monomial, coefficient) pairs in a form the expression parser accepts."""
    if not terms:
        return "0"
    signed = isinstance(field, RationalField)
    out = []
    for k, (m, c) in enumerate(terms):
        neg = signed and c < 0
        mag = -c if neg else c
        ms = mono_str(m, names)
        if not ms:
            body = field.to_str(mag)
        elif mag == 1:
            body = ms
        else:
            body = f"{field.to_str(mag)}*{ms}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
