"""Finitely presented associative algebras, possibly nonunital or noncommutative.

Words are tuples of generator indices and are ordered deglex (length first,
then lexicographically in the user's generator order).  Nonunital algebras
live inside the free nonunital algebra: their relations carry no empty-word
term.  Unitization, abelianization and standardization act on presentations;
a bounded two-sided completion gives normal forms up to a degree bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from essalg.errors import InputError, ResourceError
from essalg.ring_core import QQ, CommPresentation, Field, PolyRing, Polynomial
from essalg.ring_core.ideal import fresh_name
from essalg.ring_core.polynomial import format_terms

Word = tuple  # tuple[int, ...]


def word_key(w: Word) -> tuple:
    return (len(w), w)


class NCRing:
    """The free algebra ``k<generators>``; ``unital`` records which category we work in.

    Elements may always contain the empty word during arithmetic (so that
    ``2*x`` parses); presentations enforce the unital flag on their relations.
    """

    def __init__(self, generators: Sequence[str], field: Field = QQ, unital: bool = True):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise InputError(f"duplicate generator names in {self.generators}")
        self.field = field
        self.unital = unital
        self._index = {g: i for i, g in enumerate(self.generators)}

    def __eq__(self, other) -> bool:
        return (isinstance(other, NCRing) and self.generators == other.generators
                and self.field == other.field)

    def __hash__(self) -> int:
        return hash((self.generators, self.field))

    def __repr__(self) -> str:
        plus = "" if self.unital else "+"
        return f"{self.field!r}<{', '.join(self.generators)}>{plus}"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise InputError(f"unknown generator {name!r}; have {list(self.generators)}") from None

    def zero(self) -> "NCPolynomial":
        return NCPolynomial(self, {})

    def one(self) -> "NCPolynomial":
        return self.const(1)

    def const(self, c) -> "NCPolynomial":
        c = self.field(c)
        return NCPolynomial(self, {} if self.field.is_zero(c) else {(): c})

    def var(self, name: str) -> "NCPolynomial":
        return NCPolynomial(self, {(self.index(name),): self.field.one})

    def gens(self) -> list["NCPolynomial"]:
        return [self.var(g) for g in self.generators]

    def word(self, w: Word, c=1) -> "NCPolynomial":
        c = self.field(c)
        return NCPolynomial(self, {} if self.field.is_zero(c) else {tuple(w): c})

    def parse(self, text: str) -> "NCPolynomial":
        from essalg.parsing import parse_expression

        return parse_expression(text, self)


class NCPolynomial:
    """Element of the free algebra: ``dict[word, coefficient]`` without zero coefficients."""

    def __init__(self, ring: NCRing, terms: Mapping[Word, object]):
        self.ring = ring
        self.terms = dict(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def lw(self) -> Word:
        return max(self.terms, key=word_key)

    @property
    def lc(self):
        return self.terms[self.lw]

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def has_constant_term(self) -> bool:
        return () in self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    def _coerce(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            if other.ring != self.ring:
                raise InputError(f"ring mismatch: {self.ring!r} vs {other.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other) -> "NCPolynomial":
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = F.add(out[w], c) if w in out else c
            if F.is_zero(v):
                out.pop(w, None)
            else:
                out[w] = v
        return NCPolynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "NCPolynomial":
        F = self.ring.field
        return NCPolynomial(self.ring, {w: F.neg(c) for w, c in self.terms.items()})

    def __sub__(self, other) -> "NCPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "NCPolynomial":
        return self._coerce(other) - self

    def scale(self, c) -> "NCPolynomial":
        F = self.ring.field
        c = F(c)
        if F.is_zero(c):
            return self.ring.zero()
        return NCPolynomial(self.ring, {w: F.mul(a, c) for w, a in self.terms.items()})

    def __mul__(self, other) -> "NCPolynomial":
        if not isinstance(other, NCPolynomial):
            return self.scale(other)
        other = self._coerce(other)
        F = self.ring.field
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                v = F.mul(c1, c2)
                if w in out:
                    v = F.add(out[w], v)
                if F.is_zero(v):
                    out.pop(w, None)
                else:
                    out[w] = v
        return NCPolynomial(self.ring, out)

    def __rmul__(self, other) -> "NCPolynomial":
        if isinstance(other, NCPolynomial):
            return other.__mul__(self)
        return self.scale(other)

    def __pow__(self, n: int) -> "NCPolynomial":
        if not isinstance(n, int) or n < 0:
            raise InputError("exponents must be nonnegative integers")
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def monic(self) -> "NCPolynomial":
        return self.scale(self.ring.field.inv(self.lc)) if self.terms else self

    def evaluate(self, images: Sequence, one):
        """Substitute ``images[i]`` for generator ``i``; ``one`` is used for the empty word."""
        result = None
        for w, c in self.terms.items():
            if w:
                term = images[w[0]]
                for i in w[1:]:
                    term = term * images[i]
            else:
                if one is None:
                    raise InputError("constant term in a nonunital evaluation")
                term = one
            term = term * c
            result = term if result is None else result + term
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, NCPolynomial):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"NCPolynomial({self})"

    def __str__(self) -> str:
        return format_terms(self.sorted_terms(), self.ring.generators, self.ring.field,
                            lambda w, names: "*".join(names[i] for i in w))


# -- presentations ------------------------------------------------------


class NCPresentation:
    """Generators and relations in a free (unital or nonunital) algebra."""

    def __init__(self, generators: Sequence[str], relations: Sequence[NCPolynomial | str] = (),
                 unital: bool = True, field: Field = QQ):
        self.ring = NCRing(generators, field, unital)
        rels = []
        for r in relations:
            if isinstance(r, str):
                r = self.ring.parse(r)
            elif isinstance(r, NCPolynomial):
                if r.ring.generators != self.ring.generators or r.ring.field != field:
                    raise InputError(f"relation {r} is not in {self.ring!r}")
                r = NCPolynomial(self.ring, r.terms)
            else:
                raise InputError(f"relation must be a string or NCPolynomial, got {r!r}")
            if not unital and r.has_constant_term():
                raise InputError(f"relation {r} has a constant term in a nonunital presentation")
            rels.append(r)
        self.relations = tuple(rels)

    @property
    def generators(self) -> tuple[str, ...]:
        return self.ring.generators

    @property
    def unital(self) -> bool:
        return self.ring.unital

    @property
    def field(self) -> Field:
        return self.ring.field

    def parse(self, text: str) -> NCPolynomial:
        return self.ring.parse(text)

    def to_json(self) -> dict:
        return {
            "kind": "nc_presentation",
            "base_field": self.field.to_json(),
            "generators": list(self.generators),
            "relations": [str(r) for r in self.relations],
            "unital": self.unital,
        }

    def __repr__(self) -> str:
        rels = ", ".join(map(str, self.relations)) or "0"
        return f"{self.ring!r}/({rels})"


def commutative_word(w: Word, n: int) -> tuple:
    e = [0] * n
    for i in w:
        e[i] += 1
    return tuple(e)


def to_commutative(p: NCPolynomial, ring: PolyRing) -> Polynomial:
    """Image of ``p`` in the commutative ring on the same generator names."""
    src = p.ring.generators
    idx = [ring.index(g) for g in src]
    F = ring.field
    out: dict = {}
    for w, c in p.terms.items():
        m = commutative_word(tuple(idx[i] for i in w), ring.nvars)
        v = F.add(out[m], c) if m in out else c
        if F.is_zero(v):
            out.pop(m, None)
        else:
            out[m] = v
    return Polynomial(ring, out)


def from_commutative(p: Polynomial, ring: NCRing) -> NCPolynomial:
    """Sorted-word lift of a commutative polynomial."""
    idx = [ring.index(v) for v in p.ring.variables]
    out = {}
    for m, c in p.terms.items():
        w = tuple(idx[i] for i, e in enumerate(m) for _ in range(e))
        out[tuple(sorted(w))] = c
    return NCPolynomial(ring, out)


def as_nc(A: CommPresentation) -> NCPresentation:
    """A commutative presentation as a unital associative one (relations plus commutators)."""
    ring = NCRing(A.variables, A.field, True)
    rels = [from_commutative(r, ring) for r in A.relations]
    gens = ring.gens()
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            rels.append(gens[j] * gens[i] - gens[i] * gens[j])
    return NCPresentation(A.variables, rels, True, A.field)


# -- the three functors ---------------------------------------------------


def _product_idempotent_name(A: NCPresentation) -> str:
    return fresh_name("e", A.generators)


def _homogenize_constant(p: NCPolynomial, e_index: int, ring: NCRing) -> NCPolynomial:
    """Move ``p`` into ``ring`` replacing its constant term ``c`` by ``c*e``."""
    out = {}
    for w, c in p.terms.items():
        out[w if w else (e_index,)] = c
    return NCPolynomial(ring, out)


def unitize(A: NCPresentation) -> NCPresentation:
    """Unitization ``A_1 = A ⊕ k`` as a unital presentation.

    Nonunital ``A``: same generators and relations, now read in the unital
    free algebra (the adjoined unit is the empty word).  Unital ``A``: the
    product model ``A × k`` with a fresh idempotent ``e`` standing for
    ``(1_A, 0)``; constants of the original relations are multiplied by ``e``.
    """
    if not A.unital:
        ring = NCRing(A.generators, A.field, True)
        return NCPresentation(A.generators, [NCPolynomial(ring, r.terms) for r in A.relations],
                              True, A.field)
    e_name = _product_idempotent_name(A)
    gens = A.generators + (e_name,)
    ring = NCRing(gens, A.field, True)
    k = len(A.generators)
    e = ring.var(e_name)
    rels = [e * e - e]
    for x in ring.gens()[:k]:
        rels.append(e * x - x)
        rels.append(x * e - x)
    rels.extend(_homogenize_constant(r, k, ring) for r in A.relations)
    return NCPresentation(gens, rels, True, A.field)


def abelianize(A: NCPresentation | CommPresentation) -> CommPresentation:
    """Quotient by the commutator ideal, as a commutative presentation on the same generators."""
    if isinstance(A, CommPresentation):
        return A
    if not A.unital:
        raise InputError("abelianize expects a unital presentation; unitize it first")
    ring = PolyRing(A.generators, A.field)
    rels = [to_commutative(r, ring) for r in A.relations]
    return CommPresentation(A.generators, [r for r in rels if not r.is_zero()], A.field)


def standardize(A: NCPresentation | CommPresentation) -> CommPresentation:
    """``abelianize(unitize(A))``.  The base-ring restriction is the identity over a field."""
    if isinstance(A, CommPresentation):
        return standardize(as_nc(A))
    return abelianize(unitize(A))


def standardize_direct(A: NCPresentation | CommPresentation) -> CommPresentation:
    """One-shot construction of the standardization, independent of :func:`unitize`."""
    if isinstance(A, CommPresentation):
        A = as_nc(A)
    if not A.unital:
        ring = PolyRing(A.generators, A.field)
        rels = [to_commutative(r, ring) for r in A.relations]
        return CommPresentation(A.generators, [r for r in rels if r], A.field)
    e_name = _product_idempotent_name(A)
    names = A.generators + (e_name,)
    ring = PolyRing(names, A.field)
    e = ring.var(e_name)
    rels = [e * e - e] + [(e - 1) * x for x in ring.gens()[:-1]]
    for r in A.relations:
        img = ring.zero()
        for w, c in r.terms.items():
            m = commutative_word(w, len(names)) if w else commutative_word((len(names) - 1,), len(names))
            img = img + ring.monomial(m, c)
        if img:
            rels.append(img)
    return CommPresentation(names, rels, A.field)


@dataclass(frozen=True)
class StandardFactor:
    label: str  # "standardization", "abelianization" or "base"
    algebra: CommPresentation


def standardization_factors(A: NCPresentation | CommPresentation) -> list[StandardFactor]:
    """Split the standardization on its product idempotent, when there is one.

    A unital input standardizes to ``A^ab × k``; the two factors are obtained
    by adding ``e - 1`` and ``e`` to the ideal.
    """
    if isinstance(A, CommPresentation):
        A = as_nc(A)
    S = standardize(A)
    if not A.unital:
        return [StandardFactor("standardization", S)]
    e = S.variables[-1]
    return [StandardFactor("abelianization", S.with_relations([f"{e} - 1"])),
            StandardFactor("base", S.with_relations([e]))]


# -- bounded two-sided completion -------------------------------------------

DEFAULT_RULE_BUDGET = 20_000


@dataclass
class Completion:
    """Degree-bounded rewriting system; ``confluent`` is False when overlaps beyond the bound were skipped."""

    ring: NCRing
    rules: list[NCPolynomial]
    degree_bound: int
    confluent: bool
    skipped_overlaps: int = 0

    def reduce(self, p: NCPolynomial) -> NCPolynomial:
        return _nc_reduce(p, self.rules)


def _find_subword(w: Word, u: Word) -> int:
    n, k = len(w), len(u)
    for s in range(n - k + 1):
        if w[s:s + k] == u:
            return s
    return -1


def _nc_reduce(p: NCPolynomial, rules: Sequence[NCPolynomial]) -> NCPolynomial:
    F = p.ring.field
    rest = dict(p.terms)
    rem: dict = {}
    lead = [(r.lw, r.lc, r) for r in rules]
    while rest:
        w = max(rest, key=word_key)
        c = rest[w]
        for lw, lc, r in lead:
            s = _find_subword(w, lw)
            if s >= 0:
                left, right = w[:s], w[s + len(lw):]
                f = F.div(c, lc)
                for rw, rc in r.terms.items():
                    t = left + rw + right
                    v = F.sub(rest.get(t, F.zero), F.mul(f, rc))
                    if F.is_zero(v):
                        rest.pop(t, None)
                    else:
                        rest[t] = v
                break
        else:
            rem[w] = c
            del rest[w]
    return NCPolynomial(p.ring, rem)


def _overlaps(a: Word, b: Word):
    """Lengths ``k`` with suffix of ``a`` equal to prefix of ``b`` (proper overlaps)."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield k


def complete(A: NCPresentation, degree_bound: int, rule_budget: int = DEFAULT_RULE_BUDGET) -> Completion:
    """Buchberger-style completion in the free algebra, truncated at ``degree_bound``."""
    ring = A.ring
    rules: list[NCPolynomial] = []
    queue = [r for r in A.relations if r]
    skipped = 0
    done_pairs: set = set()
    while True:
        while queue:
            p = _nc_reduce(queue.pop(0), rules)
            if not p:
                continue
            p = p.monic()
            # rules whose leading word contains the new one are reduced again
            keep, redo = [], []
            for r in rules:
                (redo if _find_subword(r.lw, p.lw) >= 0 else keep).append(r)
            rules = keep + [p]
            queue.extend(redo)
            if len(rules) > rule_budget:
                raise ResourceError("rules", rule_budget)
        new = []
        for i, a in enumerate(rules):
            for j, b in enumerate(rules):
                for k in _overlaps(a.lw, b.lw):
                    key = (a.lw, tuple(a.terms.items()), b.lw, tuple(b.terms.items()), k)
                    if key in done_pairs:
                        continue
                    done_pairs.add(key)
                    w_len = len(a.lw) + len(b.lw) - k
                    if w_len > degree_bound:
                        skipped += 1
                        continue
                    right = ring.word(b.lw[k:])
                    left = ring.word(a.lw[:len(a.lw) - k])
                    s = _nc_reduce(a * right - left * b, rules)
                    if s:
                        new.append(s)
        if not new:
            break
        queue.extend(new)
    rules.sort(key=lambda r: word_key(r.lw))
    return Completion(ring, rules, degree_bound, skipped == 0, skipped)


def nc_normal_form_bounded(p: NCPolynomial, A: NCPresentation, degree_bound: int) -> tuple[NCPolynomial, bool]:
    """Normal form of ``p`` under the completion up to ``degree_bound``, plus the confluence flag."""
    if p.degree() > degree_bound:
        raise InputError(f"degree {p.degree()} exceeds the bound {degree_bound}")
    if p.ring.generators != A.generators:
        raise InputError(f"{p} is not written in the generators of {A}")
    C = complete(A, degree_bound)
    return C.reduce(NCPolynomial(A.ring, p.terms)), C.confluent


# -- morphisms ---------------------------------------------------------------

Presentation = NCPresentation | CommPresentation


@dataclass(frozen=True)
class AlgebraMorphism:
    """Generator images of a morphism ``source -> target`` (expressions in the target)."""

    source: Presentation
    target: Presentation
    images: tuple  # one target element per source generator
    status: str = "unverified"

    @classmethod
    def from_strings(cls, source: Presentation, target: Presentation,
                     images: Mapping[str, str]) -> "AlgebraMorphism":
        src_gens = source.generators if isinstance(source, NCPresentation) else source.variables
        missing = [g for g in src_gens if g not in images]
        if missing:
            raise InputError(f"no image given for generators {missing}")
        extra = [g for g in images if g not in src_gens]
        if extra:
            raise InputError(f"images given for unknown generators {extra}")
        vals = tuple(target.parse(images[g]) if isinstance(images[g], str) else images[g]
                     for g in src_gens)
        return cls(source, target, vals)

    def image_strings(self) -> dict[str, str]:
        src_gens = self.source.generators if isinstance(self.source, NCPresentation) else self.source.variables
        return {g: str(v) for g, v in zip(src_gens, self.images)}


def identity_morphism(A: Presentation) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, tuple(A.ring.gens()))


@dataclass
class MorphismCheck:
    status: str  # verified | verified-up-to-degree(D) | unverified | rejected
    failures: list = field(default_factory=list)  # (relation, reduced image) pairs

    def __str__(self) -> str:
        return self.status


def relation_images(f: AlgebraMorphism) -> list[tuple[str, object]]:
    """Images of the source relations (commutative sources contribute their commutators too)."""
    src = f.source if isinstance(f.source, NCPresentation) else as_nc(f.source)
    tgt = f.target
    if src.unital:
        one = tgt.ring.one()
    else:
        one = None
    images = list(f.images)
    for img in images:
        if isinstance(tgt, CommPresentation):
            ok = isinstance(img, Polynomial) and img.ring.same_variables(tgt.ring)
        else:
            ok = isinstance(img, NCPolynomial) and img.ring == tgt.ring
        if not ok:
            raise InputError(f"image {img} does not live in the target")
    if isinstance(tgt, NCPresentation) and not tgt.unital and src.unital:
        raise InputError("a unital source cannot map unitally into a nonunital target")
    out = []
    for r in src.relations:
        out.append((str(r), r.evaluate(images, one) if r else tgt.ring.zero()))
    return out


def verify_morphism(f: AlgebraMorphism, degree_bound: int = 6) -> MorphismCheck:
    """Certify that every relation of the source maps to zero in the target."""
    rel_imgs = relation_images(f)
    if isinstance(f.target, CommPresentation):
        bad = []
        for r, img in rel_imgs:
            nf = f.target.normal_form(img) if img is not None else None
            if nf is not None and not nf.is_zero():
                bad.append((r, str(nf)))
        return MorphismCheck("rejected" if bad else "verified", bad)
    D = max([degree_bound] + [img.degree() for _, img in rel_imgs if img is not None])
    C = complete(f.target, D)
    bad = []
    for r, img in rel_imgs:
        if img is None:
            continue
        nf = C.reduce(img)
        if nf:
            bad.append((r, str(nf)))
    if bad:
        return MorphismCheck("rejected" if C.confluent else "unverified", bad)
    return MorphismCheck("verified" if C.confluent else f"verified-up-to-degree({D})", [])
