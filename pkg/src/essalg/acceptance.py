"""Acceptance criteria as runnable checks, shared by ``essalg selftest`` and the test suite.

Each criterion returns a :class:`CriterionResult`; it passes only when every
check holds exactly and the wall-clock time stays under its limit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from essalg.dimension_theory import degeneracy_verdict
from essalg.essential_geometry import (
    ACCEPTED,
    CoverCandidate,
    cover_check,
    verify_essential_localization,
)
from essalg.homology import (
    bar_complex,
    findim_from_presentation,
    hochschild_dims,
    koszul_complex,
    matrix_algebra,
    product_of_fields,
    regular_bimodule,
    truncated_polynomial,
    ext_via_koszul,
    tor_via_koszul,
)
from essalg.lie_env import (
    abelian_lie,
    ce_complex,
    chevalley_eilenberg_dims,
    lie_quasifree_verdict,
    pbw_normal_form,
    pbw_to_nc,
    sl2,
    trivial_module,
    universal_envelope,
)
from essalg.nc_algebra import AlgebraMorphism, NCPresentation, complete
from essalg.points_enum import abelianization_of, enumerate_homs
from essalg.ring_core import GF, LEX, CommPresentation, Ideal, PolyRing, krull_dimension
from essalg.ring_core.buchberger import buchberger
from essalg.smoothness import SMOOTH, essential_check, jacobian_smooth
from essalg.verdict import INCONCLUSIVE, NOT_QUASI_FREE

SEED = 20261016


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    seconds: float
    limit: float
    failures: list[str] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f"; {self.failures[0]}" if self.failures else ""
        return f"[{status}] criterion {self.number}: {self.title} ({self.seconds:.2f}s / {self.limit:.0f}s){tail}"

    def to_json(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed,
                "seconds": round(self.seconds, 3), "limit": self.limit, "failures": self.failures}


class _Checks:
    def __init__(self):
        self.failures: list[str] = []

    def expect(self, ok: bool, message: str) -> None:
        if not ok:
            self.failures.append(message)

    def equal(self, got, want, what: str) -> None:
        self.expect(got == want, f"{what}: got {got!r}, expected {want!r}")


def _polynomial_ring(n: int) -> CommPresentation:
    return CommPresentation([f"x{i}" for i in range(1, n + 1)])


def sphere(n: int = 4) -> CommPresentation:
    xs = [f"x{i}" for i in range(1, n + 1)]
    return CommPresentation(xs, [" + ".join(f"{x}^2" for x in xs) + " - 1"])


def gl_model() -> CommPresentation:
    """k[x1..x4, t]/(t*q - 1) with q = det + 1, a polynomial that is 1 at the origin."""
    return CommPresentation(["x1", "x2", "x3", "x4", "t"], ["t*(x1*x4 - x2*x3 + 1) - 1"])


def random_poly(ring: PolyRing, rng: random.Random, max_terms=3, max_deg=3, coeff=3):
    p = ring.zero()
    for _ in range(rng.randint(1, max_terms)):
        e = [0] * ring.nvars
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(ring.nvars)] += 1
        p = p + ring.monomial(tuple(e), rng.randint(-coeff, coeff))
    return p


# -- the criteria --------------------------------------------------------------


def criterion_1(c: _Checks) -> None:
    for n in range(1, 5):
        c.equal(krull_dimension(_polynomial_ring(n)), n, f"dim Q[x1..x{n}]")
    c.equal(krull_dimension(sphere()), 3, "dim of the sphere ring")
    c.equal(krull_dimension(CommPresentation(["x"], ["x^2"])), 0, "dim Q[x]/(x^2)")


def criterion_2(c: _Checks) -> None:
    c.equal(degeneracy_verdict(sphere()).tag, NOT_QUASI_FREE, "sphere verdict")
    c.equal(degeneracy_verdict(gl_model()).tag, NOT_QUASI_FREE, "GL-model verdict")
    c.equal(degeneracy_verdict(CommPresentation(["x"])).tag, INCONCLUSIVE, "Q[x] verdict")


def criterion_3(c: _Checks) -> None:
    cases = [("QxQ", product_of_fields(2), 3, [2, 0, 0, 0]),
             ("M2(Q)", matrix_algebra(2), 2, [1, 0, 0]),
             ("Q[x]/(x^2)", truncated_polynomial(2), 3, [2, 1, 1, 1])]
    for name, A, n, want in cases:
        plain = hochschild_dims(A, None, n)
        normalized = hochschild_dims(A, None, n, normalized=True)
        c.equal(plain, want, f"HH*({name}, A)")
        c.equal(normalized, plain, f"normalized vs unnormalized on {name}")


def criterion_4(c: _Checks) -> None:
    c.equal(chevalley_eilenberg_dims(sl2()), [1, 0, 0, 1], "HL*(sl2, k)")
    for d in range(1, 5):
        g = abelian_lie(d)
        dims = chevalley_eilenberg_dims(g)
        c.equal(dims, [comb(d, n) for n in range(d + 1)], f"HL*(abelian {d}, k)")
        R = _polynomial_ring(d)
        c.equal(ext_via_koszul(R, R.variables, d), dims, f"Koszul Ext over U(abelian {d})")
    v = lie_quasifree_verdict(sl2())
    c.expect(v.tag == NOT_QUASI_FREE and v.witness.get("degree") == 3, f"sl2 verdict {v.tag} {v.witness}")
    v2 = lie_quasifree_verdict(abelian_lie(2))
    c.expect(v2.tag == NOT_QUASI_FREE and v2.witness.get("degree") == 2, f"abelian-2 verdict {v2.tag}")
    plane = degeneracy_verdict(CommPresentation(["x1", "x2"]))
    c.equal(plane.tag, v2.tag, "abelian-2 envelope vs Q[x,y] degeneracy")


def criterion_5(c: _Checks) -> None:
    for n in range(1, 4):
        R = _polynomial_ring(n)
        tor = tor_via_koszul(R, R.variables, n + 1)
        c.expect(tor[n] != 0 and tor[n + 1] == 0, f"Tor over Q[x1..x{n}]: {tor}")


def criterion_6(c: _Checks) -> None:
    for A in (NCPresentation(["x", "y"], [], unital=False), NCPresentation(["x", "y"], [])):
        v = essential_check(A, "smooth")
        c.equal(v.tag, "EssentiallySmooth", f"essential smoothness of {A!r}")
    rng = random.Random(SEED)
    agree = 0
    for trial in range(50):
        names = ["x", "y", "z"][: rng.randint(1, 3)]
        R = PolyRing(names)
        rels = [random_poly(R, rng) for _ in range(rng.randint(0, 2))]
        A = CommPresentation(names, [r for r in rels if r])
        factors = {f["factor"]: f for f in essential_check(A, "smooth").witness["factors"]}
        ab = factors["abelianization"]
        if A.is_zero_ring():
            ok = ab.get("collapsed", False)
        else:
            ok = ab["smooth"] == (jacobian_smooth(A).tag == SMOOTH)
        agree += ok
        c.expect(ok, f"trial {trial}: disagreement on {A!r}")
    c.equal(agree, 50, "agreement count")


def criterion_7(c: _Checks) -> None:
    X = CommPresentation(["x"])
    good = cover_check(CoverCandidate(X, ["x", "x - 1"]))
    c.expect(good.verified and good.coefficients == ["1", "-1"], f"cover {{x, x-1}}: {good.to_json()}")
    ys = [X.parse(y) for y in good.coefficients or ["0", "0"]]
    c.expect(X.normal_form(ys[0] * X.parse("x") + ys[1] * X.parse("x - 1") - 1).is_zero(),
             "witness identity y1*x + y2*(x-1) = 1")
    bad = cover_check(CoverCandidate(X, ["x", "x^2"]))
    c.expect(not bad.verified and bad.evidence == ["x"], f"cover {{x, x^2}}: {bad.to_json()}")
    src = NCPresentation(["x", "y"], [], unital=False)
    tgt = CommPresentation(["x", "y", "t"], ["t*(x - 1) - 1"])
    nu = AlgebraMorphism.from_strings(src, tgt, {"x": "x", "y": "y"})
    ident = {"x": "x", "y": "y", "t": "t"}
    c.equal(verify_essential_localization(nu, "x - 1", (ident, ident)).tag, ACCEPTED, "localization at x-1")


def _random_commutative_target(rng: random.Random, p: int):
    F = GF(p)
    deg = rng.randint(1, 3)
    coeffs = [rng.randrange(p) for _ in range(deg)]
    rel = "x^%d" % deg + "".join(f" + {a}*x^{i}" for i, a in enumerate(coeffs) if a)
    return findim_from_presentation(CommPresentation(["x"], [rel], F))


def _random_source(rng: random.Random, p: int) -> NCPresentation:
    gens = ["a", "b"][: rng.randint(1, 2)]
    unital = rng.random() < 0.7
    rels = []
    for _ in range(rng.randint(0, 2)):
        terms = []
        for _ in range(rng.randint(1, 3)):
            w = [rng.choice(gens) for _ in range(rng.randint(0 if unital else 1, 2))]
            terms.append(f"{rng.randrange(1, p)}*" + ("*".join(w) if w else "1"))
        rels.append(" + ".join(terms))
    return NCPresentation(gens, rels, unital, GF(p))


def criterion_8(c: _Checks) -> None:
    F2 = GF(2)
    A = CommPresentation(["x"], ["x^2 - x"], F2)
    B = product_of_fields(1, F2)
    unital = enumerate_homs(A, B, unital_only=True)
    c.equal(len(unital), 2, "|Hom_unital(F2[x]/(x^2-x), F2)|")
    loose = enumerate_homs(A, B, unital_only=False, commutative=False)
    c.expect(unital.as_set() < loose.as_set(), "unital point set strictly inside the nonunital one")
    zero_map = ((0,), (0,))
    c.expect(zero_map in loose.as_set() and zero_map not in unital.as_set(), "zero map in the difference")
    rng = random.Random(SEED + 8)
    for trial in range(10):
        p = rng.choice([2, 3])
        Bt = _random_commutative_target(rng, p)
        At = _random_source(rng, p)
        n1 = len(enumerate_homs(At, Bt, True))
        n2 = len(enumerate_homs(abelianization_of(At), Bt, True))
        c.expect(n1 == n2, f"trial {trial}: {n1} vs {n2} points for {At!r} into dim-{Bt.dim} over GF({p})")


def _pbw_agreement(c: _Checks) -> None:
    from itertools import product as iproduct

    g = sl2()
    U = universal_envelope(g)
    C = complete(U, 3)
    for n in range(1, 4):
        for w in iproduct(range(3), repeat=n):
            p = U.ring.word(w)
            pbw = pbw_normal_form(p, g)
            nf = C.reduce(p)
            c.equal(pbw_to_nc(pbw, U.ring), nf, f"PBW vs rewriting on {p}")
            c.equal(pbw_normal_form(pbw_to_nc(pbw, U.ring), g), pbw, f"PBW idempotence on {p}")


def criterion_9(c: _Checks) -> None:
    # d∘d = 0 on every complex the engines build
    for g in (sl2(), abelian_lie(3)):
        c.expect(ce_complex(g, trivial_module(g), g.dim).check_square_zero(g.field), f"CE d∘d for {g!r}")
    for A in (product_of_fields(2), truncated_polynomial(2), matrix_algebra(2)):
        for normalized in (False, True):
            n = 2 if A.dim > 2 else 3
            c.expect(bar_complex(A, regular_bimodule(A), n, normalized).check_square_zero(),
                     f"bar d∘d for {A!r}")
    c.expect(koszul_complex(_polynomial_ring(3), ["x1", "x2", "x3"]).check_square_zero(), "Koszul d∘d")

    rng = random.Random(SEED + 9)
    R = PolyRing(["x", "y", "z"])
    for i in range(200):
        I = Ideal([random_poly(R, rng, max_deg=2) for _ in range(2)], R)
        p = random_poly(R, rng, max_terms=4)
        r = I.normal_form(p)
        c.expect(I.normal_form(r) == r, f"normal form not idempotent on {p}")
        if i % 10 == 0:
            w = I.membership_witness(p - r)
            c.expect(w is not None and sum((a * g for a, g in zip(w, I.generators)), R.zero()) == p - r,
                     f"membership witness replay for {p - r}")
    for _ in range(20):
        gens = [g for g in (random_poly(R, rng, max_deg=2) for _ in range(2)) if g]
        A = CommPresentation(R.variables, gens)
        d = krull_dimension(A)
        c.equal(krull_dimension(A.with_order(LEX)), d, f"Krull order invariance on {gens}")
        c.equal(krull_dimension(CommPresentation(R.variables, list(reversed(gens)))), d,
                f"Krull permutation invariance on {gens}")
    _pbw_agreement(c)
    gens = [random_poly(R, rng) for _ in range(3)]
    runs = [buchberger(gens, R) for _ in range(2)]
    c.equal(repr([g.terms for g in runs[0][0]]), repr([g.terms for g in runs[1][0]]), "Buchberger determinism")


CRITERIA: list[tuple[int, str, float, Callable[[_Checks], None]]] = [
    (1, "Krull dimensions", 5, criterion_1),
    (2, "degeneracy verdicts", 30, criterion_2),
    (3, "Hochschild suite", 60, criterion_3),
    (4, "Lie suite", 10, criterion_4),
    (5, "Koszul flat-dimension oracle", 10, criterion_5),
    (6, "essential smoothness", 120, criterion_6),
    (7, "covers and localization", 5, criterion_7),
    (8, "point sets", 60, criterion_8),
    (9, "property suites", 300, criterion_9),
]


def run_criterion(number: int) -> CriterionResult:
    _, title, limit, fn = next(c for c in CRITERIA if c[0] == number)
    checks = _Checks()
    start = time.perf_counter()
    try:
        fn(checks)
    except Exception as exc:  # a crash is a failure of this criterion, not of the runner
        checks.failures.append(f"{type(exc).__name__}: {exc}")
    seconds = time.perf_counter() - start
    if seconds >= limit:
        checks.failures.append(f"took {seconds:.2f}s, limit {limit}s")
    return CriterionResult(number, title, not checks.failures, seconds, limit, checks.failures)


def run_all(numbers=None) -> list[CriterionResult]:
    return [run_criterion(n) for n, *_ in CRITERIA if numbers is None or n in numbers]
