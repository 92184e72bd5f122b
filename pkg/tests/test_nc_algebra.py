import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from essalg.errors import InputError
from essalg.nc_algebra import (
    AlgebraMorphism,
    NCPresentation,
    abelianize,
    complete,
    identity_morphism,
    nc_normal_form_bounded,
    standardization_factors,
    standardize,
    standardize_direct,
    unitize,
    verify_morphism,
)
from essalg.ring_core import CommPresentation, Ideal, krull_dimension

WEYL = ("x", "y"), ["x*y - y*x - 1"]


def reduced_basis(A: CommPresentation):
    return sorted(str(g) for g in A.ideal.basis)


# -- unitize ----------------------------------------------------------------


def test_unitize_nonunital_free_just_allows_the_unit():
    A = NCPresentation(["x"], [], unital=False)
    U = unitize(A)
    assert U.unital and U.generators == ("x",) and U.relations == ()
    assert abelianize(U).same_algebra(CommPresentation(["x"]))


def test_unitize_zero_algebra_is_the_field():
    U = unitize(NCPresentation([], [], unital=False))
    S = abelianize(U)
    assert S.variables == () and not S.is_zero_ring()
    assert krull_dimension(S) == 0


def test_unitize_of_field_is_two_dimensional_product():
    U = unitize(NCPresentation([], []))
    assert U.generators == ("e",)
    assert [str(r) for r in U.relations] == ["e*e - e"]
    S = abelianize(U)
    # k[e]/(e^2 - e) has basis {1, e}: normal forms of e^n stay in that span
    assert S.normal_form(S.parse("e^5")) == S.parse("e")
    assert len(S.ideal.basis) == 1 and S.ideal.basis[0].total_degree() == 2


def test_unitize_product_structure_constants():
    # (a, r)(b, s) = (ab + rb + sa, rs) with (a, r) ↦ a + r*1_A ... realized on A = k:
    # basis (1_A, 0) = e and (0, 1) = 1 - e; check both are orthogonal idempotents
    S = abelianize(unitize(NCPresentation([], [])))
    e = S.parse("e")
    f = S.parse("1 - e")
    assert S.normal_form(e * e) == e
    assert S.normal_form(f * f) == f
    assert S.normal_form(e * f).is_zero()


def test_unital_constants_become_multiples_of_the_idempotent():
    U = unitize(NCPresentation(*WEYL))
    assert U.parse("x*y - y*x - e") in U.relations


def test_e_is_central_in_product_model():
    A = NCPresentation(["x", "y"], ["x*y - y*x - 1", "x*x*y"])
    U = unitize(A)
    C = complete(U, 4)
    e = U.ring.var("e")
    for g in U.ring.gens():
        assert C.reduce(e * g - g * e).is_zero()
    assert C.reduce(e * e - e).is_zero()


def test_nonunital_presentation_rejects_constants():
    with pytest.raises(InputError):
        NCPresentation(["x"], ["x - 1"], unital=False)


# -- abelianize / standardize ---------------------------------------------


def test_abelianize_free_algebra_is_polynomial_ring():
    A = abelianize(NCPresentation(["x", "y"], []))
    assert A.same_algebra(CommPresentation(["x", "y"]))


def test_abelianize_weyl_is_zero_ring():
    assert abelianize(NCPresentation(*WEYL)).is_zero_ring()


def test_abelianize_requires_unital():
    with pytest.raises(InputError):
        abelianize(NCPresentation(["x"], [], unital=False))


def test_abelianize_idempotent_on_commutative():
    A = CommPresentation(["x", "y"], ["x^2 - y", "x*y - 1"])
    assert reduced_basis(abelianize(A)) == reduced_basis(A)
    B = NCPresentation(["x", "y"], ["x*y - y*x", "x*x - y"])
    once = abelianize(B)
    assert reduced_basis(abelianize(once)) == reduced_basis(once)


def test_standardize_examples():
    assert standardize(NCPresentation(["x", "y"], [], unital=False)).same_algebra(
        CommPresentation(["x", "y"]))
    zero = standardize(NCPresentation([], [], unital=False))
    assert zero.variables == () and not zero.is_zero_ring()
    factors = {f.label: f.algebra for f in standardization_factors(NCPresentation(*WEYL))}
    assert factors["abelianization"].is_zero_ring()
    assert not factors["base"].is_zero_ring()
    assert krull_dimension(factors["base"]) == 0


def _random_nc_presentation(rng: random.Random) -> NCPresentation:
    gens = ["x", "y"][: rng.randint(1, 2)]
    unital = rng.random() < 0.6
    rels = []
    for _ in range(rng.randint(0, 2)):
        terms = []
        for _ in range(rng.randint(1, 3)):
            w = [rng.choice(gens) for _ in range(rng.randint(0 if unital else 1, 3))]
            c = rng.choice([-2, -1, 1, 2, 3])
            terms.append(f"{c}*" + ("*".join(w) if w else "1"))
        rels.append(" + ".join(terms))
    return NCPresentation(gens, rels, unital=unital)


@given(st.integers(0, 10**6))
def test_standardize_functorial_composite_equals_one_shot(seed):
    A = _random_nc_presentation(random.Random(seed))
    S1, S2 = standardize(A), standardize_direct(A)
    assert S1.variables == S2.variables
    assert reduced_basis(S1) == reduced_basis(S2)


# -- bounded normal forms ---------------------------------------------------


def test_nc_normal_form_commutator():
    A = NCPresentation(["x", "y"], ["x*y - y*x"])
    nf, confluent = nc_normal_form_bounded(A.parse("x*y"), A, 4)
    assert confluent
    assert nf == A.parse("x*y") or nf == A.parse("y*x")
    # deglex with x < y rewrites y*x to x*y
    assert nf == A.parse("x*y")


def test_nc_normal_form_free_algebra():
    A = NCPresentation(["x"], [])
    nf, confluent = nc_normal_form_bounded(A.parse("x^3"), A, 3)
    assert nf == A.parse("x*x*x") and confluent


def test_nc_normal_form_sl2_straightening():
    A = NCPresentation(["f", "h", "e"], ["e*f - f*e - h", "h*f - f*h + 2*f", "e*h - h*e + 2*e"])
    nf, confluent = nc_normal_form_bounded(A.parse("h*e*f"), A, 3)
    assert confluent
    assert nf == A.parse("f*h*e + h*h - 2*f*e")


def test_nc_normal_form_degree_precondition():
    A = NCPresentation(["x"], [])
    with pytest.raises(InputError):
        nc_normal_form_bounded(A.parse("x^5"), A, 3)


# -- morphisms -------------------------------------------------------------


def test_morphism_inclusion_into_localization():
    src = NCPresentation(["x"], [], unital=False)
    tgt = CommPresentation(["x", "t"], ["t*x - 1"])
    f = AlgebraMorphism.from_strings(src, tgt, {"x": "x"})
    assert verify_morphism(f).status == "verified"


def test_morphism_swap_on_commutative_free():
    A = NCPresentation(["x", "y"], ["x*y - y*x"])
    f = AlgebraMorphism.from_strings(A, A, {"x": "y", "y": "x"})
    assert verify_morphism(f).status == "verified"


def test_morphism_rejected_when_relation_survives():
    f = AlgebraMorphism.from_strings(CommPresentation(["x"], ["x^2"]),
                                     CommPresentation(["x"], ["x^3"]), {"x": "x"})
    check = verify_morphism(f)
    assert check.status == "rejected"
    assert check.failures and check.failures[0][1] == "x^2"


def test_morphism_missing_image():
    A = NCPresentation(["x", "y"], [])
    with pytest.raises(InputError):
        AlgebraMorphism.from_strings(A, A, {"x": "y"})


def test_morphism_truncated_completion_reports_degree():
    # the braid relation has self-overlaps of length 5, beyond the bound
    A = NCPresentation(["x", "y"], ["x*y*x - y*x*y"])
    assert verify_morphism(identity_morphism(A), degree_bound=3).status == "verified-up-to-degree(3)"


@pytest.mark.parametrize("A", [
    NCPresentation(*WEYL),
    NCPresentation(["x"], ["x*x"], unital=False),
    NCPresentation(["f", "h", "e"], ["e*f - f*e - h", "h*f - f*h + 2*f", "e*h - h*e + 2*e"]),
    CommPresentation(["x", "y"], ["y - x^2"]),
    NCPresentation([], []),
])
def test_identity_morphisms_verify(A):
    assert verify_morphism(identity_morphism(A)).status.startswith("verified")


def test_commutative_source_carries_commutators():
    # k[x,y] → k<x,y> sending generators to themselves is not a morphism
    src = CommPresentation(["x", "y"])
    tgt = NCPresentation(["x", "y"], [])
    f = AlgebraMorphism.from_strings(src, tgt, {"x": "x", "y": "y"})
    assert verify_morphism(f).status == "rejected"


def test_membership_in_standardization_of_unital_free():
    S = standardize(NCPresentation(["x", "y"], []))
    # e acts as the identity on x and y in the product model
    assert Ideal(S.relations, S.ring).contains(S.parse("e*x - x"))
