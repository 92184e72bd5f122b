from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.matrices import DomainMatrix

from essalg.errors import InputError, ResourceError
from essalg.homology import (
    FinDimAlgebra,
    bar_complex,
    center_dimension,
    dual_bimodule,
    ext_via_koszul,
    field_algebra,
    findim_from_presentation,
    hchdim_lower_bound,
    hochschild_dims,
    koszul_complex,
    matrix_algebra,
    product_of_fields,
    regular_bimodule,
    tor_via_koszul,
    truncated_polynomial,
)
from essalg.linalg import bareiss_rank, rank, ranks
from essalg.ring_core import GF, QQ, CommPresentation
from essalg.verdict import INCONCLUSIVE, NOT_QUASI_FREE

small_ints = st.integers(min_value=-4, max_value=4)


def matrices(rows=st.integers(1, 6), cols=st.integers(1, 6)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small_ints, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0]))


# -- exact rank against sympy ----------------------------------------------------


@given(matrices())
def test_bareiss_rank_matches_sympy(M):
    assert bareiss_rank([row[:] for row in M]) == sympy.Matrix(M).rank()


@given(matrices(), st.integers(1, 5))
def test_rational_rank_matches_sympy(M, den):
    Q = [[Fraction(x, den + i) for i, x in enumerate(row)] for row in M]
    assert rank(Q, QQ) == sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in Q]).rank()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@given(M=matrices())
def test_modp_rank_matches_sympy(p, M):
    F = GF(p)
    Mp = [[F(x) for x in row] for row in M]
    oracle = DomainMatrix([[sympy.GF(p)(x) for x in row] for row in M], (len(M), len(M[0])), sympy.GF(p)).rank()
    assert rank(Mp, F) == oracle


def test_parallel_ranks():
    mats = [[[1, 2], [2, 4]], [[1, 0], [0, 1]], [[0]]]
    assert ranks(mats, QQ, jobs=2) == ranks(mats, QQ) == [1, 2, 0]


# -- algebras --------------------------------------------------------------------


def test_non_associative_data_rejected():
    unit = [(0, i, i, 1) for i in range(3)] + [(i, 0, i, 1) for i in range(1, 3)]
    # (e1 e1) e1 = e2 e1 = e1 but e1 (e1 e1) = e1 e2 = 0
    with pytest.raises(InputError, match="associativ"):
        FinDimAlgebra(3, unit + [(1, 1, 2, 1), (2, 1, 1, 1)], [1, 0, 0])


def test_wrong_unit_rejected():
    with pytest.raises(InputError):
        FinDimAlgebra(2, [(0, 0, 0, 1), (1, 1, 1, 1)], [1, 0])


def test_findim_from_presentation_dual_numbers():
    A = findim_from_presentation(CommPresentation(["x"], ["x^2"]))
    assert A.dim == 2
    assert hochschild_dims(A, None, 3) == [2, 1, 1, 1]


# -- Hochschild cohomology ------------------------------------------------------------


@pytest.mark.parametrize("A, n, want", [
    (field_algebra(), 3, [1, 0, 0, 0]),
    (product_of_fields(2), 3, [2, 0, 0, 0]),
    (product_of_fields(3), 2, [3, 0, 0]),
    (matrix_algebra(2), 2, [1, 0, 0]),
    (truncated_polynomial(2), 3, [2, 1, 1, 1]),
    (truncated_polynomial(3), 2, [3, 2, 2]),
], ids=["k", "kxk", "kxkxk", "M2", "k[x]/x^2", "k[x]/x^3"])
def test_hochschild_dims(A, n, want):
    assert hochschild_dims(A, None, n) == want
    assert hochschild_dims(A, None, n, normalized=True) == want


@pytest.mark.parametrize("A", [product_of_fields(2), truncated_polynomial(3), matrix_algebra(2)], ids=repr)
def test_hh0_is_center(A):
    assert hochschild_dims(A, None, 0)[0] == center_dimension(A)


def test_dual_bimodule_of_dual_numbers():
    A = truncated_polynomial(2)
    dims = hochschild_dims(A, dual_bimodule(A), 3)
    assert dims == hochschild_dims(A, dual_bimodule(A), 3, normalized=True)
    assert all(d > 0 for d in dims)


@pytest.mark.parametrize("A", [product_of_fields(2), truncated_polynomial(2), matrix_algebra(2)], ids=repr)
@pytest.mark.parametrize("normalized", [False, True])
def test_bar_differential_squares_to_zero(A, normalized):
    assert bar_complex(A, regular_bimodule(A), 2, normalized).check_square_zero()


def test_dual_numbers_over_gf2():
    A = truncated_polynomial(2, GF(2))
    # in characteristic two the Hochschild groups of k[x]/x^2 are 2-dimensional in every degree
    assert hochschild_dims(A, None, 3) == [2, 2, 2, 2]


def test_bar_budgets():
    with pytest.raises(ResourceError) as exc:
        hochschild_dims(field_algebra(), None, 6)
    assert exc.value.budget == "bar_degree"
    with pytest.raises(ResourceError) as exc:
        hochschild_dims(matrix_algebra(3), None, 4)
    assert exc.value.budget == "cochain_dimension"


def test_foreign_bimodule_rejected():
    with pytest.raises(InputError):
        bar_complex(truncated_polynomial(2), regular_bimodule(truncated_polynomial(2)), 1)


def test_hchdim_lower_bound():
    v = hchdim_lower_bound(truncated_polynomial(2), n_max=3)
    assert v.tag == NOT_QUASI_FREE and v.witness["degree"] == 2
    assert hchdim_lower_bound(product_of_fields(2), n_max=3).tag == INCONCLUSIVE
    assert hchdim_lower_bound(matrix_algebra(2), n_max=2).tag == INCONCLUSIVE


# -- Koszul -------------------------------------------------------------------------


def poly_ring(n):
    return CommPresentation([f"x{i}" for i in range(1, n + 1)])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_koszul_tor_and_ext(n):
    R = poly_ring(n)
    want = [comb(n, k) for k in range(n + 1)] + [0]
    assert tor_via_koszul(R, R.variables, n + 1) == want
    assert ext_via_koszul(R, R.variables, n + 1) == want


def test_koszul_square_zero_on_quotient():
    A = CommPresentation(["x", "y", "z"], ["x*y - z^2"])
    assert koszul_complex(A, ["x", "y - 1", "z"]).check_square_zero()


def test_koszul_partial_sequence():
    R = CommPresentation(["x", "y"])
    assert tor_via_koszul(R, ["x"], 2) == [1, 1, 0]


def test_non_regular_sequence_refused():
    A = CommPresentation(["x", "y"], ["x*y"])
    with pytest.raises(InputError):
        tor_via_koszul(A, ["x"])
