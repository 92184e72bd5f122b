import pytest

from essalg.errors import InputError
from essalg.io import load_object
from essalg.ring_core import GF, LEX


def test_unknown_kind():
    with pytest.raises(InputError, match="unknown kind"):
        load_object({"kind": "scheme"})


def test_kind_mismatch():
    with pytest.raises(InputError, match="expected a lie_algebra"):
        load_object({"kind": "comm_presentation", "variables": ["x"]}, "lie_algebra")


def test_comm_presentation_with_field_and_order():
    A = load_object({"kind": "comm_presentation", "base_field": {"type": "Fp", "p": 5},
                     "variables": ["x", "y"], "relations": ["x^5 - x"], "order": "lex"})
    assert A.field == GF(5)
    assert A.ring.order == LEX


def test_lie_fills_missing_antisymmetric_partners():
    g = load_object({"kind": "lie_algebra", "basis": ["x", "y", "z"], "structure_constants": [[0, 1, 2, 1]]})
    assert g.bracket(1, 0) == {2: -1}


def test_lie_dimension_mismatch():
    with pytest.raises(InputError):
        load_object({"kind": "lie_algebra", "basis": ["x"], "dimension": 2})


def test_rational_structure_constants():
    A = load_object({"kind": "findim_algebra", "dimension": 2, "unit": [1, 0],
                     "structure_constants": [[0, 0, 0, 1], [0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, "1/4"]]})
    assert A.product((0, 1), (0, 1)) == (A.field("1/4"), 0)


@pytest.mark.parametrize("payload", [
    {"kind": "nc_presentation", "generators": "x"},
    {"kind": "findim_algebra", "dimension": 1, "unit": [1], "structure_constants": [[0, 0, 1]]},
    {"kind": "morphism", "source": {"kind": "comm_presentation", "variables": ["x"]},
     "target": {"kind": "comm_presentation", "variables": ["x"]}, "images": ["x"]},
])
def test_malformed_payloads(payload):
    with pytest.raises(InputError):
        load_object(payload)
