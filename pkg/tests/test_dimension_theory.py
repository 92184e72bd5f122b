import pytest

from essalg.dimension_theory import (
    degeneracy_verdict,
    fd_ledger,
    is_regular_element,
    is_regular_sequence,
)
from essalg.errors import InputError
from essalg.ring_core import CommPresentation
from essalg.verdict import INCONCLUSIVE, NOT_QUASI_FREE

PLANE = CommPresentation(["x", "y"])
CROSS = CommPresentation(["x", "y"], ["x*y"])


def test_regular_elements():
    assert is_regular_element(PLANE, "x")
    assert is_regular_element(CROSS, "x + y")
    check = is_regular_element(CROSS, "x")
    assert not check.regular and "larger" in check.reason
    assert not is_regular_element(CROSS, "x*y").regular


def test_regular_sequence_certificate():
    cert = is_regular_sequence(PLANE, ["x", "y"])
    assert cert.ok and len(cert) == 2 and cert.failed_index is None
    assert cert.replay()
    assert cert.to_json()["steps"][0]["element"] == "x"


def test_repeated_element_fails_at_second_position():
    cert = is_regular_sequence(PLANE, ["x", "x"])
    assert not cert.ok and cert.failed_index == 2


def test_unit_ideal_sequence_is_not_regular():
    cert = is_regular_sequence(PLANE, ["x", "x - 1"])
    assert not cert.ok
    assert cert.reason == "the sequence generates the unit ideal"


def test_order_matters_off_the_local_case():
    R = CommPresentation(["x", "y", "z"])
    good = is_regular_sequence(R, ["x", "y*(1 - x)", "z*(1 - x)"])
    bad = is_regular_sequence(R, ["y*(1 - x)", "z*(1 - x)", "x"])
    assert good.ok
    assert not bad.ok and bad.failed_index == 2


def test_fd_ledger_confirms_with_koszul():
    stmt = fd_ledger(PLANE, ["x", "y"])
    assert stmt.flat_dimension == 2
    assert stmt.certification == "koszul-exact"
    assert stmt.tor == [1, 2, 1, 0]


def test_fd_ledger_refuses_uncertified():
    with pytest.raises(InputError):
        fd_ledger(CROSS, ["x"])


@pytest.mark.parametrize("A, seq, tag, path", [
    (CommPresentation(["x1", "x2", "x3", "x4"], ["x1^2 + x2^2 + x3^2 + x4^2 - 1"]), None, NOT_QUASI_FREE, "regular"),
    (PLANE, ["x", "y"], NOT_QUASI_FREE, "sequence"),
    (PLANE, None, NOT_QUASI_FREE, "regular"),
    (CommPresentation(["x"]), None, INCONCLUSIVE, None),
    (CommPresentation(["x", "y"], ["y^2 - x^3"]), None, INCONCLUSIVE, None),
])
def test_degeneracy_verdicts(A, seq, tag, path):
    v = degeneracy_verdict(A, seq)
    assert v.tag == tag
    if path:
        assert v.witness["path"] == path


def test_bad_sequence_falls_back_to_regular_path():
    v = degeneracy_verdict(PLANE, ["x", "x"])
    assert v.tag == NOT_QUASI_FREE and v.witness["path"] == "regular"


def test_inconclusive_records_both_branches():
    v = degeneracy_verdict(CROSS, ["x"])
    assert v.tag == INCONCLUSIVE
    assert [b["path"] for b in v.witness["failed_branches"]] == ["sequence", "regular"]


def test_zero_ring_rejected():
    with pytest.raises(InputError):
        degeneracy_verdict(CommPresentation(["x"], ["1"]))
