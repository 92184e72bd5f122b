"""Regular elements and sequences, flat-dimension ledgers, and degeneracy verdicts."""

from __future__ import annotations

from dataclasses import dataclass, field

from essalg.errors import InputError
from essalg.ring_core import CommPresentation, Polynomial, colon_ideal, krull_dimension
from essalg.verdict import INCONCLUSIVE, NOT_QUASI_FREE, Verdict

KOSZUL_CONFIRMATION_LIMIT = 3


def _basis_strings(ideal) -> list[str]:
    return [str(g) for g in ideal.basis]


@dataclass
class RegularityCheck:
    regular: bool
    reason: str
    ideal_basis: list[str] = field(default_factory=list)
    colon_basis: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.regular


def is_regular_element(A: CommPresentation, x) -> RegularityCheck:
    """``x`` is regular iff it is nonzero in ``A`` and ``(I : x) = I``."""
    x = A.element(x)
    if A.normal_form(x).is_zero():
        return RegularityCheck(False, "zero in the quotient")
    I = A.ideal
    J = colon_ideal(I, x)
    same = I.same_ideal(J)
    reason = "colon ideal equals the ideal" if same else "colon ideal is strictly larger"
    return RegularityCheck(same, reason, _basis_strings(I), _basis_strings(J))


@dataclass
class StepProof:
    element: str
    ideal_basis: list[str]
    colon_basis: list[str]


@dataclass
class RegularSequenceCertificate:
    """Per-step colon checks; ``failed_index`` counts from 1 and is None on success."""

    algebra: CommPresentation
    sequence: list[Polynomial]
    steps: list[StepProof]
    ok: bool
    failed_index: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __len__(self) -> int:
        return len(self.sequence)

    def replay(self) -> bool:
        """Recompute every step from scratch and compare with the stored proofs."""
        again = is_regular_sequence(self.algebra, self.sequence)
        return (again.ok == self.ok and again.failed_index == self.failed_index
                and [(s.element, s.ideal_basis, s.colon_basis) for s in again.steps]
                == [(s.element, s.ideal_basis, s.colon_basis) for s in self.steps])

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "sequence": [str(x) for x in self.sequence],
            "ok": self.ok,
            "failed_index": self.failed_index,
            "reason": self.reason,
            "steps": [{"element": s.element, "ideal_basis": s.ideal_basis,
                       "colon_basis": s.colon_basis} for s in self.steps],
        }


def is_regular_sequence(A: CommPresentation, seq) -> RegularSequenceCertificate:
    """Check each member on the successive quotients; the final quotient must be nonzero."""
    xs = [A.element(s) for s in seq]
    if not xs:
        raise InputError("the sequence is empty")
    steps = []
    current = A
    for n, x in enumerate(xs, start=1):
        check = is_regular_element(current, x)
        if not check.regular:
            return RegularSequenceCertificate(A, xs, steps, False, n, check.reason)
        steps.append(StepProof(str(x), check.ideal_basis, check.colon_basis))
        current = current.with_relations([x])
    if current.is_zero_ring():
        return RegularSequenceCertificate(A, xs, steps, False, len(xs),
                                          "the sequence generates the unit ideal")
    return RegularSequenceCertificate(A, xs, steps, True)


@dataclass
class FlatDimensionStatement:
    module: str
    flat_dimension: int
    certification: str  # "koszul-exact" or "regular-sequence"
    tor: list[int] | None = None

    def to_json(self) -> dict:
        return {"module": self.module, "flat_dimension": self.flat_dimension,
                "certification": self.certification, "tor": self.tor}


def fd_ledger(A: CommPresentation, seq) -> FlatDimensionStatement:
    """``fd_A(A/(seq)) = len(seq)`` for a certified regular sequence (fd grows by one per member)."""
    if isinstance(seq, RegularSequenceCertificate):
        cert = seq
    else:
        if not list(seq):
            raise InputError("no sequence to certify")
        cert = is_regular_sequence(A, seq)
    if not cert.ok:
        raise InputError(f"uncertified sequence (fails at index {cert.failed_index}: {cert.reason})")
    n = len(cert.sequence)
    module = f"A/({', '.join(str(x) for x in cert.sequence)})"
    if n <= KOSZUL_CONFIRMATION_LIMIT:
        from essalg.homology import tor_via_koszul

        tor = tor_via_koszul(A, cert.sequence, n + 1)
        if tor[n] == 0 or tor[n + 1] != 0:  # pragma: no cover - would contradict the certificate
            raise AssertionError(f"Koszul Tor ranks {tor} disagree with length {n}")
        return FlatDimensionStatement(module, n, "koszul-exact", tor)
    return FlatDimensionStatement(module, n, "regular-sequence")


def degeneracy_verdict(A: CommPresentation, seq=None) -> Verdict:
    """NotQuasiFree via a certified regular sequence of length >= 2, or via smoothness in dimension >= 2."""
    from essalg.smoothness import SMOOTH, jacobian_smooth

    if A.is_zero_ring():
        raise InputError("degeneracy test on the zero ring")
    failed = []
    if seq:
        cert = is_regular_sequence(A, seq)
        if cert.ok and len(cert) >= 2:
            ledger = fd_ledger(A, cert)
            return Verdict(NOT_QUASI_FREE,
                           {"path": "sequence", "certificate": cert.to_json(), "fd": ledger.to_json()},
                           [f"regular sequence of length {len(cert)} gives fd_A(A/(seq)) = {len(cert)}",
                            "flat dimension bounds the Hochschild cohomological dimension from below",
                            "Hochschild cohomological dimension >= 2 rules out quasi-freeness"])
        failed.append({"path": "sequence", "ok": cert.ok, "length": len(cert),
                       "failed_index": cert.failed_index, "reason": cert.reason or "length below 2"})
    d = krull_dimension(A)
    smooth = jacobian_smooth(A)
    if smooth.tag == SMOOTH and d >= 2:
        return Verdict(NOT_QUASI_FREE, {"path": "regular", "krull_dimension": d, "jacobian": smooth.witness},
                       ["Jacobian criterion: smooth, hence a regular ring",
                        f"regular of Krull dimension {d} >= 2 rules out quasi-freeness"],
                       ["smoothness is geometric (certified over the algebraic closure)"])
    failed.append({"path": "regular", "krull_dimension": d, "smooth": smooth.tag == SMOOTH})
    return Verdict(INCONCLUSIVE, {"failed_branches": failed},
                   ["neither a certified regular sequence of length >= 2 nor smoothness in dimension >= 2"])
