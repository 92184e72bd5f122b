"""Finite-dimensional Lie algebras, PBW straightening in U(g), and Chevalley–Eilenberg cohomology.

Structure constants are stored sparsely: ``constants[(i, j)] = {k: c}`` means
``[x_i, x_j] = sum_k c * x_k``.  Indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from essalg.errors import EssalgError, InputError
from essalg.linalg import is_zero_matrix, matmul, ranks, zeros
from essalg.nc_algebra import NCPolynomial, NCPresentation, NCRing, complete
from essalg.ring_core import QQ, Field
from essalg.verdict import INCONCLUSIVE, NOT_QUASI_FREE, Verdict


class LieAlgebra:
    def __init__(self, names: Sequence[str], constants: Mapping | Sequence = (), field: Field = QQ):
        """``constants`` is either ``{(i, j, k): c}`` or a sequence of ``(i, j, k, c)`` quadruples."""
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise InputError(f"duplicate basis names {self.names}")
        self.field = field
        d = len(self.names)
        items = constants.items() if isinstance(constants, Mapping) else (
            ((q[0], q[1], q[2]), q[3]) for q in constants)
        table: dict = {}
        for (i, j, k), c in items:
            if not all(isinstance(t, int) and 0 <= t < d for t in (i, j, k)):
                raise InputError(f"structure constant index out of range: {(i, j, k)}")
            c = field(c)
            if field.is_zero(c):
                continue
            row = table.setdefault((i, j), {})
            if k in row:
                raise InputError(f"structure constant {(i, j, k)} given twice")
            row[k] = c
        self.constants = table

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket(self, i: int, j: int) -> dict:
        return self.constants.get((i, j), {})

    def bracket_vectors(self, u: Mapping[int, object], v: Mapping[int, object]) -> dict:
        F = self.field
        out: dict = {}
        for i, a in u.items():
            for j, b in v.items():
                ab = F.mul(a, b)
                for k, c in self.bracket(i, j).items():
                    out[k] = F.add(out.get(k, F.zero), F.mul(ab, c))
        return {k: c for k, c in out.items() if not F.is_zero(c)}

    def quadruples(self) -> list[tuple]:
        return sorted((i, j, k, c) for (i, j), row in self.constants.items() for k, c in row.items())

    def is_abelian(self) -> bool:
        return not self.constants

    def __repr__(self) -> str:
        return f"LieAlgebra({list(self.names)}, dim={self.dim})"


def abelian_lie(d: int, field: Field = QQ, prefix: str = "x") -> LieAlgebra:
    return LieAlgebra([f"{prefix}{i + 1}" for i in range(d)], {}, field)


def sl2(field: Field = QQ) -> LieAlgebra:
    """sl_2 on the ordered basis f < h < e: [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    f, h, e = 0, 1, 2
    c = {(h, e, e): 2, (e, h, e): -2, (h, f, f): -2, (f, h, f): 2, (e, f, h): 1, (f, e, h): -1}
    return LieAlgebra(["f", "h", "e"], c, field)


@dataclass(frozen=True)
class LieCheck:
    ok: bool
    violation: str | None = None  # "antisymmetry" or "jacobi"
    indices: tuple | None = None
    detail: str = ""


def validate_lie(g: LieAlgebra) -> LieCheck:
    """First antisymmetry or Jacobi violation, scanning index tuples in increasing order."""
    F = g.field
    d = g.dim
    for i in range(d):
        for j in range(i, d):
            a, b = g.bracket(i, j), g.bracket(j, i)
            for k in sorted(set(a) | set(b)):
                s = F.add(a.get(k, F.zero), b.get(k, F.zero))
                if not F.is_zero(s):
                    return LieCheck(False, "antisymmetry", (i, j),
                                    f"[{g.names[i]}, {g.names[j]}] + [{g.names[j]}, {g.names[i]}] "
                                    f"has coefficient {F.to_str(s)} on {g.names[k]}")
    for i, j, k in combinations(range(d), 3):
        total: dict = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = g.bracket_vectors({b: F.one}, {c: F.one})
            for t, v in g.bracket_vectors({a: F.one}, inner).items():
                total[t] = F.add(total.get(t, F.zero), v)
        bad = sorted(t for t, v in total.items() if not F.is_zero(v))
        if bad:
            return LieCheck(False, "jacobi", (i, j, k),
                            f"Jacobi sum of ({', '.join(g.names[t] for t in (i, j, k))}) is nonzero")
    return LieCheck(True)


def _require_valid(g: LieAlgebra) -> None:
    check = validate_lie(g)
    if not check.ok:
        raise InputError(f"invalid Lie data: {check.violation} at {check.indices}: {check.detail}")


# -- modules ------------------------------------------------------------------


class LieModule:
    """Finite-dimensional representation given by action matrices ``rho[i]`` (m × m)."""

    def __init__(self, g: LieAlgebra, matrices: Sequence[Sequence[Sequence]]):
        self.g = g
        F = g.field
        if len(matrices) != g.dim:
            raise InputError(f"need {g.dim} action matrices, got {len(matrices)}")
        m = len(matrices[0]) if matrices else 0
        mats = []
        for M in matrices:
            if len(M) != m or any(len(row) != m for row in M):
                raise InputError("action matrices must all be square of the same size")
            mats.append([[F(x) for x in row] for row in M])
        self.dim = m
        self.matrices = mats

    def check(self) -> str | None:
        """Description of the first failure of ``rho([x_i, x_j]) = [rho_i, rho_j]``, or None."""
        F = self.g.field
        m = self.dim
        for i in range(self.g.dim):
            for j in range(i + 1, self.g.dim):
                A, B = self.matrices[i], self.matrices[j]
                AB, BA = matmul(A, B, F), matmul(B, A, F)
                lhs = zeros(m, m, F)
                for k, c in self.g.bracket(i, j).items():
                    for r in range(m):
                        for s in range(m):
                            lhs[r][s] = F.add(lhs[r][s], F.mul(c, self.matrices[k][r][s]))
                for r in range(m):
                    for s in range(m):
                        if lhs[r][s] != F.sub(AB[r][s], BA[r][s]):
                            return f"rho([x{i}, x{j}]) differs from the commutator at entry ({r}, {s})"
        return None


def trivial_module(g: LieAlgebra) -> LieModule:
    return LieModule(g, [[[g.field.zero]] for _ in range(g.dim)])


def adjoint_module(g: LieAlgebra) -> LieModule:
    F = g.field
    mats = []
    for i in range(g.dim):
        M = zeros(g.dim, g.dim, F)
        for j in range(g.dim):
            for k, c in g.bracket(i, j).items():
                M[k][j] = c
        mats.append(M)
    return LieModule(g, mats)


# -- enveloping algebra ---------------------------------------------------------


def universal_envelope(g: LieAlgebra) -> NCPresentation:
    """U(g) with relations ``x_j x_i - x_i x_j - [x_j, x_i]`` for ``j > i``."""
    _require_valid(g)
    ring = NCRing(g.names, g.field, True)
    gens = ring.gens()
    rels = []
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            r = gens[j] * gens[i] - gens[i] * gens[j]
            for k, c in g.bracket(j, i).items():
                r = r - gens[k] * c
            rels.append(r)
    U = NCPresentation(g.names, rels, True, g.field)
    C = complete(U, 3)
    if not C.confluent or len(C.rules) != len(rels):
        raise EssalgError("PBW rewriting system is not confluent in degree 3")
    return U


def pbw_normal_form(p: NCPolynomial, g: LieAlgebra) -> dict[tuple, object]:
    """Straighten ``p`` into ``{exponent vector: coefficient}`` over the ordered basis.

    Repeatedly takes the deglex-largest word and swaps its first descent
    ``x_j x_i`` (``j > i``) to ``x_i x_j + [x_j, x_i]``; the largest word strictly
    decreases, so the loop terminates.
    """
    if p.ring.generators != g.names:
        raise InputError(f"{p} is not written in the basis {list(g.names)}")
    F = g.field
    rest = dict(p.terms)
    out: dict = {}

    def add(w, c):
        v = F.add(rest.get(w, F.zero), c)
        if F.is_zero(v):
            rest.pop(w, None)
        else:
            rest[w] = v

    while rest:
        w = max(rest, key=lambda u: (len(u), u))
        c = rest.pop(w)
        t = next((t for t in range(len(w) - 1) if w[t] > w[t + 1]), None)
        if t is None:
            e = [0] * g.dim
            for i in w:
                e[i] += 1
            out[tuple(e)] = c
            continue
        j, i = w[t], w[t + 1]
        add(w[:t] + (i, j) + w[t + 2:], c)
        for k, ck in g.bracket(j, i).items():
            add(w[:t] + (k,) + w[t + 2:], F.mul(c, ck))
    return out


def pbw_to_nc(pbw: Mapping[tuple, object], ring: NCRing) -> NCPolynomial:
    return NCPolynomial(ring, {tuple(i for i, e in enumerate(v) for _ in range(e)): c
                               for v, c in pbw.items()})


# -- Chevalley–Eilenberg ---------------------------------------------------------


@dataclass
class CEComplex:
    """Cochains ``C^n = Hom(Λ^n g, M)``; ``differentials[n]`` maps ``C^n -> C^{n+1}``."""

    dims: list[int]
    differentials: list  # matrices, rows = C^{n+1} coordinates

    def check_square_zero(self, field: Field) -> bool:
        for n in range(len(self.differentials) - 1):
            A, B = self.differentials[n + 1], self.differentials[n]
            if A and B and not is_zero_matrix(matmul(A, B, field), field):
                return False
        return True


def ce_complex(g: LieAlgebra, M: LieModule, n_max: int) -> CEComplex:
    """Matrices of the CE differential in degrees ``0..n_max`` (``n_max <= dim g``)."""
    F = g.field
    d, m = g.dim, M.dim
    if not 0 <= n_max <= d:
        raise InputError(f"degree bound {n_max} outside 0..{d}")
    subsets = [list(combinations(range(d), n)) for n in range(d + 2)]
    index = [{S: i for i, S in enumerate(level)} for level in subsets]
    dims = [len(subsets[n]) * m for n in range(n_max + 2)]
    diffs = []
    for n in range(n_max + 1):
        rows, cols = dims[n + 1], dims[n]
        D = zeros(rows, cols, F)
        for T in subsets[n + 1]:
            trow = index[n + 1][T] * m
            for i, ti in enumerate(T):
                S = T[:i] + T[i + 1:]
                scol = index[n][S] * m
                sign = 1 if i % 2 == 0 else -1
                rho = M.matrices[ti]
                for b in range(m):
                    for a in range(m):
                        if not F.is_zero(rho[b][a]):
                            D[trow + b][scol + a] = F.add(D[trow + b][scol + a], F.mul(sign, rho[b][a]))
            for i, j in combinations(range(len(T)), 2):
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                for k, c in g.bracket(T[i], T[j]).items():
                    if k in rest:
                        continue
                    S = tuple(sorted(rest + (k,)))
                    pos = S.index(k)
                    sign = 1 if (i + j + pos) % 2 == 0 else -1
                    scol = index[n][S] * m
                    for a in range(m):
                        D[trow + a][scol + a] = F.add(D[trow + a][scol + a], F.mul(sign, c))
        diffs.append(D)
    return CEComplex(dims[: n_max + 2], diffs)


def chevalley_eilenberg_dims(g: LieAlgebra, M: LieModule | None = None, n_max: int | None = None,
                             jobs: int = 1) -> list[int]:
    """``dim HL^n(g, M)`` for ``n = 0..n_max`` (trivial coefficients by default)."""
    _require_valid(g)
    M = M or trivial_module(g)
    bad = M.check()
    if bad:
        raise InputError(f"invalid module: {bad}")
    n_max = g.dim if n_max is None else n_max
    cx = ce_complex(g, M, n_max)
    if not cx.check_square_zero(g.field):
        raise EssalgError("CE differential does not square to zero")
    r = ranks(cx.differentials, g.field, jobs)
    return [cx.dims[n] - r[n] - (r[n - 1] if n else 0) for n in range(n_max + 1)]


def lie_quasifree_verdict(g: LieAlgebra, n_max: int | None = None) -> Verdict:
    """NotQuasiFree for U(g) when some ``HL^n(g, k)`` with ``n >= 2`` is nonzero."""
    n_max = g.dim if n_max is None else min(n_max, g.dim)
    dims = chevalley_eilenberg_dims(g, None, n_max)
    for n in range(2, n_max + 1):
        if dims[n]:
            return Verdict(NOT_QUASI_FREE, {"degree": n, "dimension": dims[n], "coefficients": "trivial",
                                            "cohomology": dims},
                           ["nonzero HL^n(g, k) with n >= 2 lifts to HH^n(U(g), -) != 0",
                            "Hochschild cohomological dimension >= 2 rules out quasi-freeness"])
    return Verdict(INCONCLUSIVE, {"tested_up_to": n_max, "cohomology": dims},
                   ["HL^n(g, k) vanishes for 2 <= n <= bound; the test is one-sided"])
