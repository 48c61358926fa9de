"""Quasi-twisted codes and their GMP structure.

A lambda-QT code of index l and co-index m is given by a generator
polynomial matrix (M x l, entries in R = F_q[x]/(x^m - lambda)).  Factoring
out the gcd g_i of each row gives constacyclic codes C_i = <g_i> and
coefficient matrices A_k with G' = sum_k x^k A_k, so that the code equals
sum_k T_lambda^k [C_1 .. C_M] A_k.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from gmpkit.code import LinearCode
from gmpkit.field import FieldElem, FieldMismatchError, GF
from gmpkit.gmp import GmpSpec
from gmpkit.matrix import Matrix, ShapeError, vstack
from gmpkit.ring import Poly, RingElem, RingSpec, phi_mat_inv, poly_gcd_all


class ConversionError(ValueError):
    """A QT <-> GMP conversion precondition does not hold."""


def t_lambda(field: GF, m: int, lam: FieldElem | int) -> Matrix:
    """The lambda-constacyclic shift: ones on the subdiagonal, lambda top-right."""
    lam = field.code(lam)
    if m < 1:
        raise ShapeError("m must be >= 1")
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    data = np.eye(m, k=-1, dtype=np.int64)
    data[0, m - 1] = lam
    return Matrix(field, data)


def match_t_lambda(T: Matrix) -> int | None:
    """lambda if T has exactly the T_lambda shape, else None."""
    m = T.rows
    if T.cols != m or T.data[0, m - 1] == 0:
        return None
    lam = int(T.data[0, m - 1])
    return lam if T == t_lambda(T.field, m, lam) else None


@dataclass
class QtCode:
    ring: RingSpec
    gpm: list[list[RingElem]]

    def __post_init__(self) -> None:
        if not self.gpm or not self.gpm[0]:
            raise ShapeError("generator polynomial matrix is empty")
        ell = len(self.gpm[0])
        for row in self.gpm:
            if len(row) != ell:
                raise ShapeError("ragged generator polynomial matrix")
            for e in row:
                if e.ring != self.ring:
                    raise FieldMismatchError("entry ring differs from the code ring")

    @classmethod
    def parse(cls, ring: RingSpec, rows: Sequence[Sequence[str | Poly]]) -> QtCode:
        return cls(ring, [[ring(e) if isinstance(e, (str, Poly)) else e for e in row] for row in rows])

    @property
    def field(self) -> GF:
        return self.ring.field

    @property
    def m(self) -> int:
        return self.ring.m

    @property
    def ell(self) -> int:
        return len(self.gpm[0])

    @property
    def M(self) -> int:
        return len(self.gpm)

    def expand(self) -> LinearCode:
        """The F_q-span of vec(phi^{-1}(x^j row_i)) over all rows i and shifts j < m."""
        rows = []
        for row in self.gpm:
            cur = list(row)
            for _ in range(self.m):
                rows.append(phi_mat_inv(cur).vec())
                cur = [e.mul_x() for e in cur]
        return LinearCode(vstack(rows))

    def to_strings(self) -> list[list[str]]:
        return [[str(e) for e in row] for row in self.gpm]


def qt_expand(c: QtCode) -> LinearCode:
    return c.expand()


def qt_invariance_check(code: LinearCode, m: int, lam: FieldElem | int) -> bool:
    """Whether the code (length m*l, codewords read as m x l) is T_lambda-invariant."""
    if code.length % m:
        raise ShapeError(f"length {code.length} is not a multiple of m={m}")
    T = t_lambda(code.field, m, lam)
    for i in range(code.basis.rows):
        q = Matrix.unvec(Matrix(code.field, code.basis.data[[i]]), m)
        if not code.contains((T @ q).vec()):
            return False
    return True


@dataclass
class QtDecomposition:
    gs: list[Poly]
    gprime: list[list[RingElem]]
    mats: list[Matrix]
    codes: list[LinearCode]


def qt_to_gmp(c: QtCode) -> tuple[QtDecomposition, GmpSpec]:
    """Row gcds, the cofactor matrix G', its coefficient matrices and the GMP spec."""
    ring, field = c.ring, c.field
    gs: list[Poly] = []
    gprime: list[list[RingElem]] = []
    for i, row in enumerate(c.gpm, 1):
        reps = [e.rep for e in row]
        if all(p.is_zero() for p in reps):
            raise ConversionError(f"row {i} of the generator polynomial matrix is zero")
        g = poly_gcd_all(reps)
        gs.append(g)
        gprime.append([RingElem(ring, p.exact_div(g)) for p in reps])
    mats = []
    for k in range(c.m):
        data = np.zeros((c.M, c.ell), dtype=np.int64)
        for i, row in enumerate(gprime):
            for j, e in enumerate(row):
                if k < len(e.rep.coeffs):
                    data[i, j] = e.rep.coeffs[k]
        mats.append(Matrix(field, data))
    while len(mats) > 1 and mats[-1].is_zero():
        mats.pop()
    codes = [LinearCode.constacyclic(ring, g) for g in gs]
    spec = GmpSpec(t_lambda(field, c.m, ring.lam), codes, mats)
    return QtDecomposition(gs, gprime, mats, codes), spec


def gmp_to_qt(spec: GmpSpec) -> QtCode:
    """Generator polynomial matrix with row i equal to g_i(x) * sum_k x^k Row_i(A_k)."""
    lam = match_t_lambda(spec.T)
    if lam is None:
        raise ConversionError("T is not a constacyclic shift matrix T_lambda")
    if spec.r > spec.m - 1:
        raise ConversionError(f"r={spec.r} exceeds m-1={spec.m - 1}")
    field = spec.field
    ring = RingSpec(field, spec.m, lam)
    gs = []
    for i, code in enumerate(spec.codes, 1):
        if code.generator_poly is None or code.ring is None:
            raise ConversionError(f"C_{i} has no constacyclic generator polynomial")
        if code.ring != ring:
            raise ConversionError(f"C_{i} is constacyclic over a different ring than T")
        gs.append(code.generator_poly)
    gpm = []
    for i, g in enumerate(gs):
        row = []
        for j in range(spec.N):
            p = Poly(field, tuple(int(a.data[i, j]) for a in spec.mats))
            row.append(RingElem(ring, g * p))
        gpm.append(row)
    return QtCode(ring, gpm)

