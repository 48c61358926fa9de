"""Generalized matrix product codes.

A GMP code is built from an ``m x m`` matrix T, codes C_1..C_M of length m
and ``M x N`` matrices A_0..A_r; its codewords are the ``m x N`` matrices

    sum_k T^k [c_1 ... c_M] A_k,    c_i in C_i.

Codewords are exchanged in column-major vectorized form (length mN).
"""

from __future__ import annotations

import functools
import itertools
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from gmpkit.code import DEFAULT_CAP, CapExceededError, LinearCode
from gmpkit.field import GF, FieldMismatchError
from gmpkit.matrix import Matrix, ShapeError, block_diag, hstack


class GmpSpec:
    """The data ``(T, [C_1..C_M], [A_0..A_r])`` of a GMP code.

    Trailing zero matrices A_k are dropped (A_0 is always kept).
    """

    def __init__(self, T: Matrix, codes: Sequence[LinearCode], mats: Sequence[Matrix]) -> None:
        if not codes:
            raise ShapeError("a GMP code needs at least one constituent code")
        if not mats:
            raise ShapeError("a GMP code needs at least one matrix A_0")
        field = T.field
        if T.rows != T.cols:
            raise ShapeError(f"T must be square, got {T.shape}")
        m = T.rows
        for i, c in enumerate(codes, 1):
            if c.field != field:
                raise FieldMismatchError(f"C_{i} is over {c.field}, T over {field}")
            if c.length != m:
                raise ShapeError(f"C_{i} has length {c.length}, expected m={m}")
        shape = mats[0].shape
        for k, a in enumerate(mats):
            if a.field != field:
                raise FieldMismatchError(f"A_{k} is over {a.field}, T over {field}")
            if a.shape != shape:
                raise ShapeError(f"A_{k} has shape {a.shape}, A_0 has {shape}")
        if shape[0] != len(codes):
            raise ShapeError(f"A_k have {shape[0]} rows but there are {len(codes)} codes")
        mats = list(mats)
        while len(mats) > 1 and mats[-1].is_zero():
            mats.pop()
        self.T = T
        self.codes = list(codes)
        self.mats = mats

    @property
    def field(self) -> GF:
        return self.T.field

    @property
    def m(self) -> int:
        return self.T.rows

    @property
    def M(self) -> int:
        return len(self.codes)

    @property
    def N(self) -> int:
        return self.mats[0].cols

    @property
    def r(self) -> int:
        return len(self.mats) - 1

    @property
    def length(self) -> int:
        return self.m * self.N

    @functools.cached_property
    def sigma(self) -> Matrix:
        """``sum_k A_k (x) (T^T)^k``, of shape ``mM x mN``."""
        Tt = self.T.T
        power = Matrix.identity(self.field, self.m)
        total = None
        for a in self.mats:
            term = a.kron(power)
            total = term if total is None else total + term
            power = power @ Tt
        return total

    def codeword(self, cs: Sequence[Matrix], check: bool = True) -> Matrix:
        """``sum_k T^k [c_1 .. c_M] A_k`` for columns c_i in C_i."""
        if len(cs) != self.M:
            raise ShapeError(f"need {self.M} codewords, got {len(cs)}")
        for i, (c, code) in enumerate(zip(cs, self.codes), 1):
            if c.shape != (self.m, 1):
                raise ShapeError(f"c_{i} must be an {self.m}x1 column, got {c.shape}")
            if check and not code.contains(c.T):
                raise ValueError(f"c_{i} is not a codeword of C_{i}")
        X = hstack(list(cs))
        power = Matrix.identity(self.field, self.m)
        total = Matrix.zeros(self.field, self.m, self.N)
        for a in self.mats:
            total = total + power @ X @ a
            power = power @ self.T
        return total

    def is_mp(self) -> tuple[bool, Matrix | None]:
        """Syntactic MP test: T = I, T = 0, or A_1 = ... = A_r = 0."""
        if self.r == 0 or self.T.is_zero():
            return True, self.mats[0]
        if self.T == Matrix.identity(self.field, self.m):
            total = self.mats[0]
            for a in self.mats[1:]:
                total = total + a
            return True, total
        return False, None

    def analyze(self) -> GmpAnalysis:
        return gmp_generator(self)

    def bruteforce_code(self, cap: int = 2**16) -> set[tuple[int, ...]]:
        return gmp_bruteforce_code(self, cap)


@dataclass
class GmpAnalysis:
    sigma: Matrix
    sigma_rank: int
    rank_condition_met: bool
    gen: Matrix
    code: LinearCode
    is_mp: bool

    @property
    def dim(self) -> int:
        return self.code.dimension


def gmp_generator(spec: GmpSpec) -> GmpAnalysis:
    """Generator matrix ``diag[G_1..G_M] * sum_k A_k (x) (T^T)^k`` and its rank data."""
    sigma = spec.sigma
    rank = sigma.rank
    gen = block_diag([c.gen for c in spec.codes]) @ sigma
    return GmpAnalysis(
        sigma=sigma,
        sigma_rank=rank,
        rank_condition_met=rank == spec.m * spec.M,
        gen=gen,
        code=LinearCode(gen),
        is_mp=spec.is_mp()[0],
    )


@dataclass
class DimCheck:
    rank_condition_met: bool
    predicted_dim: int | None
    actual_dim: int


def gmp_dim_check(spec: GmpSpec) -> DimCheck:
    """Sum of constituent dimensions when sigma has full row rank mM, else no prediction."""
    analysis = gmp_generator(spec)
    predicted = sum(c.dimension for c in spec.codes) if analysis.rank_condition_met else None
    return DimCheck(analysis.rank_condition_met, predicted, analysis.dim)


def gmp_bruteforce_code(spec: GmpSpec, cap: int = 2**16) -> set[tuple[int, ...]]:
    """Every ``vec(sum_k T^k [c_1..c_M] A_k)`` over all tuples of codewords.

    Evaluates the defining sum directly for each tuple (batched), without
    going through the Kronecker generator formula.
    """
    f = spec.field
    total = 1
    for c in spec.codes:
        total *= c.size
    if total > cap:
        raise CapExceededError(f"{total} codeword tuples exceed the cap {cap}")
    words = [c.codewords() for c in spec.codes]
    powers = [Matrix.identity(f, spec.m).data]
    for _ in spec.mats[1:]:
        powers.append(f.matmul(powers[-1], spec.T.data))
    out: set[tuple[int, ...]] = set()
    index_iter = itertools.product(*(range(len(w)) for w in words))
    batch = 4096
    while True:
        idx = np.array(list(itertools.islice(index_iter, batch)), dtype=np.int64)
        if idx.size == 0:
            break
        # X[b] = [c_1 ... c_M] as an m x M matrix
        X = np.stack([words[i][idx[:, i]] for i in range(spec.M)], axis=-1)
        Q = np.zeros((len(idx), spec.m, spec.N), dtype=np.int64)
        for Tk, a in zip(powers, spec.mats):
            Q = f.add(Q, f.matmul(Tk, f.matmul(X, a.data)))
        vecs = Q.transpose(0, 2, 1).reshape(len(idx), -1)
        out.update(map(tuple, vecs.tolist()))
    return out


def row_span_set(gen: Matrix, cap: int = 2**16) -> set[tuple[int, ...]]:
    code = LinearCode(gen)
    return set(map(tuple, code.codewords(cap).tolist()))


def is_invariant(code: LinearCode, T: Matrix) -> bool:
    """Whether T c is in the code for every basis column c."""
    return all(code.contains((T @ row.T).T) for row in _rows(code.basis))


def gmp_is_T_invariant(spec: GmpSpec) -> bool:
    """Whether T q lies in the GMP code for every generator row q (reshaped)."""
    analysis = gmp_generator(spec)
    for row in _rows(analysis.gen):
        q = Matrix.unvec(row, spec.m)
        if not analysis.code.contains((spec.T @ q).vec()):
            return False
    return True


def _rows(mat: Matrix) -> list[Matrix]:
    return [Matrix(mat.field, mat.data[[i]]) for i in range(mat.rows)]
