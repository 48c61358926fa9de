"""Linear codes: construction, dimension, exhaustive minimum distance."""

from __future__ import annotations

import functools
import itertools
from collections.abc import Iterator

import numpy as np

from gmpkit.field import GF
from gmpkit.matrix import Matrix, ShapeError, vstack
from gmpkit.ring import Poly, RingSpec, phi_inv, poly_gcd, RingElem

DEFAULT_CAP = 2**24
# Codewords materialized per enumeration block.
_BLOCK = 2**16


class TrivialCodeError(ValueError):
    """The zero code has no minimum distance."""


class CapExceededError(RuntimeError):
    """Exhaustive enumeration would visit more than ``cap`` messages."""


class LinearCode:
    """Row span of a generator matrix over a finite field.

    The generator may have dependent rows; the dimension is its rank.
    Constacyclic codes additionally remember their ring and canonical
    generator polynomial in ``ring`` and ``generator_poly``.
    """

    def __init__(
        self,
        gen: Matrix,
        *,
        ring: RingSpec | None = None,
        generator_poly: Poly | None = None,
    ) -> None:
        if gen.cols == 0:
            raise ShapeError("a code needs length >= 1")
        if gen.rows == 0:
            gen = Matrix.zeros(gen.field, 1, gen.cols)
        self.gen = gen
        self.ring = ring
        self.generator_poly = generator_poly

    @classmethod
    def from_gen(cls, gen: Matrix) -> LinearCode:
        return cls(gen)

    @classmethod
    def repetition(cls, field: GF, n: int) -> LinearCode:
        return cls(Matrix(field, np.ones((1, n), dtype=np.int64)))

    @classmethod
    def full_space(cls, field: GF, n: int) -> LinearCode:
        return cls(Matrix.identity(field, n))

    @classmethod
    def constacyclic(cls, ring: RingSpec, g: Poly, *, allow_zero: bool = False) -> LinearCode:
        """The ideal generated by g in F_q[x]/(x^m - lambda), as a length-m code.

        The canonical generator is ``gcd(g, x^m - lambda)``, so the dimension
        is ``m - deg`` of that gcd even when g does not divide x^m - lambda.
        """
        field, m = ring.field, ring.m
        g = ring.reduce(g)
        if g.is_zero():
            if not allow_zero:
                raise ValueError("generator polynomial is zero; pass allow_zero=True for the zero code")
            return cls(Matrix.zeros(field, 1, m), ring=ring, generator_poly=ring.modulus)
        gstar = poly_gcd(g, ring.modulus)
        rows = [
            phi_inv(RingElem(ring, gstar * Poly.monomial(field, j))).T
            for j in range(m - gstar.degree)
        ]
        return cls(vstack(rows), ring=ring, generator_poly=gstar)

    @property
    def field(self) -> GF:
        return self.gen.field

    @property
    def length(self) -> int:
        return self.gen.cols

    @functools.cached_property
    def _rref(self) -> tuple[Matrix, int, list[int]]:
        return self.gen.rref()

    @property
    def dimension(self) -> int:
        return self._rref[1]

    @property
    def basis(self) -> Matrix:
        red, rank, _ = self._rref
        return red.take_rows(rank)

    @property
    def size(self) -> int:
        return self.field.q**self.dimension

    def contains(self, w: Matrix) -> bool:
        if w.shape != (1, self.length):
            raise ShapeError(f"expected a 1x{self.length} word, got {w.shape}")
        if w.field != self.field:
            return False
        red, rank, pivots = self._rref
        # Reduce w against the RREF basis; in span iff nothing remains.
        f = self.field
        rem = w.data[0].copy()
        for i, c in enumerate(pivots):
            if rem[c]:
                rem = f.sub(rem, f.mul(red.data[i], rem[c]))
        return not rem.any()

    def __contains__(self, w: Matrix) -> bool:
        return self.contains(w)

    def iter_codeword_blocks(self, cap: int = DEFAULT_CAP) -> Iterator[np.ndarray]:
        """Yield arrays of codewords (rows of codes) covering the whole code once.

        The first row of the first block is the zero word.
        """
        k, q = self.dimension, self.field.q
        if q**k > cap:
            raise CapExceededError(f"{q}^{k} codewords exceed the enumeration cap {cap}")
        yield from enumerate_span(self.basis, block=_BLOCK)

    def codewords(self, cap: int = DEFAULT_CAP) -> np.ndarray:
        return np.vstack(list(self.iter_codeword_blocks(cap)))

    def weight_distribution(self, cap: int = DEFAULT_CAP) -> list[int]:
        counts = np.zeros(self.length + 1, dtype=np.int64)
        for block in self.iter_codeword_blocks(cap):
            counts += np.bincount((block != 0).sum(axis=1), minlength=self.length + 1)
        return counts.tolist()

    def min_distance(self, cap: int = DEFAULT_CAP) -> int:
        """Minimum nonzero Hamming weight by exhaustive enumeration.

        Cached per instance; concurrent callers compute the same value.
        """
        cached = self.__dict__.get("_min_distance")
        if cached is not None:
            return cached
        if self.dimension == 0:
            raise TrivialCodeError("the zero code has no minimum distance")
        best = self.length
        first = True
        for block in self.iter_codeword_blocks(cap):
            w = (block != 0).sum(axis=1)
            if first:
                w = w[1:]
                first = False
            if w.size:
                best = min(best, int(w.min()))
        self.__dict__["_min_distance"] = best
        return best

    def parameters(self, cap: int = DEFAULT_CAP) -> tuple[int, int, int | None]:
        d = self.min_distance(cap) if self.dimension else None
        return self.length, self.dimension, d

    def same_code(self, other: LinearCode) -> bool:
        """Equal codeword sets (compares RREF bases)."""
        return self.field == other.field and self.length == other.length and self.basis == other.basis

    def __repr__(self) -> str:
        return f"LinearCode(n={self.length}, k={self.dimension}, field={self.field})"


def enumerate_span(basis: Matrix, block: int = _BLOCK) -> Iterator[np.ndarray]:
    """All F_q-combinations of the rows of ``basis``, in blocks.

    The trailing rows are expanded into a lookup table once; leading-row
    coefficient tuples are then walked in order and added to the table,
    each step producing one block.
    """
    f, q = basis.field, basis.field.q
    k, n = basis.shape
    if k == 0:
        yield np.zeros((1, n), dtype=np.int64)
        return
    inner_k = 0
    while inner_k < k and q ** (inner_k + 1) <= max(block, q):
        inner_k += 1
    inner_rows = basis.data[k - inner_k :]
    table = np.zeros((1, n), dtype=np.int64)
    for row in inner_rows:
        scaled = f.mul(np.arange(q, dtype=np.int64)[:, None], row[None, :])
        table = f.add(table[None, :, :], scaled[:, None, :]).reshape(-1, n)
    outer_rows = basis.data[: k - inner_k]
    for coeffs in itertools.product(range(q), repeat=k - inner_k):
        if outer_rows.shape[0]:
            shift = f.sum(f.mul(np.array(coeffs, dtype=np.int64)[:, None], outer_rows), axis=0)
            yield f.add(table, shift[None, :])
        else:
            yield table
