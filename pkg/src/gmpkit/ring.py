"""Polynomials over F_q and the quotient ring F_q[x]/(x^m - lambda)."""

from __future__ import annotations

import functools
import math
import re
import warnings
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from gmpkit.field import GF, FieldElem, FieldError, FieldMismatchError
from gmpkit.matrix import Matrix, ShapeError


class PolyError(ValueError):
    pass


@dataclass(frozen=True)
class Poly:
    """Polynomial with coefficient codes in ascending degree, trailing zeros stripped."""

    field: GF
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(x) for x in c))

    @classmethod
    def of(cls, field: GF, coeffs: Iterable[int | str | FieldElem]) -> Poly:
        return cls(field, tuple(field.code(c) for c in coeffs))

    @classmethod
    def zero(cls, field: GF) -> Poly:
        return cls(field, ())

    @classmethod
    def one(cls, field: GF) -> Poly:
        return cls(field, (1,))

    @classmethod
    def monomial(cls, field: GF, deg: int, coeff: int = 1) -> Poly:
        return cls(field, (0,) * deg + (coeff,))

    _TERM = re.compile(r"^(?:(.+?)\*)?x(?:\^(\d+))?$")

    @classmethod
    def parse(cls, field: GF, text: str) -> Poly:
        """Parse terms ``C``, ``C*x^E``, ``x``, ``x^E`` joined by ``+``.

        ``C`` follows the field element grammar, so ``a^3*x^2`` is a valid term.
        """
        s = re.sub(r"\s+", "", str(text))
        if not s:
            raise PolyError("empty polynomial literal")
        terms: list[str] = []
        depth, cur = 0, ""
        for ch in s:
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
            if ch == "+" and depth == 0:
                terms.append(cur)
                cur = ""
            else:
                cur += ch
        terms.append(cur)
        acc: dict[int, int] = {}
        for term in terms:
            if not term:
                raise PolyError(f"malformed polynomial {text!r}")
            m = cls._TERM.match(term)
            if m:
                coeff = field.parse(m.group(1)).code if m.group(1) else 1
                deg = int(m.group(2)) if m.group(2) else 1
            else:
                try:
                    coeff, deg = field.parse(term).code, 0
                except FieldError:
                    raise PolyError(f"malformed term {term!r} in {text!r}") from None
            acc[deg] = int(field.add(acc.get(deg, 0), coeff))
        top = max(acc)
        return cls(field, tuple(acc.get(d, 0) for d in range(top + 1)))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def _check(self, other: Poly) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=np.int64)
        b = np.zeros(n, dtype=np.int64)
        a[: len(self.coeffs)] = self.coeffs
        b[: len(other.coeffs)] = other.coeffs
        return Poly(self.field, tuple(self.field.add(a, b).tolist()))

    def __neg__(self) -> Poly:
        return Poly(self.field, tuple(self.field.neg(np.array(self.coeffs, dtype=np.int64)).tolist()))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly | FieldElem | int) -> Poly:
        f = self.field
        if not isinstance(other, Poly):
            c = f.code(other)
            return Poly(f, tuple(f.mul(np.array(self.coeffs, dtype=np.int64), c).tolist()))
        self._check(other)
        if not self.coeffs or not other.coeffs:
            return Poly.zero(f)
        a = np.array(self.coeffs, dtype=np.int64)
        b = np.array(other.coeffs, dtype=np.int64)
        terms = f.mul(a[:, None], b[None, :])
        out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
        for i in range(len(a)):
            out[i : i + len(b)] = f.add(out[i : i + len(b)], terms[i])
        return Poly(f, tuple(out.tolist()))

    __rmul__ = __mul__

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        """Quotient and remainder with ``self = q*other + r``, ``deg r < deg other``."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        f = self.field
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = int(f.inv(other.lead))
        quot = [0] * max(len(rem) - db, 0)
        b = np.array(other.coeffs, dtype=np.int64)
        while len(rem) - 1 >= db and rem:
            shift = len(rem) - 1 - db
            c = int(f.mul(rem[-1], inv_lead))
            quot[shift] = c
            seg = np.array(rem[shift:], dtype=np.int64)
            rem[shift:] = f.sub(seg, f.mul(b, c)).tolist()
            while rem and rem[-1] == 0:
                rem.pop()
        return Poly(f, tuple(quot)), Poly(f, tuple(rem))

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def exact_div(self, other: Poly) -> Poly:
        q, r = self.divmod(other)
        if not r.is_zero():
            raise PolyError(f"{other} does not divide {self}")
        return q

    def monic(self) -> Poly:
        if self.is_zero():
            return self
        return self * int(self.field.inv(self.lead))

    def __call__(self, x: FieldElem | int) -> FieldElem:
        f = self.field
        acc = 0
        xv = f.code(x)
        for c in reversed(self.coeffs):
            acc = int(f.add(f.mul(acc, xv), c))
        return FieldElem(f, acc)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for d, c in enumerate(self.coeffs):
            if c == 0:
                continue
            cs = self.field.format(c)
            if d == 0:
                parts.append(cs)
            else:
                xs = "x" if d == 1 else f"x^{d}"
                parts.append(xs if c == 1 else f"{cs}*{xs}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self}, {self.field})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; ``gcd(0, 0)`` is an error."""
    a._check(b)
    if a.is_zero() and b.is_zero():
        raise PolyError("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def poly_gcd_all(polys: Sequence[Poly]) -> Poly:
    """Left fold of :func:`poly_gcd`, skipping zeros; error if all are zero."""
    nonzero = [p for p in polys if not p.is_zero()]
    if not nonzero:
        raise PolyError("gcd of an all-zero collection is undefined")
    return functools.reduce(poly_gcd, nonzero[1:], nonzero[0].monic())


@dataclass(frozen=True)
class RingSpec:
    """R = F_q[x]/(x^m - lambda)."""

    field: GF
    m: int
    lam: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise PolyError("co-index m must be >= 1")
        lam = self.field.code(self.lam)
        if lam == 0:
            raise PolyError("lambda must be nonzero")
        object.__setattr__(self, "lam", lam)
        if math.gcd(self.m, self.field.p) != 1:
            warnings.warn(
                f"m={self.m} shares a factor with the characteristic {self.field.p}; "
                "x^m - lambda has repeated roots",
                stacklevel=3,
            )

    @property
    def lam_elem(self) -> FieldElem:
        return FieldElem(self.field, self.lam)

    @functools.cached_property
    def modulus(self) -> Poly:
        """The polynomial x^m - lambda."""
        f = self.field
        return Poly(f, (int(f.neg(self.lam)),) + (0,) * (self.m - 1) + (1,))

    def __call__(self, value: Poly | str | Sequence[int]) -> RingElem:
        if isinstance(value, str):
            value = Poly.parse(self.field, value)
        elif not isinstance(value, Poly):
            value = Poly.of(self.field, value)
        return RingElem(self, value)

    def zero(self) -> RingElem:
        return RingElem(self, Poly.zero(self.field))

    def one(self) -> RingElem:
        return RingElem(self, Poly.one(self.field))

    def x(self) -> RingElem:
        return RingElem(self, Poly.monomial(self.field, 1))

    def reduce(self, p: Poly) -> Poly:
        """Fold degrees >= m back using x^m = lambda."""
        if p.field != self.field:
            raise FieldMismatchError(f"{p.field} vs {self.field}")
        f, m = self.field, self.m
        c = list(p.coeffs)
        for d in range(len(c) - 1, m - 1, -1):
            if c[d]:
                c[d - m] = int(f.add(c[d - m], f.mul(c[d], self.lam)))
                c[d] = 0
        return Poly(f, tuple(c[:m]))


@dataclass(frozen=True)
class RingElem:
    """Residue class held by its canonical representative of degree < m."""

    ring: RingSpec
    rep: Poly

    def __post_init__(self) -> None:
        object.__setattr__(self, "rep", self.ring.reduce(self.rep))

    def _check(self, other: RingElem) -> None:
        if self.ring != other.ring:
            raise FieldMismatchError("ring mismatch")

    def __add__(self, other: RingElem) -> RingElem:
        self._check(other)
        return RingElem(self.ring, self.rep + other.rep)

    def __sub__(self, other: RingElem) -> RingElem:
        self._check(other)
        return RingElem(self.ring, self.rep - other.rep)

    def __neg__(self) -> RingElem:
        return RingElem(self.ring, -self.rep)

    def __mul__(self, other: RingElem | Poly | FieldElem | int) -> RingElem:
        if isinstance(other, RingElem):
            self._check(other)
            other = other.rep
        return RingElem(self.ring, self.rep * other)

    __rmul__ = __mul__

    def mul_x(self) -> RingElem:
        return RingElem(self.ring, self.rep * Poly.monomial(self.ring.field, 1))

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __str__(self) -> str:
        return str(self.rep)


def phi(c: Matrix, ring: RingSpec) -> RingElem:
    """Column ``[c_0 .. c_{m-1}]^T`` to ``c_0 + c_1 x + ... + c_{m-1} x^{m-1}``."""
    if c.field != ring.field:
        raise FieldMismatchError(f"{c.field} vs {ring.field}")
    if c.shape != (ring.m, 1):
        raise ShapeError(f"expected an {ring.m}x1 column, got {c.shape}")
    return RingElem(ring, Poly(ring.field, tuple(c.data[:, 0].tolist())))


def phi_inv(e: RingElem) -> Matrix:
    m = e.ring.m
    col = np.zeros((m, 1), dtype=np.int64)
    col[: len(e.rep.coeffs), 0] = e.rep.coeffs
    return Matrix(e.ring.field, col)


def phi_mat(c: Matrix, ring: RingSpec) -> list[RingElem]:
    """Columnwise :func:`phi` on an ``m x l`` matrix."""
    if c.rows != ring.m:
        raise ShapeError(f"expected {ring.m} rows, got {c.rows}")
    return [phi(Matrix(c.field, c.data[:, [j]]), ring) for j in range(c.cols)]


def phi_mat_inv(elems: Sequence[RingElem]) -> Matrix:
    if not elems:
        raise ShapeError("empty row of ring elements")
    ring = elems[0].ring
    cols = []
    for e in elems:
        if e.ring != ring:
            raise FieldMismatchError("ring mismatch")
        cols.append(phi_inv(e).data)
    return Matrix(ring.field, np.hstack(cols))
