"""Finite fields F_p and F_{p^k} with exact arithmetic.

Elements are stored as integer codes ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``
where ``(c_0, ..., c_{k-1})`` are the coordinates in the power basis
``1, a, ..., a^{k-1}`` and ``a`` is the residue class of ``x`` modulo the
defining polynomial.  Every arithmetic routine on :class:`GF` accepts numpy
arrays of codes (or plain ints) so matrices can be processed in bulk.
"""

from __future__ import annotations

import functools
import itertools
import re
from collections.abc import Sequence
from dataclasses import dataclass, field as dc_field

import numpy as np
import numpy.typing as npt

# Tables are q*q int64 entries; above this the coefficient path is used.
_TABLE_LIMIT = 1024
_MAX_ORDER = 2**20

PRESETS: dict[str, tuple[int, int, tuple[int, ...]]] = {
    "paper-F4": (2, 2, (1, 1, 1)),
    "paper-F9": (3, 2, (2, 2, 1)),
}


class FieldError(ValueError):
    """Invalid field definition or element."""


class FieldMismatchError(FieldError):
    """Operands live in different fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _fp_poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a by the monic b over F_p (coefficients ascending)."""
    a = [c % p for c in a]
    db = len(b) - 1
    while len(a) - 1 >= db:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - db
            for i, c in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if not any(_fp_poly_mod(list(modulus), divisor, p)):
                return False
    return True


@dataclass(frozen=True)
class GF:
    """The finite field F_q with q = p^k.

    ``modulus`` lists the coefficients (ascending degree) of a monic
    irreducible polynomial of degree k over F_p; it is required when k > 1
    and checked for irreducibility at construction.
    """

    p: int
    k: int = 1
    modulus: tuple[int, ...] | None = None
    q: int = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not _is_prime(self.p):
            raise FieldError(f"characteristic {self.p} is not prime")
        if self.k < 1:
            raise FieldError("extension degree must be >= 1")
        q = self.p**self.k
        if q > _MAX_ORDER:
            raise FieldError(f"field order {q} exceeds 2^20")
        object.__setattr__(self, "q", q)
        if self.k == 1:
            if self.modulus is not None and len(self.modulus) not in (0, 2):
                raise FieldError("a prime field takes no modulus of degree > 1")
            object.__setattr__(self, "modulus", None)
            return
        if self.modulus is None:
            raise FieldError(f"F_{self.p}^{self.k} needs an explicit modulus")
        mod = tuple(int(c) for c in self.modulus)
        if len(mod) != self.k + 1:
            raise FieldError(f"modulus must have {self.k + 1} coefficients")
        if any(not 0 <= c < self.p for c in mod):
            raise FieldError(f"modulus coefficients must lie in [0, {self.p})")
        if mod[-1] != 1:
            raise FieldError("modulus must be monic")
        if not _is_irreducible(mod, self.p):
            raise FieldError(f"modulus {list(mod)} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @classmethod
    def preset(cls, name: str) -> GF:
        try:
            p, k, mod = PRESETS[name]
        except KeyError:
            raise FieldError(f"unknown field preset {name!r}") from None
        return cls(p, k, mod)

    def __str__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}, modulus={list(self.modulus)})"

    # -- code <-> coefficient conversion --------------------------------

    @functools.cached_property
    def _powers(self) -> np.ndarray:
        return self.p ** np.arange(self.k, dtype=np.int64)

    def to_coeffs(self, a: npt.ArrayLike) -> np.ndarray:
        """Coefficient vectors, shape ``a.shape + (k,)``."""
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self._powers) % self.p

    def from_coeffs(self, c: npt.ArrayLike) -> np.ndarray:
        c = np.asarray(c, dtype=np.int64) % self.p
        return (c * self._powers).sum(axis=-1)

    # -- vectorized arithmetic on codes ---------------------------------

    @functools.cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray] | None:
        if self.k == 1 or self.q > _TABLE_LIMIT:
            return None
        elems = np.arange(self.q, dtype=np.int64)
        add = self._add_coeff(elems[:, None], elems[None, :])
        mul = self._mul_coeff(elems[:, None], elems[None, :])
        add.setflags(write=False)
        mul.setflags(write=False)
        return add, mul

    def _add_coeff(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.from_coeffs(self.to_coeffs(a) + self.to_coeffs(b))

    def _mul_coeff(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        ca, cb = self.to_coeffs(a), self.to_coeffs(b)
        ca, cb = np.broadcast_arrays(ca, cb)
        k, p = self.k, self.p
        prod = np.zeros(ca.shape[:-1] + (2 * k - 1,), dtype=np.int64)
        for i in range(k):
            prod[..., i : i + k] += ca[..., i : i + 1] * cb
        prod %= p
        mod = np.asarray(self.modulus[:-1], dtype=np.int64)
        for d in range(2 * k - 2, k - 1, -1):
            lead = prod[..., d : d + 1]
            prod[..., d - k : d] = (prod[..., d - k : d] - lead * mod) % p
        return self.from_coeffs(prod[..., :k])

    def add(self, a: npt.ArrayLike, b: npt.ArrayLike) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a + b) % self.p
        if self._tables is not None:
            return self._tables[0][a, b]
        return self._add_coeff(a, b)

    def neg(self, a: npt.ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return (-a) % self.p
        return self.from_coeffs(-self.to_coeffs(a))

    def sub(self, a: npt.ArrayLike, b: npt.ArrayLike) -> np.ndarray:
        return self.add(a, self.neg(b))

    def mul(self, a: npt.ArrayLike, b: npt.ArrayLike) -> np.ndarray:
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return (a * b) % self.p
        if self._tables is not None:
            return self._tables[1][a, b]
        return self._mul_coeff(a, b)

    def pow(self, a: int, e: int) -> int:
        result, base = 1, int(a)
        while e:
            if e & 1:
                result = int(self.mul(result, base))
            base = int(self.mul(base, base))
            e >>= 1
        return result

    @functools.cached_property
    def _inverses(self) -> np.ndarray | None:
        if self.q > _TABLE_LIMIT:
            return None
        inv = np.zeros(self.q, dtype=np.int64)
        for a in range(1, self.q):
            inv[a] = self.pow(a, self.q - 2)
        inv.setflags(write=False)
        return inv

    def inv(self, a: npt.ArrayLike) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("zero has no inverse")
        if self._inverses is not None:
            return self._inverses[a]
        return np.vectorize(lambda x: self.pow(int(x), self.q - 2), otypes=[np.int64])(a)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product of code arrays, broadcasting over leading axes."""
        a, b = np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64)
        if self.k == 1:
            return np.matmul(a, b) % self.p
        prods = self.mul(a[..., :, :, None], b[..., None, :, :])
        return self.from_coeffs(self.to_coeffs(prods).sum(axis=-3))

    def sum(self, a: np.ndarray, axis: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        c = self.to_coeffs(a)
        axis = axis if axis >= 0 else axis - 1
        return self.from_coeffs(c.sum(axis=axis))

    # -- elements --------------------------------------------------------

    def __call__(self, value: int | str | Sequence[int] | FieldElem) -> FieldElem:
        return FieldElem(self, self.code(value))

    def code(self, value: int | str | Sequence[int] | FieldElem | np.integer) -> int:
        """Integer code of an int code, text, or coefficient tuple."""
        if isinstance(value, FieldElem):
            if value.field != self:
                raise FieldMismatchError(f"{value} is not an element of {self}")
            return value.code
        if isinstance(value, str):
            return self.parse(value).code
        if isinstance(value, (int, np.integer)):
            # ints are integer codes; prime fields also accept any residue
            v = int(value)
            if 0 <= v < self.q:
                return v
            if self.k == 1:
                return v % self.p
            raise FieldError(f"integer code {v} out of range for {self}")
        coeffs = [int(c) for c in value]
        if len(coeffs) != self.k or any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"coefficient tuple {coeffs} is invalid in {self}")
        return int(self.from_coeffs(coeffs))

    @property
    def zero(self) -> FieldElem:
        return FieldElem(self, 0)

    @property
    def one(self) -> FieldElem:
        return FieldElem(self, 1)

    def alpha_pow(self, i: int) -> FieldElem:
        """a^i where a is the class of x; requires an extension field."""
        if self.k == 1:
            raise FieldError("a^i notation needs an extension field")
        if i < 0:
            raise FieldError("exponent must be non-negative")
        return FieldElem(self, self.pow(self.p, i))

    def elements(self) -> list[FieldElem]:
        return [FieldElem(self, c) for c in range(self.q)]

    _ALPHA = re.compile(r"^(?:a|α|alpha)(?:\^(\d+))?$")
    _TUPLE = re.compile(r"^\[([\d,]*)\]$")

    def parse(self, text: str) -> FieldElem:
        """Parse ``"3"``, ``"a^5"`` or ``"[c0,c1]"`` (whitespace ignored)."""
        s = re.sub(r"\s+", "", str(text))
        if re.fullmatch(r"-?\d+", s):
            return FieldElem(self, int(s) % self.p)
        if m := self._ALPHA.match(s):
            return self.alpha_pow(int(m.group(1)) if m.group(1) else 1)
        if m := self._TUPLE.match(s):
            parts = [x for x in m.group(1).split(",")]
            if any(x == "" for x in parts):
                raise FieldError(f"malformed element {text!r}")
            return FieldElem(self, self.code([int(x) for x in parts]))
        raise FieldError(f"malformed element {text!r}")

    def format(self, code: int) -> str:
        code = int(code)
        if code < self.p:
            return str(code)
        return "[" + ",".join(str(int(c)) for c in self.to_coeffs(code)) + "]"

    def spec(self) -> dict:
        """JSON-ready description, the inverse of :func:`field_from_spec`."""
        if self.k == 1:
            return {"p": self.p}
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}


def field_from_spec(spec: dict | str | int) -> GF:
    """Build a field from ``{"p":..,"k":..,"modulus":[..]}``, a preset name or a prime."""
    if isinstance(spec, int):
        return GF(spec)
    if isinstance(spec, str):
        return GF.preset(spec)
    if "preset" in spec:
        return GF.preset(spec["preset"])
    try:
        p = int(spec["p"])
    except (KeyError, TypeError, ValueError):
        raise FieldError(f"field spec needs an integer 'p': {spec!r}") from None
    k = int(spec.get("k", 1))
    mod = spec.get("modulus")
    return GF(p, k, tuple(mod) if mod is not None else None)


@dataclass(frozen=True)
class FieldElem:
    """A single field element; immutable and hashable."""

    field: GF
    code: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(int(c) for c in self.field.to_coeffs(self.code))

    def _other(self, other: FieldElem | int) -> int:
        if isinstance(other, FieldElem):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other.code
        if isinstance(other, (int, np.integer)):
            return int(other) % self.field.p
        return NotImplemented

    def __add__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, int(self.field.add(self.code, self._other(other))))

    __radd__ = __add__

    def __sub__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, int(self.field.sub(self.code, self._other(other))))

    def __rsub__(self, other: int) -> FieldElem:
        return FieldElem(self.field, int(self.field.sub(self._other(other), self.code)))

    def __neg__(self) -> FieldElem:
        return FieldElem(self.field, int(self.field.neg(self.code)))

    def __mul__(self, other: FieldElem | int) -> FieldElem:
        return FieldElem(self.field, int(self.field.mul(self.code, self._other(other))))

    __rmul__ = __mul__

    def inverse(self) -> FieldElem:
        return FieldElem(self.field, int(self.field.inv(self.code)))

    def __truediv__(self, other: FieldElem | int) -> FieldElem:
        return self * FieldElem(self.field, self._other(other)).inverse()

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inverse() ** (-e)
        return FieldElem(self.field, self.field.pow(self.code, e))

    def __bool__(self) -> bool:
        return self.code != 0

    def __int__(self) -> int:
        if self.code >= self.field.p:
            raise FieldError(f"{self} is not in the prime subfield")
        return self.code

    def __str__(self) -> str:
        return self.field.format(self.code)

    def __repr__(self) -> str:
        return f"FieldElem({self}, {self.field})"
