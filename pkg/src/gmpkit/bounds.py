"""Lower bounds on the minimum distance of GMP codes.

Two GMP bounds share the rank condition

    rank [A_0; A_1; ...; A_r] = M + rank [A_1; ...; A_r].

``thm61``: min_t D_t d(C_t), where D_t is the minimum distance of the
length-N code spanned by the first t rows of every A_k.

``thm62``: min_t (N - tau_t + 1) d(C_t), where tau_t is the least tau such
that for every tau-subset S of columns, Row_t(A_0) restricted to S is not
in the span of A_0^{(t-1)}(S), A_1^{(t)}(S), ..., A_r^{(t)}(S).

For plain MP codes (r = 0) the classical bounds ``mp_bound1`` (A NSC) and
``mp_bound2`` (rank A = M) are provided as well.
"""

from __future__ import annotations

import itertools
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal

from gmpkit.code import DEFAULT_CAP, LinearCode
from gmpkit.gmp import GmpSpec, gmp_generator
from gmpkit.matrix import Matrix, ShapeError, vstack

Method = Literal["thm61", "thm62", "mp_bound1", "mp_bound2"]

# Column subsets are enumerated exhaustively; C(16, 8) = 12870 is the worst case.
MAX_TAU_COLUMNS = 16


class BoundError(ValueError):
    pass


@dataclass
class BoundTerm:
    t: int
    param: int  # D_t, tau_t, or N - t + 1 depending on the method
    distance: int  # d(C_t)
    term: int


@dataclass
class BoundReport:
    method: Method
    applicable: bool
    reason: str = ""
    per_t: list[BoundTerm] = field(default_factory=list)
    bound: int | None = None
    actual: int | None = None

    @property
    def verdict(self) -> str | None:
        if self.actual is None or self.bound is None:
            return None
        return "TIGHT" if self.actual == self.bound else "SLACK"

    def as_dict(self) -> dict:
        return {
            "method": self.method,
            "applicable": self.applicable,
            "reason": self.reason,
            "per_t": [vars(p) for p in self.per_t],
            "bound": self.bound,
            "actual": self.actual,
            "verdict": self.verdict,
        }


def _check_shapes(mats: Sequence[Matrix]) -> None:
    if not mats:
        raise ShapeError("no matrices given")
    shape = mats[0].shape
    if any(a.shape != shape for a in mats):
        raise ShapeError("A_k must share one shape")


def _stack_rank(mats: Sequence[Matrix]) -> int:
    mats = [a for a in mats if a.rows]
    return vstack(mats).rank if mats else 0


def rank_condition(mats: Sequence[Matrix]) -> bool:
    """rank [A_0; ...; A_r] == M + rank [A_1; ...; A_r]."""
    _check_shapes(mats)
    M = mats[0].rows
    return _stack_rank(mats) == M + _stack_rank(mats[1:])


def compute_Dt(mats: Sequence[Matrix], t: int, cap: int = DEFAULT_CAP) -> int:
    _check_shapes(mats)
    if not 1 <= t <= mats[0].rows:
        raise IndexError(f"t={t} out of range 1..{mats[0].rows}")
    span = LinearCode(vstack([a.take_rows(t) for a in mats]))
    return span.min_distance(cap)


def _tau_condition(mats: Sequence[Matrix], t: int, cols: Sequence[int]) -> bool:
    top = [a.take_rows(t).take_cols(cols) for a in mats]
    lower = [mats[0].take_rows(t - 1).take_cols(cols)] + top[1:]
    return _stack_rank(top) == 1 + _stack_rank(lower)


def compute_tau(mats: Sequence[Matrix], t: int, max_cols: int = MAX_TAU_COLUMNS) -> int | None:
    """Least tau such that the rank increment holds on every tau-column subset.

    Returns None if no tau in 1..N works (only possible when the rank
    condition fails).
    """
    _check_shapes(mats)
    M, N = mats[0].shape
    if not 1 <= t <= M:
        raise IndexError(f"t={t} out of range 1..{M}")
    if N > max_cols:
        raise BoundError(f"N={N} exceeds the column-subset cap {max_cols}")
    for tau in range(1, N + 1):
        if all(_tau_condition(mats, t, js) for js in itertools.combinations(range(1, N + 1), tau)):
            return tau
    return None


def is_nsc(a: Matrix) -> bool:
    """Non-singular by columns: every first-t-rows, t-column minor is invertible."""
    M, N = a.shape
    if M > N:
        raise ShapeError(f"NSC needs M <= N, got {a.shape}")
    for t in range(1, M + 1):
        top = a.take_rows(t)
        for js in itertools.combinations(range(1, N + 1), t):
            if top.take_cols(js).rank < t:
                return False
    return True


def _distances(spec: GmpSpec, cap: int) -> list[int]:
    return [c.min_distance(cap) for c in spec.codes]


def _finish(report: BoundReport, spec: GmpSpec, actual: bool, cap: int) -> BoundReport:
    if report.per_t:
        report.bound = min(p.term for p in report.per_t)
    if actual:
        report.actual = gmp_distance(spec, cap)
    return report


def gmp_distance(spec: GmpSpec, cap: int = DEFAULT_CAP) -> int:
    return gmp_generator(spec).code.min_distance(cap)


def bound_thm61(spec: GmpSpec, *, actual: bool = False, cap: int = DEFAULT_CAP) -> BoundReport:
    report = BoundReport("thm61", applicable=rank_condition(spec.mats))
    if not report.applicable:
        report.reason = "rank condition fails"
        return _finish(report, spec, actual, cap)
    for t, d in enumerate(_distances(spec, cap), 1):
        D = compute_Dt(spec.mats, t, cap)
        report.per_t.append(BoundTerm(t, D, d, D * d))
    return _finish(report, spec, actual, cap)


def bound_thm62(spec: GmpSpec, *, actual: bool = False, cap: int = DEFAULT_CAP) -> BoundReport:
    report = BoundReport("thm62", applicable=rank_condition(spec.mats))
    if not report.applicable:
        report.reason = "rank condition fails"
        return _finish(report, spec, actual, cap)
    N = spec.N
    for t, d in enumerate(_distances(spec, cap), 1):
        tau = compute_tau(spec.mats, t)
        if tau is None:
            # The rank condition makes tau = N valid; reaching this is an anomaly.
            report.applicable = False
            report.reason = f"no tau exists for t={t}"
            report.per_t.clear()
            return _finish(report, spec, actual, cap)
        report.per_t.append(BoundTerm(t, tau, d, (N - tau + 1) * d))
    return _finish(report, spec, actual, cap)


def mp_bounds(spec: GmpSpec, *, actual: bool = False, cap: int = DEFAULT_CAP) -> tuple[BoundReport, BoundReport]:
    """The classical MP bounds: (N-t+1) d(C_t) for NSC A, and D_t d(C_t) for rank A = M."""
    b1 = BoundReport("mp_bound1", applicable=True)
    b2 = BoundReport("mp_bound2", applicable=True)
    if spec.r != 0:
        for b in (b1, b2):
            b.applicable = False
            b.reason = "not an MP code (r > 0)"
        return _finish(b1, spec, actual, cap), _finish(b2, spec, actual, cap)
    A = spec.mats[0]
    M, N = A.shape
    if M > N or not is_nsc(A):
        b1.applicable = False
        b1.reason = "A is not NSC"
    if A.rank != M:
        b2.applicable = False
        b2.reason = "rank(A) < M"
    dists = _distances(spec, cap)
    if b1.applicable:
        b1.per_t = [BoundTerm(t, N - t + 1, d, (N - t + 1) * d) for t, d in enumerate(dists, 1)]
    if b2.applicable:
        for t, d in enumerate(dists, 1):
            D = compute_Dt([A], t, cap)
            b2.per_t.append(BoundTerm(t, D, d, D * d))
    return _finish(b1, spec, actual, cap), _finish(b2, spec, actual, cap)
