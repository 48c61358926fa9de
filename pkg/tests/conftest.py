from __future__ import annotations

import json
import random
from importlib import resources

import numpy as np
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gmpkit.code import LinearCode
from gmpkit.field import GF
from gmpkit.gmp import GmpSpec
from gmpkit.matrix import Matrix
from gmpkit.qt import QtCode
from gmpkit.ring import Poly, RingElem, RingSpec
from gmpkit.specio import parse_gmp_spec

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

F2, F3, F5, F7 = GF(2), GF(3), GF(5), GF(7)
F4 = GF.preset("paper-F4")
F9 = GF.preset("paper-F9")
SMALL_FIELDS = [F2, F3, F4, F5]
ALL_FIELDS = [F2, F3, F4, F5, F7, F9]


def case(name: str) -> dict:
    ref = resources.files("gmpkit") / "data" / "cases" / f"{name}.json"
    return json.loads(ref.read_text(encoding="utf-8"))


def case_spec(name: str) -> GmpSpec:
    return parse_gmp_spec(case(name)["spec"], name)


# -- hypothesis strategies -----------------------------------------------


@st.composite
def matrices(draw, field: GF, rows: int, cols: int) -> Matrix:
    entries = draw(st.lists(st.integers(0, field.q - 1), min_size=rows * cols, max_size=rows * cols))
    return Matrix(field, np.array(entries, dtype=np.int64).reshape(rows, cols))


@st.composite
def small_gmp_specs(draw, fields=SMALL_FIELDS, max_messages: int = 4096) -> GmpSpec:
    """Random GMP specs whose codeword-tuple count stays within max_messages."""
    F = draw(st.sampled_from(fields))
    m = draw(st.integers(1, 3))
    M = draw(st.integers(1, 3))
    N = draw(st.integers(1, 4))
    r = draw(st.integers(0, 2))
    budget = 0
    while F.q ** (budget + 1) <= max_messages:
        budget += 1
    codes = []
    for _ in range(M):
        k = draw(st.integers(0, min(m, budget)))
        budget -= k
        codes.append(LinearCode(draw(matrices(F, k, m))) if k else LinearCode(Matrix.zeros(F, 0, m)))
    T = draw(matrices(F, m, m))
    mats = [draw(matrices(F, M, N)) for _ in range(r + 1)]
    return GmpSpec(T, codes, mats)


@st.composite
def small_qt_codes(draw, fields=(F2, F3, F5)) -> QtCode:
    F = draw(st.sampled_from(fields))
    m = draw(st.integers(1, 4))
    lam = draw(st.integers(1, F.q - 1))
    ring = RingSpec(F, m, lam)
    ell = draw(st.integers(1, 3))
    M = draw(st.integers(1, 2))
    rows = []
    for _ in range(M):
        row = []
        for _ in range(ell):
            coeffs = draw(st.lists(st.integers(0, F.q - 1), min_size=ring.m, max_size=ring.m))
            row.append(RingElem(ring, Poly.of(F, coeffs)))
        if all(e.is_zero() for e in row):
            row[0] = ring.one()
        rows.append(row)
    return QtCode(ring, rows)


def rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_nsc(F: GF, M: int, N: int, rnd: random.Random) -> Matrix:
    """L * V * D with V Vandermonde at N distinct points (needs N <= q), L lower
    unitriangular up to a nonzero diagonal, D nonzero diagonal: every leading
    t x t minor on any t columns stays nonsingular."""
    points = rnd.sample(range(F.q), N)
    V = Matrix(F, [[F.pow(x, i) if (x or i) else 1 for x in points] for i in range(M)])
    L = [[(rnd.randrange(1, F.q) if i == j else rnd.randrange(F.q)) if j <= i else 0 for j in range(M)]
         for i in range(M)]
    D = [[rnd.randrange(1, F.q) if i == j else 0 for j in range(N)] for i in range(N)]
    return Matrix(F, L) @ V @ Matrix(F, D)


# -- acceptance summary -----------------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[n]
        terminalreporter.write_line(line)
