from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import ALL_FIELDS, F2, F4, F5, SMALL_FIELDS, case, matrices
from oracles import brute_min_distance, span_set, weight
from gmpkit.code import CapExceededError, LinearCode, TrivialCodeError
from gmpkit.matrix import Matrix, ShapeError
from gmpkit.qt import qt_invariance_check, t_lambda
from gmpkit.ring import Poly, RingElem, RingSpec, phi_inv, poly_gcd


def test_identity_generator_is_full_space():
    c = LinearCode(Matrix.identity(F5, 4))
    assert (c.length, c.dimension, c.min_distance()) == (4, 4, 1)


def test_duplicate_rows_do_not_change_the_code():
    G = Matrix.parse(F2, "1,0,0,1;0,1,0,1")
    dup = Matrix.parse(F2, "1,0,0,1;0,1,0,1;1,0,0,1")
    assert LinearCode(dup).dimension == 2
    assert LinearCode(dup).same_code(LinearCode(G))


def test_reference_generator_has_dimension_six():
    gen = Matrix.parse(F2, case("ex4.1")["expect"]["gen"])
    assert LinearCode(gen).dimension == 6


def test_constacyclic_examples():
    R = RingSpec(F5, 3, 2)
    assert LinearCode.constacyclic(R, Poly.one(F5)).same_code(LinearCode.full_space(F5, 3))
    c = LinearCode.constacyclic(R, Poly.parse(F5, "2+x"))
    assert c.dimension == 2
    assert c.gen == Matrix.parse(F5, "2,1,0;0,2,1")
    R7 = RingSpec(F2, 7, 1)
    assert LinearCode.constacyclic(R7, Poly.parse(F2, "1+x+x^2+x^4")).dimension == 3


def test_constacyclic_equals_brute_force_ideal():
    # all 125 multipliers a(x) of degree < 3 over F_5
    R = RingSpec(F5, 3, 2)
    g = Poly.parse(F5, "2+x")
    ideal = set()
    for coeffs in itertools.product(range(5), repeat=3):
        e = RingElem(R, Poly.of(F5, coeffs) * g)
        ideal.add(tuple(phi_inv(e).T.tolist()[0]))
    code = LinearCode.constacyclic(R, g)
    assert set(map(tuple, code.codewords().tolist())) == ideal


def test_repetition_distance():
    assert LinearCode.repetition(F4, 5).min_distance() == 5


def test_ten_five_four_code():
    spec = case("ex6.6")["spec"]
    gen = Matrix.parse(F2, spec["codes"][0]["gen"])
    c = LinearCode(gen)
    assert (c.length, c.dimension, c.min_distance()) == (10, 5, 4)
    assert c.min_distance() == brute_min_distance(F2, gen.tolist())


def test_zero_code_has_no_distance():
    z = LinearCode(Matrix.zeros(F5, 2, 4))
    assert z.dimension == 0
    with pytest.raises(TrivialCodeError):
        z.min_distance()
    assert LinearCode(Matrix.zeros(F5, 0, 4)).dimension == 0
    with pytest.raises(ShapeError):
        LinearCode(Matrix.zeros(F5, 1, 0))


def test_membership():
    gen = Matrix.parse(F2, "1,0,0,1;0,1,0,1;0,0,1,1")
    c = LinearCode(gen)
    assert c.contains(Matrix.zeros(F2, 1, 4))
    for i in range(3):
        assert Matrix(F2, gen.data[[i]]) in c
    # every single-coordinate perturbation of every codeword leaves a d=2 code
    for w in c.codewords():
        for j in range(4):
            v = w.copy()
            v[j] ^= 1
            assert not c.contains(Matrix(F2, v[None, :]))
    with pytest.raises(ShapeError):
        c.contains(Matrix.zeros(F2, 1, 5))


def test_cap_is_enforced():
    c = LinearCode(Matrix.identity(F2, 12))
    with pytest.raises(CapExceededError):
        c.min_distance(cap=2**11)
    assert c.min_distance(cap=2**12) == 1


def test_weight_distribution_counts_every_codeword():
    c = LinearCode(Matrix.parse(F5, "1,0,2,3;0,1,4,4"))
    wd = c.weight_distribution()
    assert sum(wd) == 25 and wd[0] == 1
    assert wd == [sum(1 for w in span_set(F5, c.gen.tolist()) if weight(w) == i) for i in range(5)]


def test_constacyclic_zero_generator_requires_opt_in():
    R = RingSpec(F5, 3, 1)
    with pytest.raises(ValueError):
        LinearCode.constacyclic(R, Poly.zero(F5))
    assert LinearCode.constacyclic(R, Poly.zero(F5), allow_zero=True).dimension == 0


# -- properties --------------------------------------------------------------


@given(st.sampled_from(SMALL_FIELDS), st.integers(1, 4), st.integers(1, 6), st.data())
def test_min_distance_matches_independent_enumeration(F, k, n, data):
    gen = data.draw(matrices(F, k, n))
    c = LinearCode(gen)
    if c.dimension == 0:
        return
    assert c.min_distance() == brute_min_distance(F, gen.tolist())
    assert set(map(tuple, c.codewords().tolist())) == span_set(F, gen.tolist())


@given(st.sampled_from(ALL_FIELDS), st.integers(1, 6), st.data())
def test_constacyclic_structure(F, m, data):
    lam = data.draw(st.integers(1, F.q - 1))
    R = RingSpec(F, m, lam)
    g = Poly.of(F, data.draw(st.lists(st.integers(0, F.q - 1), min_size=1, max_size=m)))
    if R.reduce(g).is_zero():
        return
    code = LinearCode.constacyclic(R, g)
    gstar = poly_gcd(R.reduce(g), R.modulus)
    assert code.generator_poly == gstar
    assert code.dimension + gstar.degree == m
    assert code.same_code(LinearCode.constacyclic(R, gstar))
    T = t_lambda(F, m, lam)
    for i in range(code.basis.rows):
        col = Matrix(F, code.basis.data[[i]]).T
        assert code.contains((T @ col).T)
    assert qt_invariance_check(code, m, lam)


@given(st.sampled_from(SMALL_FIELDS), st.integers(1, 4), st.integers(1, 5), st.data())
def test_code_is_closed_under_linear_combination(F, k, n, data):
    c = LinearCode(data.draw(matrices(F, k, n)))
    words = c.codewords()
    i, j = data.draw(st.integers(0, len(words) - 1)), data.draw(st.integers(0, len(words) - 1))
    a, b = data.draw(st.integers(0, F.q - 1)), data.draw(st.integers(0, F.q - 1))
    w = F.add(F.mul(a, words[i]), F.mul(b, words[j]))
    assert c.contains(Matrix(F, np.asarray(w)[None, :]))
