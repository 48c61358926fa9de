from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import F2, F3, F5, case, case_spec, matrices, small_gmp_specs
from oracles import span_set
from gmpkit.code import CapExceededError, LinearCode
from gmpkit.field import FieldMismatchError
from gmpkit.gmp import (
    GmpSpec,
    gmp_bruteforce_code,
    gmp_dim_check,
    gmp_generator,
    gmp_is_T_invariant,
    is_invariant,
    row_span_set,
)
from gmpkit.matrix import Matrix, ShapeError, block_diag


def col(F, text):
    return Matrix.parse(F, text).T


# -- worked examples -----------------------------------------------------------


def test_generator_matches_reference_matrix():
    spec = case_spec("ex4.1")
    a = gmp_generator(spec)
    assert a.gen == Matrix.parse(F2, case("ex4.1")["expect"]["gen"])
    assert (a.sigma_rank, a.dim, a.is_mp) == (8, 6, False)


def test_dimension_criterion_on_examples():
    d = gmp_dim_check(case_spec("ex4.1"))
    assert (d.rank_condition_met, d.predicted_dim, d.actual_dim) == (True, 6, 6)
    d = gmp_dim_check(case_spec("ex4.5"))
    assert (d.rank_condition_met, d.predicted_dim, d.actual_dim) == (False, None, 6)
    assert gmp_generator(case_spec("ex4.5")).sigma_rank == 11
    spec = case_spec("ex4.3")
    assert spec.M > spec.N
    d = gmp_dim_check(spec)
    assert (d.rank_condition_met, d.actual_dim) == (False, 9)


def test_codeword_reproduces_first_generator_row():
    spec = case_spec("ex4.1")
    c = col(F2, "1,0,0,1")
    Q = spec.codeword([c, c])
    # row 1 of diag[G1,G1] * sigma is the image of (g_1, 0); row 4 of (0, g_1)
    gen = gmp_generator(spec).gen
    want = Matrix(F2, F2.add(gen.data[0], gen.data[3])[None, :])
    assert Q.vec() == want
    assert spec.codeword([c, Matrix.zeros(F2, 4, 1)]).vec() == Matrix(F2, gen.data[[0]])


def test_zero_codewords_give_zero_matrix():
    spec = case_spec("ex4.4")
    z = Matrix.zeros(F5, 3, 1)
    assert spec.codeword([z, z, z]).is_zero()


def test_codeword_rejects_non_codewords_and_bad_shapes():
    spec = case_spec("ex4.1")
    with pytest.raises(ValueError):
        spec.codeword([col(F2, "1,0,0,0"), col(F2, "0,0,0,0")])
    with pytest.raises(ShapeError):
        spec.codeword([col(F2, "1,0,0,1")])


def test_identity_T_collapses_to_matrix_product():
    G = Matrix.parse(F3, "1,0,2;0,1,1")
    codes = [LinearCode(G), LinearCode.repetition(F3, 3)]
    A0 = Matrix.parse(F3, "1,2,0;0,1,1")
    A1 = Matrix.parse(F3, "2,2,1;1,0,1")
    spec = GmpSpec(Matrix.identity(F3, 3), codes, [A0, A1])
    ok, A = spec.is_mp()
    assert ok and A == A0 + A1
    c1, c2 = col(F3, "1,2,1"), col(F3, "2,2,2")
    assert spec.codeword([c1, c2]) == Matrix.parse(F3, "1,2,1;2,2,2").T @ (A0 + A1)


def test_mp_generator_formula_when_higher_matrices_vanish():
    spec = case_spec("ex4.1")
    A0 = spec.mats[0]
    mp = GmpSpec(spec.T, spec.codes, [A0, Matrix.zeros(F2, 2, 5)])
    assert mp.r == 0 and mp.is_mp() == (True, A0)
    want = block_diag([c.gen for c in spec.codes]) @ A0.kron(Matrix.identity(F2, 4))
    assert gmp_generator(mp).gen == want


def test_mp_detection_is_syntactic():
    assert case_spec("ex4.1").is_mp() == (False, None)
    spec = case_spec("ex4.1")
    zeroT = GmpSpec(Matrix.zeros(F2, 4, 4), spec.codes, spec.mats)
    assert zeroT.is_mp() == (True, spec.mats[0])


def test_bruteforce_examples():
    spec = case_spec("ex4.1")
    words = gmp_bruteforce_code(spec)
    assert len(words) == 64
    assert words == row_span_set(Matrix.parse(F2, case("ex4.1")["expect"]["gen"]))
    zero = LinearCode(Matrix.zeros(F2, 0, 4))
    z = GmpSpec(spec.T, [zero, zero], spec.mats)
    assert gmp_bruteforce_code(z) == {(0,) * 20}
    with pytest.raises(CapExceededError):
        gmp_bruteforce_code(spec, cap=63)


def test_small_binary_cross_check_exhaustive():
    # a regular sample of T, A_0, A_1 over F_2 with m=M=N=2, C_1 = F_2^2, C_2 = repetition
    full = LinearCode.full_space(F2, 2)
    rep = LinearCode.repetition(F2, 2)
    mats = [Matrix(F2, np.array(bits, dtype=np.int64).reshape(2, 2)) for bits in itertools.product(range(2), repeat=4)]
    for T in mats[::3]:
        for A0 in mats[::2]:
            for A1 in mats[1::4]:
                spec = GmpSpec(T, [full, rep], [A0, A1])
                assert gmp_bruteforce_code(spec) == row_span_set(gmp_generator(spec).gen)


def test_spec_validation():
    spec = case_spec("ex4.1")
    with pytest.raises(ShapeError):
        GmpSpec(spec.T, [], spec.mats)
    with pytest.raises(ShapeError):
        GmpSpec(spec.T, spec.codes, [])
    with pytest.raises(ShapeError):
        GmpSpec(Matrix.zeros(F2, 4, 3), spec.codes, spec.mats)
    with pytest.raises(ShapeError):
        GmpSpec(spec.T, spec.codes[:1], spec.mats)
    with pytest.raises(ShapeError):
        GmpSpec(spec.T, spec.codes, [spec.mats[0], Matrix.zeros(F2, 2, 4)])
    with pytest.raises(ShapeError):
        GmpSpec(spec.T, [LinearCode.full_space(F2, 3)] * 2, spec.mats)
    with pytest.raises(FieldMismatchError):
        GmpSpec(Matrix.zeros(F3, 4, 4), spec.codes, spec.mats)


def test_trailing_zero_matrices_are_stripped():
    spec = case_spec("ex4.1")
    padded = GmpSpec(spec.T, spec.codes, spec.mats + [Matrix.zeros(F2, 2, 5)] * 2)
    assert padded.r == 1
    assert gmp_generator(padded).gen == gmp_generator(spec).gen


# -- properties ----------------------------------------------------------------


@given(small_gmp_specs())
def test_bruteforce_equals_generator_row_span(spec):
    assert gmp_bruteforce_code(spec) == row_span_set(gmp_generator(spec).gen)


@given(small_gmp_specs(max_messages=1024))
def test_generator_row_span_matches_independent_enumeration(spec):
    gen = gmp_generator(spec).gen
    assert row_span_set(gen) == span_set(spec.field, gen.tolist())


@given(small_gmp_specs())
def test_rank_condition_pins_size(spec):
    a = gmp_generator(spec)
    if a.rank_condition_met:
        assert a.dim == sum(c.dimension for c in spec.codes)
        assert len(gmp_bruteforce_code(spec)) == np.prod([c.size for c in spec.codes])
    assert a.dim <= sum(c.dimension for c in spec.codes)


@given(small_gmp_specs(), st.data())
def test_linearity(spec, data):
    code = gmp_generator(spec).code
    words = code.codewords()
    F = spec.field
    u = words[data.draw(st.integers(0, len(words) - 1))]
    v = words[data.draw(st.integers(0, len(words) - 1))]
    a, b = data.draw(st.integers(0, F.q - 1)), data.draw(st.integers(0, F.q - 1))
    w = F.add(F.mul(a, u), F.mul(b, v))
    assert code.contains(Matrix(F, np.asarray(w)[None, :]))


@given(small_gmp_specs())
def test_invariant_constituents_give_invariant_code(spec):
    if all(is_invariant(c, spec.T) for c in spec.codes):
        assert gmp_is_T_invariant(spec)


@given(st.sampled_from([F2, F3]), st.integers(1, 3), st.data())
def test_invariant_constituents_on_forced_examples(F, m, data):
    # constituents spanned by T-orbits are T-invariant by construction
    T = data.draw(matrices(F, m, m))
    v = data.draw(matrices(F, m, 1))
    orbit = [v]
    for _ in range(m - 1):
        orbit.append(T @ orbit[-1])
    C = LinearCode(Matrix(F, np.hstack([o.data for o in orbit]).T))
    assert is_invariant(C, T)
    A = [data.draw(matrices(F, 2, 2)) for _ in range(2)]
    spec = GmpSpec(T, [C, C], A)
    assert gmp_is_T_invariant(spec)
