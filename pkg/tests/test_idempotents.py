import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import rationals, skew_matrices
from lval.algebra import LVAlgebra, is_idempotent
from lval.idempotents import (
    Dim4Invariants,
    TheoremInapplicable,
    all_supports,
    check_solution,
    closed_form_for_support,
    dim3_closed_form,
    dim4_closed_form,
    enumerate_all,
    full_support_coordinates,
    idempotents_with_support,
    question1_check,
    theorem1_full_support,
)
from lval.linalg import HALF
from lval.sampling import DIM4_MODES, random_dim4
from lval.skew import SkewMatrix, constant_skew, skew3
import oracles

F = Fraction


def test_full_support_example():
    alg = LVAlgebra(skew3(1, 2, 3))
    w0, w1 = idempotents_with_support(alg, (1, 2, 3))
    assert w0.is_empty
    assert w1.status == "point" and str(w1.point) == "(3/2, -1, 1/2)"


def test_seven_idempotents_generic_dim3():
    a, b, c = F(2), F(-1, 3), F(5)
    alg = LVAlgebra(skew3(a, b, c))
    s = a - b + c
    expected = {
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
        (c / s, -b / s, a / s),
        (-1 / (2 * a), 1 / (2 * a), F(0)),
        (-1 / (2 * b), F(0), 1 / (2 * b)),
        (F(0), -1 / (2 * c), 1 / (2 * c)),
    }
    enum = enumerate_all(alg)
    assert {p.coords for p in enum.points()} == expected
    assert enum.total_with_zero == 8 and enum.finite


def test_dim3_family_when_b_equals_a_plus_c():
    alg = LVAlgebra(skew3(1, 3, 2))
    w0, w1 = idempotents_with_support(alg, (1, 2, 3))
    assert w0.status == "family" and w0.family.arity == 1 and w1.is_empty
    assert w0.same_as(dim3_closed_form(alg.matrix)[0])
    for x in w0.family.sample(random.Random(3), 15):
        assert is_idempotent(alg, x) and x.weight == 0 and x.support == (1, 2, 3)
    # excluded parameters drop out of the support
    assert not w0.family.allows([F(0)])


def test_dim3_closed_form_needs_a12():
    with pytest.raises(TheoremInapplicable):
        dim3_closed_form(skew3(0, 1, 2))


@given(st.tuples(rationals(), rationals(), rationals()))
def test_dim3_closed_form_vs_solver(abc):
    alg = LVAlgebra(skew3(*abc))
    for I in all_supports(3):
        got = closed_form_for_support(alg, I)
        want = idempotents_with_support(alg, I)
        assert all(g.same_as(w) for g, w in zip(got, want)), (abc, I)


@pytest.mark.parametrize("mode", DIM4_MODES)
def test_dim4_branches_vs_solver(mode):
    rng = random.Random(hash(mode) & 0xFFFF)
    alg_I = (1, 2, 3, 4)
    for _ in range(25):
        A = random_dim4(rng, mode)
        inv = Dim4Invariants.of(A)
        if mode.startswith("delta0"):
            assert inv.delta == 0
        alg = LVAlgebra(A)
        got = dim4_closed_form(A)
        want = idempotents_with_support(alg, alg_I)
        assert all(g.same_as(w) for g, w in zip(got, want))


def test_dim4_generic_point():
    A = SkewMatrix.from_upper(4, {(1, 2): 1, (1, 3): 2, (1, 4): 3, (2, 3): 4, (2, 4): 5, (3, 4): 6})
    inv = Dim4Invariants.of(A)
    assert inv.delta == 8 and inv.deltas == (5, 5, 3, 3)
    w0, w1 = dim4_closed_form(A)
    assert w0.point.coords == (F(-5, 16), F(5, 16), F(-3, 16), F(3, 16)) and w1.is_empty
    assert is_idempotent(LVAlgebra(A), w0.point)


@settings(max_examples=30)
@given(skew_matrices(min_n=2, max_n=4))
def test_solver_vs_polynomial_oracle(A):
    alg = LVAlgebra(A)
    for I in all_supports(A.n):
        w0, w1 = idempotents_with_support(alg, I)
        try:
            pts = oracles.idempotents_on_support(A.entries, I)
        except ValueError:
            assert "family" in (w0.status, w1.status)
            continue
        mine = sorted(s.point.coords for s in (w0, w1) if s.status == "point")
        assert mine == pts
        assert "family" not in (w0.status, w1.status)


@given(skew_matrices(min_n=1, max_n=5))
def test_solutions_are_genuine(A):
    alg = LVAlgebra(A)
    for I in all_supports(A.n):
        for s in idempotents_with_support(alg, I):
            check_solution(alg, s, random.Random(1), samples=4)


@given(skew_matrices(min_n=2, max_n=7))
def test_theorem1_vs_solver(A):
    alg = LVAlgebra(A)
    try:
        got = theorem1_full_support(alg)
    except TheoremInapplicable:
        return
    want = idempotents_with_support(alg, tuple(range(1, A.n + 1)))
    assert all(g.same_as(w) for g, w in zip(got, want))


def test_theorem1_odd_example_is_empty():
    A = skew3(1, 0, 0)
    w, coords = full_support_coordinates(A)
    assert (w, coords) == (1, (0, 0, 1))
    w0, w1 = theorem1_full_support(LVAlgebra(A))
    assert w0.is_empty and w1.is_empty


def test_theorem1_inapplicable():
    with pytest.raises(TheoremInapplicable):
        theorem1_full_support(LVAlgebra(SkewMatrix.zero(4)))
    with pytest.raises(TheoremInapplicable):
        theorem1_full_support(LVAlgebra(skew3(1, 2, 1)))


@pytest.mark.parametrize("a", [F(1), F(-3), HALF, F(7, 3)])
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_constant_census(a, n):
    enum = enumerate_all(LVAlgebra(constant_skew(n, a)))
    assert enum.total_with_zero == 2**n and enum.finite
    for w0, w1 in enum.entries:
        k = len(w0.support)
        sign = [(-1) ** (m + 1) for m in range(1, k + 1)] if k % 2 else [(-1) ** m / (2 * a) for m in range(1, k + 1)]
        expected = [F(0)] * n
        for p, v in zip(w0.support, sign):
            expected[p - 1] = F(v)
        found = w1 if k % 2 else w0
        assert found.point.coords == tuple(expected)


def test_enumerate_bound():
    with pytest.raises(ValueError):
        enumerate_all(LVAlgebra(SkewMatrix.zero(4)), max_n=3)


def test_zero_matrix_families():
    enum = enumerate_all(LVAlgebra(SkewMatrix.zero(3)))
    assert enum.has_family
    w0, w1 = enum.entries[-1]
    assert w0.is_empty and w1.status == "family" and w1.family.arity == 2


@settings(max_examples=25)
@given(skew_matrices(min_n=2, max_n=5))
def test_question1_small_supports(A):
    assert question1_check(LVAlgebra(A), 4).confirmed


def test_bad_support():
    alg = LVAlgebra(skew3(1, 2, 3))
    for I in [(), (0,), (1, 1), (4,)]:
        with pytest.raises((ValueError, IndexError)):
            idempotents_with_support(alg, I)
