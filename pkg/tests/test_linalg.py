from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rationals
from lval.linalg import (
    RatMatrix,
    canonical_affine,
    determinant,
    format_rational,
    parse_rational,
    rref,
    solve_affine,
)
from oracles import cofactor_det


@st.composite
def matrices(draw, max_m=5, max_n=5, square=False):
    m = draw(st.integers(1, max_m))
    n = m if square else draw(st.integers(1, max_n))
    return RatMatrix.from_rows([[draw(rationals()) for _ in range(n)] for _ in range(m)])


@pytest.mark.parametrize(
    "text,value",
    [("3/2", Fraction(3, 2)), ("-1", Fraction(-1)), ("−1/4", Fraction(-1, 4)), ("6/4", Fraction(3, 2)), ("0", Fraction(0))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", ["", "1 /2", "a", "1/", "/2", "1/-2", "1.5"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rational("1/0")


@given(rationals(50, 50))
def test_format_parse_roundtrip(q):
    s = format_rational(q)
    assert parse_rational(s) == q
    assert " " not in s and (q.denominator != 1 or "/" not in s)


@given(matrices(square=True))
def test_determinant_matches_cofactor(M):
    assert determinant(M) == cofactor_det(M.entries)


@given(matrices(square=True))
def test_inverse(M):
    if determinant(M) == 0:
        with pytest.raises(ZeroDivisionError):
            M.inverse()
    else:
        assert M @ M.inverse() == RatMatrix.identity(M.nrows)


@given(matrices())
def test_rref_shape(M):
    R, piv = rref(M)
    assert len(piv) == M.rank()
    for r, c in enumerate(piv):
        assert R[r, c] == 1
        assert all(R[k, c] == 0 for k in range(M.nrows) if k != r)
    assert all(all(x == 0 for x in R.row(r)) for r in range(len(piv), M.nrows))


@given(matrices(), st.data())
def test_solve_affine(M, data):
    x0 = [data.draw(rationals()) for _ in range(M.ncols)]
    b = M @ x0
    sol = solve_affine(M, b)
    assert not sol.is_empty
    assert sol.dimension == M.ncols - M.rank()
    t = [data.draw(rationals()) for _ in range(sol.dimension)]
    assert M @ list(sol.member(t)) == b
    for v in sol.nullspace_basis:
        assert all(x == 0 for x in M @ list(v))


def test_solve_affine_inconsistent():
    M = RatMatrix.from_rows([[1, 1], [2, 2]])
    assert solve_affine(M, [1, 3]).is_empty
    with pytest.raises(ValueError):
        solve_affine(M, [1])


@given(st.data())
def test_canonical_affine_independent_of_presentation(data):
    n = data.draw(st.integers(2, 4))
    k = data.draw(st.integers(1, n - 1))
    basis = [[data.draw(rationals()) for _ in range(n)] for _ in range(k)]
    p = [data.draw(rationals()) for _ in range(n)]
    mix = [[data.draw(rationals()) for _ in range(k)] for _ in range(k)]
    if determinant(RatMatrix.from_rows(mix)) == 0:
        return
    basis2 = [[sum((mix[r][m] * basis[m][c] for m in range(k)), Fraction(0)) for c in range(n)] for r in range(k)]
    shift = [data.draw(rationals()) for _ in range(k)]
    p2 = [p[c] + sum((shift[m] * basis[m][c] for m in range(k)), Fraction(0)) for c in range(n)]
    assert canonical_affine(p, basis) == canonical_affine(p2, basis2)
