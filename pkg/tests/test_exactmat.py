from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from symdesign.exactmat import (
    InconsistentInputError,
    MatrixParseError,
    RatMatrix,
    ShapeError,
    SingularParameterError,
    format_matrix,
    gram_check,
    jmat_inverse,
    parse_matrix,
    parse_rat,
    row_space_preimage,
    solve_affine,
    vecmat,
)

from conftest import rationals


def naive_gram(C, alpha, beta):
    rows = C.tolist()
    for i, ri in enumerate(rows):
        for j, rj in enumerate(rows):
            want = alpha + beta if i == j else beta
            if sum(a * b for a, b in zip(ri, rj)) != want:
                return False
    return True


def test_parse_rat_reduces():
    assert parse_rat("1/2") == Fraction(1, 2)
    assert parse_rat("3/6") == Fraction(1, 2)
    assert parse_rat("-2129/11221") == Fraction(-2129, 11221)
    assert parse_rat("+7") == 7


@pytest.mark.parametrize("bad", ["1/0", "1.5", "a", "1/-2", "", "1//2"])
def test_parse_rat_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


def test_no_floats():
    with pytest.raises(TypeError):
        RatMatrix([[0.5]])


def test_gram_check_identity_and_ones():
    assert gram_check(RatMatrix.identity(3), 1, 0)
    assert not gram_check(RatMatrix.ones(2, 3), 1, 2)
    # all-ones 2x3 rows: self product 3, cross product 3
    assert gram_check(RatMatrix.ones(2, 3), 0, 3)


def test_gram_check_shape():
    with pytest.raises(ShapeError):
        gram_check(RatMatrix.ones(3, 2), 1, 1)


def test_gram_check_bordered_plane(plane5_border):
    assert plane5_border.shape == (32, 33)
    assert gram_check(plane5_border, 5, 9)
    assert not gram_check(plane5_border, 5, 8)


@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), min_size=1, max_size=4),
       st.integers(0, 6), st.integers(0, 6))
def test_gram_check_matches_double_loop(rows, alpha, beta):
    C = RatMatrix(rows)
    assert gram_check(C, alpha, beta) == naive_gram(C, alpha, beta)


def test_jmat_inverse_examples():
    assert jmat_inverse(1, 0, 4) == RatMatrix.identity(4)
    assert jmat_inverse(2, 1, 2) == RatMatrix([["3/8", "-1/8"], ["-1/8", "3/8"]])
    M = jmat_inverse(5, 9, 32)
    expected = (RatMatrix.identity(32) - RatMatrix.ones(32, 32).scale(Fraction(9, 293))).scale(Fraction(1, 5))
    assert M == expected


def test_jmat_inverse_singular():
    with pytest.raises(SingularParameterError):
        jmat_inverse(0, 3, 4)


def test_jmat_inverse_grid():
    for w in range(1, 51, 7):
        for alpha in range(1, 11, 3):
            for beta in range(0, 11, 2):
                G = RatMatrix.identity(w).scale(alpha) + RatMatrix.ones(w, w).scale(beta)
                M = jmat_inverse(alpha, beta, w)
                assert G @ M == RatMatrix.identity(w)
                assert M @ G == RatMatrix.identity(w)


@given(st.integers(1, 50), st.integers(1, 10), st.integers(0, 10))
@settings(max_examples=60)
def test_jmat_inverse_property(w, alpha, beta):
    G = RatMatrix.identity(w).scale(alpha) + RatMatrix.ones(w, w).scale(beta)
    assert G @ jmat_inverse(alpha, beta, w) == RatMatrix.identity(w)


def test_row_space_preimage_identity():
    assert row_space_preimage(RatMatrix.identity(3), 1, 0) == RatMatrix.identity(3)


def test_row_space_preimage_plane(plane5_border):
    M = row_space_preimage(plane5_border, 5, 9)
    assert M.shape == (33, 32)
    assert plane5_border @ M == RatMatrix.identity(32)


def test_row_space_preimage_rejects_bad_gram():
    with pytest.raises(InconsistentInputError):
        row_space_preimage(RatMatrix.ones(2, 3), 1, 2)


@given(st.lists(rationals, min_size=8, max_size=8))
@settings(max_examples=100)
def test_row_space_preimage_roundtrip(fano_border, x):
    M = row_space_preimage(fano_border, 2, 9)
    assert vecmat(vecmat(x, fano_border), M) == x


def test_solve_affine():
    u0, basis = solve_affine([[1, 1, 0]], [2])
    assert u0[0] + u0[1] == 2
    assert len(basis) == 2
    for b in basis:
        assert b[0] + b[1] == 0
    assert solve_affine([[1, 1], [2, 2]], [1, 3]) is None


def test_matrix_format_roundtrip():
    text = "# comment\n2 3\n1/2 -3 0\n3/6 7 -2129/11221\n"
    m = parse_matrix(text)
    assert m[1, 0] == Fraction(1, 2)
    out = format_matrix(m)
    assert "3/6" not in out
    assert parse_matrix(out) == m


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=1, max_size=5))
def test_matrix_format_roundtrip_property(rows):
    m = RatMatrix(rows)
    assert parse_matrix(format_matrix(m, "c")) == m


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("2 2\n1 2\n3 x\n", 3, 3),
        ("2 2\n1 2\n3\n", 3, None),
        ("2 2\n1 2\n", 2, None),
        ("2\n1 2\n", 1, 1),
        ("1 2\n1 2/0\n", 2, 3),
    ],
)
def test_matrix_parse_errors(text, line, column):
    with pytest.raises(MatrixParseError) as e:
        parse_matrix(text)
    assert e.value.line == line
    assert e.value.column == column


def test_block_and_transpose():
    a = RatMatrix([[1, 2]])
    b = RatMatrix([[3]])
    m = RatMatrix.block([[a, b], [RatMatrix([[4, 5]]), RatMatrix([[6]])]])
    assert m.tolist() == [[1, 2, 3], [4, 5, 6]]
    assert m.T.T == m
    assert hash(m) == hash(RatMatrix([[1, 2, 3], [4, 5, 6]]))
