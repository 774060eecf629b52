from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from toroidlab.exact import (
    DimensionMismatch,
    Matrix,
    NonIntegral,
    SingularBasis,
    contains_int,
    det,
    hnf,
    hnf_rows,
    int_det,
    scalar,
    solve_integer,
    xgcd,
)


def cofactor_det(rows):
    # independent oracle: Laplace expansion along the first row
    if len(rows) == 1:
        return rows[0][0]
    total = 0
    for j, x in enumerate(rows[0]):
        if x:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * x * cofactor_det(minor)
    return total


def is_hnf(H):
    n = len(H)
    for i in range(n):
        if H[i][i] <= 0:
            return False
        for j in range(i + 1, n):
            if H[i][j] != 0:
                return False
        for k in range(i + 1, n):
            if not 0 <= H[k][i] < H[i][i]:
                return False
    return True


square = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=n, max_size=n)
)


def test_scalar_normalises():
    assert scalar(Fraction(4, 2)) == 2 and type(scalar(Fraction(4, 2))) is int
    assert scalar([1, 2]) == Fraction(1, 2)
    assert scalar("3/6") == Fraction(1, 2)


def test_matrix_ops():
    A = Matrix([[1, 2], [3, 4]])
    assert (A @ Matrix.identity(2)) == A
    assert A.T.rows == ((1, 3), (2, 4))
    assert A.apply((1, 1)) == (4, 6)
    assert det(A) == -2
    half = Matrix([[Fraction(1, 2), 0], [0, 1]])
    assert half.denominator() == 2 and not half.is_integral()
    assert Matrix.from_json(half.to_json()) == half


@settings(max_examples=200, deadline=None)
@given(square)
def test_det_matches_cofactor(rows):
    want = cofactor_det(rows)
    assert int_det(rows) == want
    assert det(rows) == want


def test_xgcd():
    for a, b in product(range(-12, 13), repeat=2):
        x, y, g = xgcd(a, b)
        assert a * x + b * y == g
        assert g >= 0 and (g == 0 or (a % g == 0 and b % g == 0))


@settings(max_examples=300, deadline=None)
@given(square)
def test_hnf_properties(rows):
    if cofactor_det(rows) == 0:
        with pytest.raises(SingularBasis):
            hnf(Matrix(rows))
        return
    H, U = hnf(Matrix(rows))
    Hi = H.int_rows()
    assert is_hnf(Hi)
    assert abs(int_det(U.int_rows())) == 1
    assert U @ Matrix(rows) == H
    assert hnf_rows(Hi) == Hi  # idempotent
    assert hnf_rows(rows) == Hi
    # every generator lies in the HNF lattice
    for r in rows:
        assert solve_integer(Hi, r) is not None


@settings(max_examples=200, deadline=None)
@given(square, st.data())
def test_hnf_invariant_under_unimodular_change(rows, data):
    if cofactor_det(rows) == 0:
        return
    n = len(rows)
    # random elementary row operations keep the lattice
    work = [list(r) for r in rows]
    for _ in range(data.draw(st.integers(0, 8))):
        i = data.draw(st.integers(0, n - 1))
        j = data.draw(st.integers(0, n - 1))
        if i == j:
            work[i] = [-x for x in work[i]]
        else:
            k = data.draw(st.integers(-3, 3))
            work[i] = [a + k * b for a, b in zip(work[i], work[j])]
    assert hnf_rows(work) == hnf_rows(rows)


def brute_member(rows, v, box=6):
    n = len(rows)
    for c in product(range(-box, box + 1), repeat=n):
        if all(sum(c[i] * rows[i][j] for i in range(n)) == v[j] for j in range(n)):
            return True
    return False


@pytest.mark.parametrize("rows", [
    [[2, 0], [1, 3]],
    [[1, 1], [1, -1]],
    [[2, 0, 0], [0, 2, 0], [1, 1, 1]],
])
def test_membership_against_brute_force(rows):
    H = hnf_rows(rows)
    n = len(rows)
    for v in product(range(-3, 4), repeat=n):
        assert contains_int(H, v) == brute_member(rows, v)


def test_generating_set_and_errors():
    assert hnf_rows([[2, 0], [0, 2], [1, 1]]) == ((2, 0), (1, 1))
    with pytest.raises(SingularBasis):
        hnf_rows([[1, 1], [2, 2]])
    with pytest.raises(DimensionMismatch):
        hnf_rows([[1, 0], [0, 1, 0]])
    with pytest.raises(NonIntegral):
        hnf(Matrix([[Fraction(1, 3), 0], [0, 1]]))


def test_half_integral_hnf():
    H, _ = hnf(Matrix([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(-1, 2)]]))
    assert H.rows == ((1, 0), (Fraction(1, 2), Fraction(1, 2)))
