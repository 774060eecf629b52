from fractions import Fraction
from itertools import product
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from toroidlab.exact import DimensionMismatch, SingularBasis
from toroidlab.lattice import (
    BoundTooLarge,
    Lattice,
    NonIntegralImage,
    NotReflectionInvariant,
    count_sublattices,
    enumerate_sublattices,
    index_in,
    is_invariant,
    layer_decompose,
    named,
    parse_lattice_spec,
    total_sublattices,
)


def factorize(m):
    out, p = {}, 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def gaussian_binomial(a, b, q):
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def oracle_count(n, m):
    # index p^k sublattices of Z^n are counted by the q-binomial [n+k-1, n-1]_p
    out = 1
    for p, k in factorize(m).items():
        out *= gaussian_binomial(n + k - 1, n - 1, p)
    return out


def sign_matrix(n, axis):
    return [[(-1 if i == axis else 1) if i == j else 0 for j in range(n)] for i in range(n)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_count_matches_q_binomial(n):
    for m in range(1, 13):
        assert count_sublattices(n, m) == oracle_count(n, m)


def test_enumeration_matches_count():
    for n, top in ((2, 12), (3, 8)):
        got = list(enumerate_sublattices(n, top))
        assert len(got) == total_sublattices(n, top)
        assert len({L.hnf for L in got}) == len(got)
        for m in range(1, top + 1):
            assert sum(L.index == m for L in got) == count_sublattices(n, m)


def test_sign_pruning_equals_filtering():
    n, top = 3, 16
    masks = (0b011, 0b110)
    pruned = {L.hnf for L in enumerate_sublattices(n, top, sign_masks=masks)}
    mats = [[[(-1 if (mk >> i) & 1 else 1) if i == j else 0 for j in range(n)] for i in range(n)] for mk in masks]
    filtered = {L.hnf for L in enumerate_sublattices(n, top) if all(L.is_invariant(M) for M in mats)}
    assert pruned == filtered


def test_ambient_enumeration():
    B = named("bcln", 3)
    got = list(enumerate_sublattices(3, 4, ambient=B))
    assert all(B.contains_lattice(L) for L in got)
    assert len(got) == total_sublattices(3, 4)
    assert {index_in(L, B) for L in got} == {1, 2, 3, 4}


def test_cap():
    with pytest.raises(BoundTooLarge):
        list(enumerate_sublattices(6, 10**6))


def test_named_lattices():
    n = 4
    assert named("cln", n).index == 1
    assert named("fcln", n).index == 2
    assert named("bcln", n).index == 8
    assert named("lambda0", n).index == 16
    assert named("lambda1", n).index == 16
    assert named("lambda0", n) != named("lambda1", n)
    assert named("l11xl11", 4).index == 4
    assert parse_lattice_spec("lambda1@2", 4) == named("lambda1", 4).scaled(2)
    assert named("fcln", n).contains((1, 1, 0, 0)) and not named("fcln", n).contains((1, 0, 0, 0))
    with pytest.raises(ValueError):
        named("nope", 4)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_sign_lattice_chain(n):
    # 4s CLN < 2s FCLN < s(lambda0 & lambda1), and both contain every 2(e_j + e_k)
    for s in (1, 2):
        c, f = named("cln", n, 4 * s), named("fcln", n, 2 * s)
        l0, l1 = named("lambda0", n, s), named("lambda1", n, s)
        assert f.contains_lattice(c)
        assert l0.contains_lattice(f) and l1.contains_lattice(f)


def test_even_n_sign_lattices_distinct_and_odd_n_coincide():
    assert named("lambda0", 6) != named("lambda1", 6)
    assert named("lambda0", 5) == named("lambda1", 5) == named("bcln", 5)


def test_lattice_json_and_errors():
    L = Lattice([[2, 0, 0], [1, 1, 0], [0, 0, 3]])
    assert Lattice.from_json(L.to_json()) == L
    assert L.to_json()["index"] == 6
    with pytest.raises(SingularBasis):
        Lattice([[1, 0], [2, 0]])
    with pytest.raises(DimensionMismatch):
        L.contains((1, 2))


def test_transform():
    L = named("fcln", 4)
    with pytest.raises(NonIntegralImage):
        named("cln", 4).transform([[Fraction(1, 2), 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    swap = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    assert L.transform(swap) == L
    assert is_invariant(L, swap)


lattices = st.integers(2, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)
)


def reflection_closure(rows, axis):
    n = len(rows)
    return rows + [[(-x if j == axis else x) for j, x in enumerate(r)] for r in rows], n


@settings(max_examples=150, deadline=None)
@given(lattices, st.data())
def test_layer_reconstruction(rows, data):
    n = len(rows)
    axis = data.draw(st.integers(1, n))
    gens, _ = reflection_closure(rows, axis - 1)
    try:
        L = Lattice(gens, n)
    except SingularBasis:
        return
    dec = layer_decompose(L, axis)
    a = axis - 1
    # d is the least positive coordinate along the axis, i.e. the gcd of that column
    assert dec.d == gcd(*(r[a] for r in L.hnf))
    for v in product(range(-4, 5), repeat=n):
        assert dec.contains(v) == L.contains(v)
    for r in dec.lambda0_basis():
        assert r[a] == 0 and L.contains(r)
    w2 = [2 * x for x in dec.w]
    assert all(Fraction(x).denominator == 1 for x in w2)
    if dec.is_vertical:
        assert dec.u == dec.w
    else:
        assert any(dec.alphas)


def test_layer_examples():
    d = layer_decompose(named("cln", 4), 4)
    assert d.is_vertical and d.w == (0, 0, 0, 1)
    d = layer_decompose(named("fcln", 4), 4)
    assert not d.is_vertical and d.u == (0, 0, 0, 2) and d.w == (1, 0, 0, 1) and d.alphas == (1, 0, 0)
    d = layer_decompose(named("bcln", 4), 4)
    assert d.lambda0 == named("cln", 3, 2) and d.w == (1, 1, 1, 1) and d.alphas == (1, 1, 1)
    with pytest.raises(NotReflectionInvariant):
        layer_decompose(Lattice([[1, 1], [0, 3]]), 1)
    with pytest.raises(DimensionMismatch):
        layer_decompose(named("cln", 3), 4)


def test_sign_matrix_helper():
    assert is_invariant(named("lambda1", 4), sign_matrix(4, 0)) is False
