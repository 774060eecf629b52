from fractions import Fraction
import random

import pytest
from hypothesis import given, settings, strategies as st

from toroidlab.lattice import Lattice, named
from toroidlab.pointgroup import GroupElement, hyperoctahedral, t3343_generators
from toroidlab.toroid import (
    NotSublattice,
    NotTwoOrbit,
    TessellationMismatch,
    Toroid,
    are_isomorphic,
    canonical_form,
    check_chirality,
    lattice_orbit,
    stabilizer,
    tessellation,
    two_orbit_class,
)

CUBIC4 = tessellation("cubic", 4)
T3343 = tessellation("3343")
T3433 = tessellation("3433")


def orbits(t, name, s=1):
    return Toroid(t, named(name, t.n, s)).orbit_count


def apply_rows(rows, M):
    return [[sum(Fraction(r[i]) * M[i][j] for i in range(len(r))) for j in range(len(M[0]))] for r in rows]


def brute_stabilizer_order(L, mats):
    # oracle: count maps sending every basis vector back into L
    count = 0
    for M in mats:
        imgs = apply_rows(L.hnf, M)
        if all(all(x.denominator == 1 for x in v) and L.contains([int(x) for x in v]) for v in imgs):
            count += 1
    return count


@pytest.mark.parametrize("name,k", [
    ("cln", 1), ("fcln", 1), ("bcln", 1), ("lambda0", 2), ("lambda1", 2), ("l11xl11", 3),
])
def test_cubic_orbit_counts(name, k):
    for s in (1, 2, 3):
        assert orbits(CUBIC4, name, s) == k


def test_cubic_two_orbit_class():
    for name in ("lambda0", "lambda1"):
        T = Toroid(CUBIC4, named(name, 4))
        assert two_orbit_class(T) == frozenset({1, 2, 3})
        check_chirality(T)
    T6 = Toroid(tessellation("cubic", 6), named("lambda1", 6))
    assert T6.orbit_count == 2 and two_orbit_class(T6) == frozenset({1, 2, 3, 4, 5})
    with pytest.raises(NotTwoOrbit):
        two_orbit_class(Toroid(CUBIC4, named("cln", 4)))


def test_lambda0_lambda1_isomorphic():
    # the two sign lattices are swapped by a single sign change
    ok, g = are_isomorphic(Toroid(CUBIC4, named("lambda0", 4)), Toroid(CUBIC4, named("lambda1", 4)))
    assert ok
    assert named("lambda0", 4).transform(g) == named("lambda1", 4)


def test_stabilizer_against_brute_force():
    B = hyperoctahedral(4)
    mats = [[list(r) for r in g.num] for g in B.elements]
    for name in ("cln", "fcln", "lambda1", "l11xl11"):
        L = named(name, 4)
        assert stabilizer(CUBIC4, L).order == brute_stabilizer_order(L, mats)


def test_t3343_regular_examples():
    for name, s in (("bcln", 2), ("fcln", 2), ("bcln", 1)):
        assert orbits(T3343, name, s) == 1


def test_t3343_lambda1_is_three_orbit(symmetries_24cell):
    # the vertex lattice of {3,3,4,3} is BCLN in these coordinates, and the
    # tessellation symmetries are the 24-cell maps in the same frame
    L = named("lambda1", 4)
    assert named("bcln", 4).contains_lattice(L)
    assert brute_stabilizer_order(L, symmetries_24cell) == 384
    T = Toroid(T3343, L)
    assert T.stabilizer.order == 384 and T.orbit_count == 3
    # lambda1 is an image of 2 Z^4 under the group
    assert len(lattice_orbit(T3343, L)) == 3
    assert named("cln", 4, 2).hnf in lattice_orbit(T3343, L)


def test_t3343_lambda1_images_explicit():
    R1 = t3343_generators()[0]
    E1 = [[-1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
    two = [[2 * int(i == j) for j in range(4)] for i in range(4)]
    step = apply_rows(two, [list(r) for r in R1.matrix.rows])
    assert Lattice([[int(x) for x in r] for r in step]) == named("lambda0", 4)
    assert named("lambda0", 4).transform(E1) == named("lambda1", 4)


def test_dual_view_relabels():
    T = Toroid(T3433, named("lambda1", 4))
    assert T.orbit_count == Toroid(T3343, named("lambda1", 4)).orbit_count
    assert T3433.relabel(0) == 4 and T3343.relabel(0) == 0


def test_not_sublattice():
    with pytest.raises(NotSublattice):
        Toroid(T3343, named("cln", 4))
    with pytest.raises(NotSublattice):
        Toroid(CUBIC4, named("cln", 3))


def test_isomorphism_and_canonical_form():
    L = named("l11xl11", 4)
    g = hyperoctahedral(4).elements[17]
    M = L.transform(g)
    ok, w = are_isomorphic(Toroid(CUBIC4, L), Toroid(CUBIC4, M))
    assert ok and L.transform(w) == M
    assert canonical_form(Toroid(CUBIC4, L)) == canonical_form(Toroid(CUBIC4, M))
    assert not are_isomorphic(Toroid(CUBIC4, L), Toroid(CUBIC4, named("lambda1", 4)))[0]
    with pytest.raises(TessellationMismatch):
        are_isomorphic(Toroid(CUBIC4, named("cln", 4, 2)), Toroid(T3343, named("cln", 4, 2)))


def test_json_round_trip():
    T = Toroid(CUBIC4, named("lambda1", 4, 2))
    d = T.to_json()
    assert d["class2I"] == [1, 2, 3]
    assert Toroid.from_json(d).lattice == T.lattice


def random_lattice(rng, n):
    while True:
        rows = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        try:
            return Lattice(rows)
        except ValueError:
            continue


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 383))
def test_orbit_count_invariant_under_conjugation(seed, gi):
    rng = random.Random(seed)
    L = random_lattice(rng, 4)
    g = hyperoctahedral(4).elements[gi]
    assert Toroid(CUBIC4, L).orbit_count == Toroid(CUBIC4, L.transform(g)).orbit_count


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_scaling_preserves_orbit_count(seed, s):
    L = random_lattice(random.Random(seed), 4)
    assert Toroid(CUBIC4, L).orbit_count == Toroid(CUBIC4, L.scaled(s)).orbit_count


def test_chi_in_every_stabilizer():
    chi = GroupElement([[-int(i == j) for j in range(4)] for i in range(4)])
    rng = random.Random(5)
    for _ in range(50):
        L = random_lattice(rng, 4)
        assert stabilizer(CUBIC4, L).parent.element_index(chi) in stabilizer(CUBIC4, L)
