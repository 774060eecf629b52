from fractions import Fraction
from itertools import product

import pytest


def cell24_vertices():
    verts = set()
    for i in range(4):
        for s in (1, -1):
            verts.add(tuple(Fraction(s) if j == i else Fraction(0) for j in range(4)))
    for signs in product((1, -1), repeat=4):
        verts.add(tuple(Fraction(s, 2) for s in signs))
    return sorted(verts)


def cell24_symmetries():
    """Every orthogonal map of R^4 preserving the 24-cell, built from scratch."""
    verts = cell24_vertices()
    vset = set(verts)
    dot = lambda a, b: sum(x * y for x, y in zip(a, b))
    out = []

    def rec(rows):
        if len(rows) == 4:
            imgs = {tuple(sum(v[i] * rows[i][j] for i in range(4)) for j in range(4)) for v in verts}
            if imgs == vset:
                out.append(tuple(rows))
            return
        for v in verts:
            if all(dot(v, r) == 0 for r in rows):
                rec(rows + [v])

    rec([])
    return out


@pytest.fixture(scope="session")
def symmetries_24cell():
    return cell24_symmetries()
