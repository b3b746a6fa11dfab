import random
from itertools import product

from conftest import random_polytope
from lattens.points import count, count_relint, lattice_points, relint_lattice_points
from lattens.polytope import (
    LatticePolytope,
    dilate,
    faces,
    from_points,
    prism,
    random_unimodular,
    standard_simplex,
    transform,
    translate,
)


def brute_force_points(p):
    lo, hi = p.bounding_box()
    return [
        x
        for x in product(*(range(l, h + 1) for l, h in zip(lo, hi)))
        if p.contains(x)
    ]


def test_lattice_points_examples():
    t2 = standard_simplex(2, 2)
    assert lattice_points(t2) == [(0, 0), (0, 1), (1, 0)]
    assert count(dilate(t2, 4)) == 15
    assert lattice_points(from_points([(5, -3)])) == [(5, -3)]


def test_lattice_points_match_brute_force():
    rng = random.Random(3)
    for _ in range(12):
        p = random_polytope(rng, ambient=3, coord_bound=4)
        assert lattice_points(p) == sorted(brute_force_points(p))


def test_relint_examples():
    t2 = standard_simplex(2, 2)
    assert relint_lattice_points(t2) == []
    assert relint_lattice_points(dilate(t2, 3)) == [(1, 1)]
    assert count_relint(dilate(t2, 3)) == 1
    point = from_points([(2, 7)])
    assert relint_lattice_points(point) == [(2, 7)]
    seg = from_points([(0, 0), (2, 0)])
    assert relint_lattice_points(seg) == [(1, 0)]


def test_counts_examples():
    square = from_points([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert count(square) == 4
    cube = from_points([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])
    assert count(dilate(cube, 2)) == 27
    flat_t2 = from_points([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert count(prism(flat_t2)) == 6
    assert count(LatticePolytope.empty(3)) == 0
    assert count_relint(LatticePolytope.empty(3)) == 0


def test_valuation_property_on_constructed_unions():
    cases = [
        # (P, Q) with P u Q convex
        (from_points([(0, 0), (1, 0), (0, 1), (1, 1)]), from_points([(1, 0), (2, 0), (1, 1), (2, 1)])),
        (standard_simplex(2, 2), from_points([(1, 0), (0, 1), (1, 1)])),
        (from_points([(0, 0), (2, 0)]), from_points([(1, 0), (3, 0)])),
    ]
    unions = [
        from_points([(0, 0), (2, 0), (0, 1), (2, 1)]),
        from_points([(0, 0), (1, 0), (0, 1), (1, 1)]),
        from_points([(0, 0), (3, 0)]),
    ]
    inters = [
        from_points([(1, 0), (1, 1)]),
        from_points([(1, 0), (0, 1)]),
        from_points([(1, 0), (2, 0)]),
    ]
    for p, q, u, i in zip([c[0] for c in cases], [c[1] for c in cases], unions, inters):
        assert count(p) + count(q) == count(u) + count(i)


def test_face_sum_identity_for_interior_counts():
    rng = random.Random(9)
    polys = [random_polytope(rng, ambient=3, coord_bound=3) for _ in range(8)]
    polys.append(from_points([(0, 0), (4, 0)]))
    polys.append(standard_simplex(3, 3))
    for p in polys:
        face_sum = sum((-1) ** f.dim * count(f) for f in faces(p))
        assert count_relint(p) == (-1) ** p.dim * face_sum


def test_counts_invariant_under_lattice_symmetries():
    rng = random.Random(14)
    for seed in range(6):
        p = random_polytope(rng, ambient=3, coord_bound=3)
        phi = random_unimodular(3, seed=seed, steps=6)
        q = translate(transform(p, phi), (1, -2, 3))
        assert count(p) == count(q)
        assert count_relint(p) == count_relint(q)


def test_lex_order_is_deterministic():
    p = from_points([(0, 0), (2, 0), (0, 2), (2, 2)])
    pts = lattice_points(p)
    assert pts == sorted(pts)
    assert pts[0] == (0, 0) and pts[-1] == (2, 2)
