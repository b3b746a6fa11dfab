import random
from fractions import Fraction
from math import comb

import pytest

from conftest import random_point, random_polytope
from lattens.ehrhart import (
    CheckReport,
    check_equivariance,
    check_reciprocity,
    check_translation_covariance,
    discrete_moment,
    discrete_moment_relint,
    ehrhart_tensors,
    moment_tensor,
)
from lattens.points import count
from lattens.polytope import (
    LatticePolytope,
    UnimodularMap,
    dilate,
    from_points,
    minkowski_sum,
    random_unimodular,
    standard_simplex,
    translate,
)
from lattens.tensor import SymTensor


def unit_square():
    return from_points([(0, 0), (1, 0), (0, 1), (1, 1)])


def test_discrete_moment_examples():
    t2 = standard_simplex(2, 2)
    assert discrete_moment(t2, 1).coords == {(1, 0): 1, (0, 1): 1}
    assert discrete_moment(unit_square(), 2).coords == {(2, 0): 1, (1, 1): Fraction(1, 2), (0, 2): 1}
    origin = from_points([(0, 0)])
    for r in (1, 2, 3):
        assert discrete_moment(origin, r).is_zero
    assert discrete_moment(t2, 0).scalar_value() == 3
    assert discrete_moment(LatticePolytope.empty(2), 2).is_zero


def test_discrete_moment_relint_examples():
    t2 = standard_simplex(2, 2)
    for r in (0, 1, 2):
        assert discrete_moment_relint(t2, r).is_zero
    assert discrete_moment_relint(dilate(t2, 3), 1).coords == {(1, 0): 1, (0, 1): 1}
    seg = from_points([(0, 0), (2, 0)])
    assert discrete_moment_relint(seg, 2).coords == {(2, 0): Fraction(1, 2)}


def test_moment_tensor_examples():
    sq = unit_square()
    assert moment_tensor(sq, 0).scalar_value() == 1
    assert moment_tensor(sq, 1).coords == {(1, 0): Fraction(1, 2), (0, 1): Fraction(1, 2)}
    t2 = standard_simplex(2, 2)
    assert moment_tensor(t2, 2).coords == {
        (2, 0): Fraction(1, 24),
        (1, 1): Fraction(1, 48),
        (0, 2): Fraction(1, 24),
    }
    with pytest.raises(ValueError):
        moment_tensor(from_points([(0, 0), (1, 0)]), 1)


def test_ehrhart_scalar_example():
    exp = ehrhart_tensors(standard_simplex(2, 2), 0)
    values = [c.scalar_value() for c in exp.coefficients]
    assert values == [1, Fraction(3, 2), Fraction(1, 2)]


def test_ehrhart_interval_example():
    exp = ehrhart_tensors(standard_simplex(1, 1), 1)
    assert exp.coefficient(1).coord((1,)) == Fraction(1, 2)


def test_ehrhart_degree_one_cubic_value():
    exp = ehrhart_tensors(standard_simplex(2, 2), 3)
    assert exp.coefficient(1).coord((3, 0)) == Fraction(1, 180)


def test_expansion_reproduces_dilation_values_beyond_nodes():
    rng = random.Random(7)
    for _ in range(5):
        p = random_polytope(rng, ambient=2, coord_bound=3)
        r = rng.choice([1, 2, 3])
        exp = ehrhart_tensors(p, r)
        for k in range(p.ambient_dim + r + 4):
            assert exp.evaluate_at(k) == discrete_moment(dilate(p, k), r), (p.vertices, r, k)
    p = standard_simplex(2, 2)
    exp = ehrhart_tensors(p, 4)
    for k in range(10):
        assert exp.evaluate_at(k) == discrete_moment(dilate(p, k), 4)


def test_constant_coefficient_vanishes_for_positive_rank():
    rng = random.Random(8)
    for _ in range(5):
        p = random_polytope(rng, ambient=2, coord_bound=3)
        for r in (1, 2, 3):
            assert ehrhart_tensors(p, r).coefficient(0).is_zero
    assert ehrhart_tensors(standard_simplex(2, 2), 0).coefficient(0).scalar_value() == 1


def test_tail_coefficients_vanish_for_lower_dimensional_polytopes():
    seg = from_points([(0, 0, 0), (2, 1, 0)])  # dim 1 in ambient 3
    for r in (1, 2):
        exp = ehrhart_tensors(seg, r)
        for i in range(seg.dim + 1, 4):  # dim(P) < i <= n
            assert exp.coefficient(i + r).is_zero, (r, i)


def test_leading_coefficient_is_moment_tensor():
    rng = random.Random(10)
    for _ in range(6):
        p = random_polytope(rng, ambient=2, coord_bound=3, dim=2)
        r = rng.choice([0, 1, 2])
        exp = ehrhart_tensors(p, r)
        assert exp.coefficient(p.ambient_dim + r) == moment_tensor(p, r)


def test_degree_one_coefficient_translation_invariant():
    rng = random.Random(12)
    for _ in range(5):
        p = random_polytope(rng, ambient=2, coord_bound=3)
        y = random_point(rng, 2)
        for r in (2, 3):
            a = ehrhart_tensors(p, r).coefficient(1)
            b = ehrhart_tensors(translate(p, y), r).coefficient(1)
            assert a == b


def test_degree_one_coefficient_minkowski_additive():
    rng = random.Random(15)
    for _ in range(4):
        p = random_polytope(rng, ambient=2, coord_bound=2)
        q = random_polytope(rng, ambient=2, coord_bound=2)
        for r in (2, 3):
            lhs = ehrhart_tensors(minkowski_sum(p, q), r).coefficient(1)
            rhs = ehrhart_tensors(p, r).coefficient(1) + ehrhart_tensors(q, r).coefficient(1)
            assert lhs == rhs


def test_scalar_counts_match_binomials():
    for n in (1, 2, 3):
        exp = ehrhart_tensors(standard_simplex(n, n), 0)
        for k in range(6):
            value = exp.evaluate_at(k).scalar_value()
            assert value == comb(n + k, n)
            assert value == count(dilate(standard_simplex(n, n), k))


def slab_decomposition():
    # trapezoid cut by two vertical lines: all four pieces are lattice polygons,
    # the union is the whole trapezoid and the intersection slab is full-dimensional
    whole = from_points([(0, 0), (5, 0), (5, 1), (0, 6)])
    left = from_points([(0, 0), (3, 0), (3, 3), (0, 6)])
    right = from_points([(2, 0), (5, 0), (5, 1), (2, 4)])
    overlap = from_points([(2, 0), (3, 0), (3, 3), (2, 4)])
    return whole, left, right, overlap


def test_expansion_coefficients_are_valuations():
    whole, left, right, overlap = slab_decomposition()
    for r in (0, 1, 2):
        lhs = ehrhart_tensors(left, r)
        rhs = ehrhart_tensors(right, r)
        union = ehrhart_tensors(whole, r)
        inter = ehrhart_tensors(overlap, r)
        for i in range(2 + r + 1):
            assert lhs.coefficient(i) + rhs.coefficient(i) == union.coefficient(i) + inter.coefficient(i), (r, i)
    # lower-dimensional intersection instance
    p = from_points([(0, 0), (2, 0), (0, 2)])
    q = from_points([(2, 0), (0, 2), (2, 2)])
    union = from_points([(0, 0), (2, 0), (0, 2), (2, 2)])
    inter = from_points([(2, 0), (0, 2)])
    for r in (0, 1, 2):
        for i in range(2 + r + 1):
            lhs = ehrhart_tensors(p, r).coefficient(i) + ehrhart_tensors(q, r).coefficient(i)
            rhs = ehrhart_tensors(union, r).coefficient(i) + ehrhart_tensors(inter, r).coefficient(i)
            assert lhs == rhs, (r, i)


def test_expansion_extrapolates_in_dimension_three():
    p = from_points([(0, 0, 0), (2, 0, 0), (0, 2, 0), (1, 1, 2)])
    for r in (1, 2):
        exp = ehrhart_tensors(p, r)
        for k in range(3 + r + 4):
            assert exp.evaluate_at(k) == discrete_moment(dilate(p, k), r), (r, k)


def test_check_reciprocity_examples():
    t2 = standard_simplex(2, 2)
    assert check_reciprocity(t2, 0).ok
    assert check_reciprocity(dilate(t2, 3), 0).ok
    assert check_reciprocity(t2, 1).ok
    # spot check the r=0 alternating sum by hand: 1 - 3/2 + 1/2 = 0 interior points
    exp = ehrhart_tensors(t2, 0)
    alternating = sum((-1) ** i * c.scalar_value() for i, c in enumerate(exp.coefficients))
    assert alternating == 0


def test_check_reciprocity_on_lower_dimensional_instances():
    seg = from_points([(1, 1), (4, 1)])
    for r in (0, 1, 2):
        assert check_reciprocity(seg, r).ok
    point = from_points([(2, -1)])
    for r in (0, 1, 2):
        assert check_reciprocity(point, r).ok


def test_check_translation_covariance_examples():
    t2 = standard_simplex(2, 2)
    assert check_translation_covariance(t2, 2, (0, 0)).ok
    assert check_translation_covariance(t2, 0, (2, -1)).ok
    assert check_translation_covariance(t2, 2, (1, 1)).ok


def test_check_equivariance_examples():
    t2 = standard_simplex(2, 2)
    assert check_equivariance(t2, 2, [[1, 0], [0, 1]]).ok
    assert check_equivariance(t2, 2, [[1, 1], [0, 1]]).ok
    phi = random_unimodular(2, seed=3, steps=5)
    assert check_equivariance(t2, 3, phi).ok
    with pytest.raises(ValueError):
        check_equivariance(t2, 2, UnimodularMap(((1, 0), (0, 1)), (1, 0)))


def test_lower_dimensional_coordinates_vanish():
    # for a polytope in the span of e1, coordinates touching e2 vanish,
    # both for the moment tensor and for every expansion coefficient
    seg = from_points([(0, 0), (3, 0)])
    for r in (1, 2, 3):
        t = discrete_moment(seg, r)
        assert all(alpha[1] == 0 for alpha in t.coords)
        exp = ehrhart_tensors(seg, r)
        for coeff in exp.coefficients:
            assert all(alpha[1] == 0 for alpha in coeff.coords)


def test_check_report_failure_surface():
    report = CheckReport("demo", False, ["x"])
    assert not report
    assert report.to_json_dict() == {"check": "demo", "pass": False, "failures": ["x"]}
    good = SymTensor(2, 1, {(1, 0): 1})
    bad = SymTensor(2, 1, {(1, 0): 2})
    from lattens.ehrhart import _compare

    failures = []
    _compare("unit", good, bad, failures)
    assert failures and "(1, 0)" in failures[0]
