import random
from fractions import Fraction

import pytest

from lattens.classify import (
    ConstraintSystem,
    expected_survey_rank,
    in_span,
    kernel_basis,
    kernel_dim,
    planar_labels,
    planar_parity_rows,
    planar_relation_rows,
    planar_reduced_rows,
    planar_square_rows,
    planar_system,
    prism_maps,
    prism_relation_row,
    prism_system,
    rank,
)
from lattens.ehrhart import ehrhart_tensors
from lattens.polytope import standard_simplex
from lattens.tensor import multi_indices
from lattens.tri2d import valuation_n


def degree_one_vector(r):
    coeff = ehrhart_tensors(standard_simplex(2, 2), r).coefficient(1)
    return [coeff.coord(alpha) for alpha in planar_labels(r)]


def build(labels, rows):
    return ConstraintSystem.build(labels, [("row", row) for row in rows])


def test_rank_and_kernel_basics():
    labels = [(0, 1), (1, 0)]
    zero = ConstraintSystem.build(labels, [])
    assert rank(zero) == 0
    assert len(kernel_basis(zero)) == 2
    ident = build(labels, [{(0, 1): Fraction(1)}, {(1, 0): Fraction(1)}])
    assert rank(ident) == 2
    assert kernel_basis(ident) == []


def test_rank_plus_kernel_dim_is_unknown_count():
    rng = random.Random(5)
    labels = multi_indices(2, 4)
    for _ in range(10):
        rows = []
        for _ in range(rng.randint(1, 6)):
            rows.append({a: Fraction(rng.randint(-3, 3)) for a in labels if rng.random() < 0.6})
        system = build(labels, rows)
        assert rank(system) + len(kernel_basis(system)) == system.unknowns


def test_rank_independent_of_row_order():
    rng = random.Random(6)
    rows = planar_relation_rows(5) + planar_parity_rows(5, +1)
    base = build(planar_labels(5), rows)
    for _ in range(5):
        shuffled = rows[:]
        rng.shuffle(shuffled)
        assert rank(build(planar_labels(5), shuffled)) == rank(base)


@pytest.mark.parametrize("r", [3, 5, 7])
def test_planar_system_ranks(r):
    assert rank(planar_system(r, -1)) == r + 1
    plus = planar_system(r, +1)
    assert rank(plus) == r
    basis = kernel_basis(plus)
    assert len(basis) == 1
    assert in_span(basis, degree_one_vector(r))


def test_planar_generators_row_equivalent_for_even_parity():
    # both generators cut out the same space once the symmetric parity rows are added
    for r in (3, 5, 7):
        labels = planar_labels(r)
        relation = build(labels, planar_relation_rows(r) + planar_parity_rows(r, +1))
        reduced = build(labels, planar_reduced_rows(r) + planar_parity_rows(r, +1))
        union = build(
            labels, planar_relation_rows(r) + planar_reduced_rows(r) + planar_parity_rows(r, +1)
        )
        assert rank(relation) == rank(reduced) == rank(union) == r


def test_planar_generators_differ_for_odd_parity():
    # recorded drift: with antisymmetric parity rows the symbolic relation rows
    # reach rank r only, while the reduced transcription reaches r + 1
    for r in (3, 5, 7):
        labels = planar_labels(r)
        relation = build(labels, planar_relation_rows(r) + planar_parity_rows(r, -1))
        reduced = build(labels, planar_reduced_rows(r) + planar_parity_rows(r, -1))
        assert rank(relation) == r
        assert rank(reduced) == r + 1


def test_planar_rows_annihilate_known_valuations():
    for r in (3, 5, 7, 9):
        vec = dict(zip(planar_labels(r), degree_one_vector(r)))
        for row in planar_relation_rows(r) + planar_reduced_rows(r) + planar_parity_rows(r, +1):
            assert sum(c * vec[a] for a, c in row.items()) == 0, (r, row)
    nine = valuation_n(standard_simplex(2, 2))
    vec9 = {alpha: nine.coord(alpha) for alpha in planar_labels(9)}
    for row in planar_relation_rows(9) + planar_reduced_rows(9) + planar_parity_rows(9, +1):
        assert sum(c * vec9[a] for a, c in row.items()) == 0


@pytest.mark.parametrize("r", [2, 4, 6, 8])
def test_even_rank_square_relation_forces_zero(r):
    for parity in (+1, -1):
        labels = planar_labels(r)
        rows = [("relation", row) for row in planar_relation_rows(r)]
        rows += [("parity", row) for row in planar_parity_rows(r, parity)]
        rows += [("square", row) for row in planar_square_rows(r)]
        system = ConstraintSystem.build(labels, rows)
        assert kernel_dim(system) == 0


def test_square_rows_trivial_for_odd_rank():
    assert planar_square_rows(3) == []
    assert len(planar_square_rows(4)) == 5


def test_planar_system_validation():
    with pytest.raises(ValueError):
        planar_system(1, +1)
    with pytest.raises(ValueError):
        planar_parity_rows(3, 0)


def test_prism_maps_shape():
    maps = prism_maps(3)
    assert maps[0] == ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    # the map for the second piece sends e1 -> e1 - e3 and e3 -> e1
    m2 = maps[1]
    cols = [tuple(m2[i][j] for i in range(3)) for j in range(3)]
    assert cols[0] == (1, 0, -1)
    assert cols[2] == (1, 0, 0)


def test_prism_rows_annihilate_planar_valuation():
    # in the plane the dissection splits the unit square, so the coordinate
    # vector of the degree-1 expansion coefficient of T_2 is a solution
    for r in (3, 5, 7):
        vec = dict(zip(planar_labels(r), degree_one_vector(r)))
        for alpha in multi_indices(2, r):
            row = prism_relation_row(2, alpha)
            assert sum(c * vec[a] for a, c in row.items()) == 0, (r, alpha)


@pytest.mark.parametrize("n,r", [(3, 2), (3, 3), (4, 3), (4, 4)])
def test_prism_full_rank_at_low_rank(n, r):
    assert kernel_dim(prism_system(n, r, "all")) == 0


@pytest.mark.parametrize("r", [3, 5])
def test_prism_odd_filter_dimension_three(r):
    assert kernel_dim(prism_system(3, r, "en-odd")) == 0


@pytest.mark.parametrize("r", [2, 4])
def test_prism_even_filter_dimension_three(r):
    assert kernel_dim(prism_system(3, r, "en-even")) == 0


def test_prism_symmetry_folding_matches_explicit_rows():
    system = prism_system(3, 2, "all")
    explicit = ConstraintSystem.build(
        system.labels,
        [(tag, dict(row)) for tag, row in system.rows]
        + [("symmetry", row) for row in system.explicit_symmetry_rows()],
    )
    assert rank(system) == rank(explicit)
    folded = kernel_basis(system)
    plain = kernel_basis(explicit)
    assert len(folded) == len(plain)


def test_prism_system_validation():
    with pytest.raises(ValueError):
        prism_system(2, 3, "all")
    with pytest.raises(ValueError):
        prism_system(3, 1, "all")
    with pytest.raises(ValueError):
        prism_system(3, 3, "bogus")


def test_expected_survey_ranks():
    assert expected_survey_rank(9) == 8
    assert expected_survey_rank(15) == 13
    assert expected_survey_rank(21) is None


def test_in_span():
    basis = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]
    assert in_span(basis, [Fraction(2), Fraction(-3)])
    assert in_span([[Fraction(1), Fraction(1)]], [Fraction(2), Fraction(2)])
    assert not in_span([[Fraction(1), Fraction(1)]], [Fraction(1), Fraction(0)])
    assert in_span([], [Fraction(0), Fraction(0)])
