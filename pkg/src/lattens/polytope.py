"""Exact lattice polytope geometry in low dimensions.

Polytopes are stored by their integer vertex lists.  Lower-dimensional
polytopes keep exact affine-hull data: integer equalities cutting out the
affine hull, a lattice basis of the direction space (saturated, so reduced
coordinates of lattice points are integers), and pulled-back integer facet
inequalities that are valid relative to the affine hull.  This keeps face
and relative-interior computations exact in any dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd

from .linalg import (
    clear_denominators,
    integer_kernel,
    invert_matrix,
    kernel_basis,
    rational_row_space_equations,
    rref,
)

Point = tuple[int, ...]

MAX_AMBIENT_DIM = 6


def _dot(a, x) -> int:
    return sum(ai * xi for ai, xi in zip(a, x))


def _det(matrix: list[list[int]]) -> Fraction:
    """Exact determinant of a square matrix."""
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return det


class LatticePolytope:
    """Convex hull of finitely many integer points, canonicalized."""

    def __init__(self, points, ambient_dim: int | None = None):
        pts = [tuple(int(c) for c in p) for p in points]
        if pts:
            dims = {len(p) for p in pts}
            if len(dims) != 1:
                raise ValueError("points must share a common dimension")
            n = dims.pop()
            if ambient_dim is not None and ambient_dim != n:
                raise ValueError("ambient_dim does not match the points")
        else:
            if ambient_dim is None:
                raise ValueError("empty polytope needs an explicit ambient dimension")
            n = ambient_dim
        if n < 1 and pts:
            raise ValueError("ambient dimension must be at least 1")
        if n > MAX_AMBIENT_DIM:
            raise ValueError(f"ambient dimension capped at {MAX_AMBIENT_DIM}")
        self.ambient_dim = n

        pts = sorted(set(pts))
        if not pts:
            self.vertices: tuple[Point, ...] = ()
            self.dim = -1
            self.hull_equalities: tuple[tuple[Point, int], ...] = ()
            self.facet_inequalities: tuple[tuple[Point, int], ...] = ()
            self._basis: tuple[Point, ...] = ()
            self._reduce_matrix: tuple = ()
            return

        origin = pts[0]
        directions = [tuple(x - y for x, y in zip(p, origin)) for p in pts[1:]]
        directions = [d for d in directions if any(d)]
        if directions:
            eq_rows = rational_row_space_equations(directions)
            basis = integer_kernel(eq_rows, n) if eq_rows else [
                tuple(int(i == j) for j in range(n)) for i in range(n)
            ]
        else:
            eq_rows = [[int(i == j) for j in range(n)] for i in range(n)]
            basis = []
        m = len(basis)
        self.dim = m
        self._origin = origin
        self._basis = tuple(tuple(b) for b in basis)
        self.hull_equalities = tuple(
            (tuple(row), _dot(row, origin)) for row in eq_rows
        )

        # reduce_matrix R maps ambient offsets to reduced coordinates:
        # t = R (x - origin), with x = origin + sum t_j basis_j
        if m:
            bbt = [[Fraction(_dot(basis[i], basis[j])) for j in range(m)] for i in range(m)]
            inv = invert_matrix(bbt)
            self._reduce_matrix = tuple(
                tuple(sum(inv[i][k] * basis[k][j] for k in range(m)) for j in range(n))
                for i in range(m)
            )
        else:
            self._reduce_matrix = ()

        reduced = [self._reduce_point(p) for p in pts]
        facets_red = _facets_of_point_set(reduced, m)

        # a point is extreme iff its tight facet normals have full rank m
        vertex_flags = []
        for t in reduced:
            tight = [g for g, h in facets_red if _dot(g, t) == h]
            if m == 0:
                vertex_flags.append(True)
            else:
                _, pivots = rref([[Fraction(x) for x in g] for g in tight])
                vertex_flags.append(len(pivots) == m)
        self.vertices = tuple(p for p, keep in zip(pts, vertex_flags) if keep)

        self.facet_inequalities = tuple(
            self._pull_back_inequality(g, h) for g, h in sorted(facets_red)
        )

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def empty(ambient_dim: int) -> LatticePolytope:
        return LatticePolytope([], ambient_dim=ambient_dim)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def _reduce_point(self, p) -> tuple[int, ...]:
        diff = [p[j] - self._origin[j] for j in range(self.ambient_dim)]
        out = []
        for row in self._reduce_matrix:
            val = sum(row[j] * diff[j] for j in range(self.ambient_dim))
            if Fraction(val).denominator != 1:
                raise ValueError("point is not in the affine lattice of the polytope")
            out.append(int(val))
        return tuple(out)

    def _lift_point(self, t) -> Point:
        out = list(self._origin)
        for tj, b in zip(t, self._basis):
            for j in range(self.ambient_dim):
                out[j] += tj * b[j]
        return tuple(out)

    def _pull_back_inequality(self, g, h) -> tuple[Point, int]:
        # g . t <= h with t = R (x - origin) becomes (g R) x <= h + (g R) origin
        n = self.ambient_dim
        row = [sum(Fraction(g[i]) * self._reduce_matrix[i][j] for i in range(len(g))) for j in range(n)]
        rhs = Fraction(h) + sum(row[j] * self._origin[j] for j in range(n))
        ints = clear_denominators(row + [rhs])
        # clear_denominators may flip overall sign only via gcd (positive); keep orientation
        scale = None
        for a, b in zip(ints, row + [rhs]):
            if b != 0:
                scale = Fraction(a) / b
                break
        if scale is not None and scale < 0:
            ints = [-x for x in ints]
        return tuple(ints[:n]), ints[n]

    # -- membership ----------------------------------------------------------

    def contains(self, point) -> bool:
        p = tuple(point)
        return all(_dot(a, p) == b for a, b in self.hull_equalities) and all(
            _dot(a, p) <= b for a, b in self.facet_inequalities
        )

    def contains_relint(self, point) -> bool:
        p = tuple(point)
        return all(_dot(a, p) == b for a, b in self.hull_equalities) and all(
            _dot(a, p) < b for a, b in self.facet_inequalities
        )

    def bounding_box(self) -> tuple[Point, Point]:
        lo = tuple(min(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        hi = tuple(max(v[i] for v in self.vertices) for i in range(self.ambient_dim))
        return lo, hi

    # -- faces ----------------------------------------------------------------

    @cached_property
    def _face_list(self) -> tuple[LatticePolytope, ...]:
        if self.is_empty:
            return ()
        found: dict[tuple[Point, ...], LatticePolytope] = {self.vertices: self}
        stack = [self]
        while stack:
            poly = stack.pop()
            for a, b in poly.facet_inequalities:
                tight = [v for v in poly.vertices if _dot(a, v) == b]
                face = LatticePolytope(tight)
                if face.vertices not in found:
                    found[face.vertices] = face
                    stack.append(face)
        return tuple(sorted(found.values(), key=lambda f: (f.dim, f.vertices)))

    # -- dunder protocol -------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return (self.ambient_dim, self.vertices) == (other.ambient_dim, other.vertices)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.vertices))

    def __repr__(self) -> str:
        if self.is_empty:
            return f"LatticePolytope.empty({self.ambient_dim})"
        return f"LatticePolytope({list(map(list, self.vertices))})"


def _facets_of_point_set(points: list[tuple[int, ...]], m: int):
    """Supporting hyperplanes of conv(points) in full-dimensional coordinates.

    Candidates are the hyperplanes through affinely independent m-subsets;
    those valid for the whole point set are kept, deduplicated, as pairs
    (primitive integer normal g, offset h) with g . x <= h.
    """
    if m == 0:
        return []
    facets = set()
    for subset in combinations(points, m):
        base = subset[0]
        diffs = [[Fraction(x - y) for x, y in zip(p, base)] for p in subset[1:]]
        normals = kernel_basis(diffs, m)
        if len(normals) != 1:
            continue
        g = tuple(clear_denominators(normals[0]))
        h = _dot(g, base)
        values = [_dot(g, p) for p in points]
        if all(v <= h for v in values):
            facets.add((g, h))
        elif all(v >= h for v in values):
            facets.add((tuple(-x for x in g), -h))
    return sorted(facets)


# -- constructions -------------------------------------------------------------


def from_points(points, ambient_dim: int | None = None) -> LatticePolytope:
    """Convex hull of integer points, with hull-minimal canonical vertices."""
    return LatticePolytope(points, ambient_dim=ambient_dim)


def standard_simplex(k: int, n: int) -> LatticePolytope:
    """Simplex spanned by the origin and the first k basis vectors in R^n."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= ambient dimension")
    pts = [(0,) * n]
    for i in range(k):
        pts.append(tuple(int(j == i) for j in range(n)))
    return LatticePolytope(pts)


def dilate(p: LatticePolytope, k: int) -> LatticePolytope:
    if k < 0:
        raise ValueError("dilation factor must be non-negative")
    if p.is_empty:
        return p
    return LatticePolytope([tuple(k * c for c in v) for v in p.vertices])


def translate(p: LatticePolytope, y) -> LatticePolytope:
    if p.is_empty:
        return p
    y = tuple(int(c) for c in y)
    if len(y) != p.ambient_dim:
        raise ValueError("translation dimension mismatch")
    return LatticePolytope([tuple(a + b for a, b in zip(v, y)) for v in p.vertices])


def negate(p: LatticePolytope) -> LatticePolytope:
    if p.is_empty:
        return p
    return LatticePolytope([tuple(-c for c in v) for v in p.vertices])


def minkowski_sum(p: LatticePolytope, q: LatticePolytope) -> LatticePolytope:
    if p.ambient_dim != q.ambient_dim:
        raise ValueError("dimension mismatch in Minkowski sum")
    if p.is_empty or q.is_empty:
        return LatticePolytope.empty(p.ambient_dim)
    return LatticePolytope([tuple(a + b for a, b in zip(u, v)) for u in p.vertices for v in q.vertices])


@dataclass(frozen=True)
class UnimodularMap:
    """Affine lattice map x -> M x + t with det(M) = +1 exactly."""

    matrix: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.matrix)
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in row) for row in self.matrix))
        object.__setattr__(self, "translation", tuple(int(x) for x in self.translation))
        if any(len(row) != n for row in self.matrix) or len(self.translation) != n:
            raise ValueError("matrix must be square and match the translation")
        if _det([list(r) for r in self.matrix]) != 1:
            raise ValueError("unimodular map needs determinant exactly +1")

    @staticmethod
    def identity(n: int) -> UnimodularMap:
        return UnimodularMap(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), (0,) * n)

    @staticmethod
    def linear(matrix) -> UnimodularMap:
        return UnimodularMap(tuple(tuple(row) for row in matrix), (0,) * len(matrix))

    def apply(self, point) -> Point:
        n = len(self.matrix)
        return tuple(
            sum(self.matrix[i][j] * point[j] for j in range(n)) + self.translation[i] for i in range(n)
        )

    def inverse(self) -> UnimodularMap:
        inv = invert_matrix([[Fraction(x) for x in row] for row in self.matrix])
        m = tuple(tuple(int(x) for x in row) for row in inv)
        n = len(m)
        t = tuple(-sum(m[i][j] * self.translation[j] for j in range(n)) for i in range(n))
        return UnimodularMap(m, t)


def transform(p: LatticePolytope, phi: UnimodularMap) -> LatticePolytope:
    if p.is_empty:
        return p
    return LatticePolytope([phi.apply(v) for v in p.vertices])


def prism(p: LatticePolytope) -> LatticePolytope:
    """Minkowski sum with the unit segment in the last coordinate direction."""
    n = p.ambient_dim
    if any(v[-1] != 0 for v in p.vertices):
        raise ValueError("prism base must lie in the hyperplane x_n = 0")
    e_n = tuple(int(i == n - 1) for i in range(n))
    segment = LatticePolytope([(0,) * n, e_n])
    return minkowski_sum(p, segment)


def dissect_prism(n: int) -> list[LatticePolytope]:
    """Dissection of the prism over the standard (n-1)-simplex into n unimodular simplices."""
    if n < 2:
        raise ValueError("prism dissection needs dimension at least 2")

    def e(i: int) -> Point:  # e(0) is the origin
        return tuple(int(j == i - 1) for j in range(n)) if i >= 1 else (0,) * n

    def plus(a: Point, b: Point) -> Point:
        return tuple(x + y for x, y in zip(a, b))

    pieces = [standard_simplex(n, n)]
    for i in range(2, n + 1):
        verts = [plus(e(j), e(n)) for j in range(i)]
        verts += [e(j) for j in range(i - 1, n)]
        pieces.append(LatticePolytope(verts))
    return pieces


def faces(p: LatticePolytope) -> list[LatticePolytope]:
    """All non-empty faces of p, including p itself, sorted by dimension."""
    return list(p._face_list)


def random_unimodular(n: int, seed: int, steps: int) -> UnimodularMap:
    """Deterministic pseudo-random element of SL_n(Z) built from shears and even permutations."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    rng = random.Random(seed)
    mat = [[int(i == j) for j in range(n)] for i in range(n)]

    def matmul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]

    for _ in range(steps):
        if n >= 2 and (n < 3 or rng.random() < 0.7):
            j = rng.randrange(n)
            k = rng.randrange(n - 1)
            if k >= j:
                k += 1
            s = rng.choice((1, -1))
            shear = [[int(i == l) for l in range(n)] for i in range(n)]
            shear[j][k] = s
            mat = matmul(shear, mat)
        elif n >= 3:
            i, j, k = rng.sample(range(n), 3)
            perm = [[int(a == b) for b in range(n)] for a in range(n)]
            perm[i], perm[j], perm[k] = perm[j], perm[k], perm[i]
            mat = matmul(perm, mat)
    return UnimodularMap(tuple(tuple(row) for row in mat), (0,) * n)


# -- JSON ----------------------------------------------------------------------


def polytope_to_json_dict(p: LatticePolytope) -> dict:
    return {"vertices": [list(v) for v in p.vertices]}


def polytope_from_json_dict(data: dict, max_dim: int = MAX_AMBIENT_DIM) -> LatticePolytope:
    verts = data.get("vertices")
    if not isinstance(verts, list) or not verts:
        raise ValueError("polytope JSON needs a non-empty \"vertices\" list")
    for v in verts:
        if not isinstance(v, list) or not all(isinstance(c, int) for c in v):
            raise ValueError("vertices must be lists of integers")
    if len(verts[0]) > max_dim:
        raise ValueError(f"ambient dimension capped at {max_dim}")
    return LatticePolytope(verts)
