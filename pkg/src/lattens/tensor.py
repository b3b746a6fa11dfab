"""Symmetric tensor algebra over the rationals.

A rank-r symmetric tensor on R^n is stored sparsely as a map from
multi-indices to rational coordinates, where the multi-index
alpha = (a_1, ..., a_n) labels the coordinate T(e_1[a_1], ..., e_n[a_n])
(basis vector e_i repeated a_i times, |alpha| = r).  Rank-0 tensors are
scalars with the single multi-index (0, ..., 0).

The bridge to polynomial arithmetic: identifying T with its diagonal
polynomial p_T(u) = T(u, ..., u), the coefficient of u^alpha in p_T equals
multinomial(r; alpha) * T_alpha, and the diagonal polynomial of a symmetric
product is the product of the diagonal polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import format_rational, multinomial, parse_rational

MultiIndex = tuple[int, ...]
Vector = Sequence


def multi_indices(dim: int, rank: int) -> list[MultiIndex]:
    """All exponent vectors of length dim summing to rank, in lex order."""
    if dim == 0:
        return [()] if rank == 0 else []
    out: list[MultiIndex] = []

    def rec(prefix: list[int], remaining: int) -> None:
        if len(prefix) == dim - 1:
            out.append(tuple(prefix) + (remaining,))
            return
        for v in range(remaining + 1):
            rec(prefix + [v], remaining - v)

    rec([], rank)
    out.sort()
    return out


@dataclass(frozen=True)
class SymTensor:
    """Immutable symmetric tensor; absent coordinates are zero."""

    dim: int
    rank: int
    coords: Mapping[MultiIndex, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for alpha, value in self.coords.items():
            alpha = tuple(alpha)
            if len(alpha) != self.dim or sum(alpha) != self.rank or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for dim {self.dim} rank {self.rank}")
            value = Fraction(value)
            if value != 0:
                clean[alpha] = value
        object.__setattr__(self, "coords", clean)

    @staticmethod
    def zero(dim: int, rank: int) -> SymTensor:
        return SymTensor(dim, rank, {})

    @staticmethod
    def scalar(dim: int, value) -> SymTensor:
        return SymTensor(dim, 0, {(0,) * dim: Fraction(value)})

    def coord(self, alpha: MultiIndex) -> Fraction:
        return self.coords.get(tuple(alpha), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def scalar_value(self) -> Fraction:
        if self.rank != 0:
            raise ValueError("not a rank-0 tensor")
        return self.coord((0,) * self.dim)

    def __add__(self, other: SymTensor) -> SymTensor:
        self._check_same_space(other)
        out = dict(self.coords)
        for alpha, value in other.coords.items():
            out[alpha] = out.get(alpha, Fraction(0)) + value
        return SymTensor(self.dim, self.rank, out)

    def __sub__(self, other: SymTensor) -> SymTensor:
        return self + (-other)

    def __neg__(self) -> SymTensor:
        return SymTensor(self.dim, self.rank, {a: -v for a, v in self.coords.items()})

    def __mul__(self, scalar) -> SymTensor:
        s = Fraction(scalar)
        return SymTensor(self.dim, self.rank, {a: v * s for a, v in self.coords.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> SymTensor:
        return self * (Fraction(1) / Fraction(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymTensor):
            return NotImplemented
        return (self.dim, self.rank, dict(self.coords)) == (other.dim, other.rank, dict(other.coords))

    def __hash__(self) -> int:
        return hash((self.dim, self.rank, tuple(sorted(self.coords.items()))))

    def _check_same_space(self, other: SymTensor) -> None:
        if self.dim != other.dim or self.rank != other.rank:
            raise ValueError("tensors live in different spaces")

    def to_json_dict(self) -> dict:
        coords = {
            ",".join(map(str, alpha)): format_rational(value)
            for alpha, value in sorted(self.coords.items())
        }
        return {"dim": self.dim, "rank": self.rank, "coords": coords}

    @staticmethod
    def from_json_dict(data: dict) -> SymTensor:
        coords = {
            tuple(int(part) for part in key.split(",")): parse_rational(value)
            for key, value in data.get("coords", {}).items()
        }
        return SymTensor(int(data["dim"]), int(data["rank"]), coords)


def sym_power(v: Vector, r: int) -> SymTensor:
    """r-fold symmetric power of a vector: (v^r)_alpha = prod v_i^alpha_i."""
    if r < 0:
        raise ValueError("rank must be non-negative")
    n = len(v)
    if r == 0:
        return SymTensor.scalar(n, 1)
    coords = {}
    for alpha in multi_indices(n, r):
        prod = Fraction(1)
        for vi, ai in zip(v, alpha):
            if ai:
                prod *= Fraction(vi) ** ai
        coords[alpha] = prod
    return SymTensor(n, r, coords)


def _diagonal_poly(t: SymTensor) -> dict[MultiIndex, Fraction]:
    return {a: v * multinomial(t.rank, a) for a, v in t.coords.items()}


def _poly_mul(p: dict, q: dict) -> dict:
    out: dict[MultiIndex, Fraction] = {}
    for a, u in p.items():
        for b, w in q.items():
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = out.get(key, Fraction(0)) + u * w
    return out


def sym_product(a: SymTensor, b: SymTensor) -> SymTensor:
    """Symmetric (permutation-averaged) tensor product of rank p+q."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch in symmetric product")
    rank = a.rank + b.rank
    prod = _poly_mul(_diagonal_poly(a), _diagonal_poly(b))
    coords = {alpha: c / multinomial(rank, alpha) for alpha, c in prod.items()}
    return SymTensor(a.dim, rank, coords)


def coordinate_row(vectors: Sequence[Vector], dim: int) -> dict[MultiIndex, Fraction]:
    """Linear functional L with T(v_1, ..., v_r) = sum_alpha L[alpha] * T_alpha.

    Expands the product of the linear forms z -> v_j . z; the coefficient of
    z^alpha is the weight of the coordinate T_alpha in the multilinear
    expansion of T at the given vectors.
    """
    row: dict[MultiIndex, Fraction] = {(0,) * dim: Fraction(1)}
    for v in vectors:
        if len(v) != dim:
            raise ValueError("vector dimension mismatch")
        new: dict[MultiIndex, Fraction] = {}
        for mono, c in row.items():
            for i in range(dim):
                if v[i]:
                    key = mono[:i] + (mono[i] + 1,) + mono[i + 1 :]
                    new[key] = new.get(key, Fraction(0)) + c * Fraction(v[i])
        row = new
    return {k: v for k, v in row.items() if v != 0}


def evaluate(t: SymTensor, vectors: Sequence[Vector]) -> Fraction:
    """Multilinear evaluation T(v_1, ..., v_r)."""
    if len(vectors) != t.rank:
        raise ValueError(f"expected {t.rank} vectors, got {len(vectors)}")
    row = coordinate_row(vectors, t.dim)
    return sum((c * t.coord(alpha) for alpha, c in row.items()), Fraction(0))


def apply_linear(t: SymTensor, matrix: Sequence[Sequence[int]]) -> SymTensor:
    """Precompose with the transpose of an integer matrix: (T o M^t).

    Result coordinates are the multilinear expansion of
    T(M^t e_1 [a_1], ..., M^t e_n [a_n]); for powers this means
    apply_linear(sym_power(x, r), M) == sym_power(M x, r).
    """
    n = t.dim
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise ValueError("matrix dimension mismatch")
    if t.rank == 0:
        return t
    # M^t e_j is row j of M
    coords = {}
    for beta in multi_indices(n, t.rank):
        vectors = []
        for j in range(n):
            vectors.extend([matrix[j]] * beta[j])
        row = coordinate_row(vectors, n)
        coords[beta] = sum((c * t.coord(alpha) for alpha, c in row.items()), Fraction(0))
    return SymTensor(n, t.rank, coords)
