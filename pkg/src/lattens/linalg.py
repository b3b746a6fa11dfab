"""Exact linear algebra helpers: rational elimination, Bareiss rank, integer kernels."""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot column list)."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank_bareiss(rows: list[list[int]]) -> int:
    """Exact rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(row) for row in rows if any(row)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = 1
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][c]
        for i in range(rank + 1, len(m)):
            if not any(m[i][c:]):
                continue
            fi = m[i][c]
            for j in range(ncols):
                m[i][j] = (p * m[i][j] - fi * m[rank][j]) // prev
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def kernel_basis(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Canonical basis of the rational kernel {x : rows . x = 0}.

    One basis vector per free column, with value 1 there and the pivot
    entries read off the reduced row echelon form.
    """
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for i, p in enumerate(pivots):
            vec[p] = -red[i][free]
        basis.append(vec)
    return basis


def invert_matrix(m: list[list[Fraction]]) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red[:n]]


def clear_denominators(vec: list[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector (gcd 1, same ray)."""
    lcm = 1
    for q in vec:
        d = Fraction(q).denominator
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(q * lcm) for q in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def integer_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of the saturated lattice {z in Z^ncols : rows . z = 0}.

    Runs unimodular row reduction on the transpose augmented with the
    identity; the identity rows paired with zero rows of the reduced
    transpose form a lattice basis of the kernel.
    """
    nrows = len(rows)
    # work matrix: columns of the input become rows; augment with identity
    work = [[rows[i][v] for i in range(nrows)] + [int(i == v) for i in range(ncols)] for v in range(ncols)]

    row = 0
    for col in range(nrows):
        while True:
            nonzero = [i for i in range(row, ncols) if work[i][col] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: abs(work[i][col]))
            work[row], work[piv] = work[piv], work[row]
            done = True
            for i in range(row + 1, ncols):
                if work[i][col] != 0:
                    q = work[i][col] // work[row][col]
                    work[i] = [a - q * b for a, b in zip(work[i], work[row])]
                    if work[i][col] != 0:
                        done = False
            if done:
                row += 1
                break

    basis = []
    for i in range(row, ncols):
        if all(work[i][c] == 0 for c in range(nrows)):
            basis.append(work[i][nrows:])
    return basis


def rational_row_space_equations(rows: list[list]) -> list[list[int]]:
    """Integer equations cutting out the rational span of the given rows.

    Returns a basis (as primitive integer rows) of {c : rows . c = 0}; the
    span of the input rows equals {x : c . x = 0 for all returned c}.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    frac_rows = [[Fraction(x) for x in row] for row in rows]
    return [clear_denominators(v) for v in kernel_basis(frac_rows, ncols)]
