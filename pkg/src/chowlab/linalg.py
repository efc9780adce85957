"""Small exact linear algebra over the rationals and the integers.

Everything here works on plain lists/tuples of ``Fraction`` (or ``int``);
matrices are lists of rows. Sizes are tiny, so clarity wins over speed.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

Vector = tuple[Fraction, ...]


def rat(x) -> Fraction:
    """Coerce an int, Fraction, or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as an exact rational")


def vec(xs) -> Vector:
    return tuple(rat(x) for x in xs)


def sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [[rat(x) for x in r] for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : rows . x = 0}."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> Vector | None:
    """Some solution of ``a x = b`` (free variables set to 0), or None."""
    ncols = len(a[0])
    aug = [list(r) + [rat(bi)] for r, bi in zip(a, b)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[-1]
    return tuple(x)


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[rat(x) for x in r] for r in m]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return sign * result


def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


def independent_subset(vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a greedily chosen maximal linearly independent subset."""
    chosen: list[int] = []
    rows: list = []
    for i, v in enumerate(vectors):
        if rank(rows + [v]) > len(rows):
            rows.append(v)
            chosen.append(i)
    return chosen


def minors_gcd(vectors: Sequence[Sequence[int]]) -> int:
    """gcd of the maximal nonzero minors of an integer generating set.

    For generators of a lattice L of rank r this is the index of L in its
    saturation (L tensor Q) intersected with Z^k.
    """
    vs = [tuple(int(x) for x in v) for v in vectors]
    r = rank(vs)
    if r == 0:
        return 1
    k = len(vs[0])
    g = 0
    for rows in combinations(range(len(vs)), r):
        for cols in combinations(range(k), r):
            d = det([[vs[i][j] for j in cols] for i in rows])
            g = gcd(g, int(d))
    return g


def lattice_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Echelon basis of the Z-span of integer vectors (integer row reduction)."""
    rows = [list(int(x) for x in v) for v in vectors if any(v)]
    if not rows:
        return []
    ncols = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while rows and col < ncols:
        rows = [r for r in rows if any(r)]
        nz = [r for r in rows if r[col] != 0]
        if not nz:
            col += 1
            continue
        # Euclid on column `col` until a single row carries a nonzero entry.
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                for j in range(ncols):
                    r[j] -= q * piv[j]
            nz = [r for r in nz if r[col] != 0]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        basis.append(piv)
        rows = [r for r in rows if r is not piv]
        col += 1
    return [tuple(b) for b in basis]


def primitive_integer(v: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive multiple of a rational vector with coprime integer entries."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)
