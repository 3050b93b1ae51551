"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`; matrices are sequences of
such rows.  Elimination is done fraction free (Bareiss) on integer rows
obtained by clearing denominators row by row, so nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Vec = tuple  # tuple[Fraction, ...]


class LinalgError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError(f"refusing to coerce float {x!r} into an exact rational")
    return Fraction(x)


def vec(entries: Iterable) -> Vec:
    return tuple(as_fraction(e) for e in entries)


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    return str(q)


def parse_rational(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s.strip())
    return as_fraction(s)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers.  Returns the rows and the product of scales."""
    out = []
    scale = Fraction(1)
    for row in rows:
        m = lcm(*(as_fraction(x).denominator for x in row)) if row else 1
        out.append([int(as_fraction(x) * m) for x in row])
        scale *= m
    return out, scale


def _bareiss(m: list[list[int]], ncols: int | None = None):
    """In-place fraction-free row echelon form.

    Only the first ``ncols`` columns are used for pivoting.  Returns
    ``(pivot_columns, swaps)``.  Pivot choice is the first nonzero entry
    by row index.
    """
    nrows = len(m)
    if nrows == 0:
        return [], 0
    ncols = len(m[0]) if ncols is None else ncols
    width = len(m[0])
    pivots = []
    swaps = 0
    prev = 1
    row = 0
    for col in range(ncols):
        if row >= nrows:
            break
        piv = next((i for i in range(row, nrows) if m[i][col] != 0), None)
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
            swaps += 1
        p = m[row][col]
        for i in range(row + 1, nrows):
            a = m[i][col]
            ri = m[i]
            rr = m[row]
            for j in range(col + 1, width):
                ri[j] = (p * ri[j] - a * rr[j]) // prev
            ri[col] = 0
        # columns left of col in rows below are already zero
        prev = p
        pivots.append(col)
        row += 1
    return pivots, swaps


def rank(vs: Sequence[Sequence]) -> int:
    vs = [v for v in vs]
    if not vs:
        return 0
    m, _ = _integer_rows(vs)
    pivots, _ = _bareiss(m)
    return len(pivots)


def det(m: Sequence[Sequence]) -> Fraction:
    n = len(m)
    if any(len(row) != n for row in m):
        raise LinalgError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    a, scale = _integer_rows(m)
    pivots, swaps = _bareiss(a)
    if len(pivots) < n:
        return Fraction(0)
    d = a[n - 1][n - 1]
    if swaps % 2:
        d = -d
    return Fraction(d) / scale


def solve(a: Sequence[Sequence], b: Sequence) -> Vec | None:
    """Some ``x`` with ``a @ x == b``, or ``None`` if the system is inconsistent.

    Free variables are set to zero, so for invertible ``a`` this is the
    unique solution.
    """
    if len(a) != len(b):
        raise LinalgError("row count of a does not match length of b")
    if not a:
        return ()
    ncols = len(a[0])
    aug, _ = _integer_rows([list(row) + [bi] for row, bi in zip(a, b)])
    pivots, _ = _bareiss(aug, ncols)
    k = len(pivots)
    if any(aug[i][ncols] != 0 for i in range(k, len(aug))):
        return None
    x = [Fraction(0)] * ncols
    for i in range(k - 1, -1, -1):
        c = pivots[i]
        acc = Fraction(aug[i][ncols])
        for j in range(c + 1, ncols):
            if aug[i][j]:
                acc -= aug[i][j] * x[j]
        x[c] = acc / aug[i][c]
    return tuple(x)


def transpose(m: Sequence[Sequence]) -> list[tuple]:
    return [tuple(col) for col in zip(*m)]


def express(vectors: Sequence[Sequence], target: Sequence) -> Vec | None:
    """Coefficients ``x`` with ``sum(x_i * vectors[i]) == target``."""
    if not vectors:
        return () if all(t == 0 for t in target) else None
    return solve(transpose(vectors), target)


def inverse(m: Sequence[Sequence]) -> list[Vec]:
    n = len(m)
    if det(m) == 0:
        raise LinalgError("matrix is singular")
    cols = [solve(m, [Fraction(int(i == j)) for i in range(n)]) for j in range(n)]
    return transpose(cols)


def matvec(m: Sequence[Sequence], x: Sequence) -> Vec:
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in m)


def is_independent(vs: Sequence[Sequence]) -> bool:
    return rank(vs) == len(vs)
