"""
Exact linear algebra over Q with deterministic pivoting.

Matrices are lists of row lists of Fractions. The pivot rule is fixed (first
usable row in order, columns left to right), so reduced row echelon forms,
kernel bases and chosen representatives are reproducible byte for byte.
Dimensions here are tiny (dg-algebras are capped well below 100), so clarity
beats asymptotics.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = [
    "Mat",
    "zeros",
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "rref",
    "rank",
    "nullspace",
    "solve",
    "inverse",
    "mat_pow",
    "row_space_basis",
    "extend_independent",
    "in_span",
]

Mat = list[list[Fraction]]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def zeros(rows: int, cols: int) -> Mat:
    return [[_ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Mat:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = _ONE
    return m


def matmul(a: Mat, b: Mat) -> Mat:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols)
    for i in range(rows):
        ai = a[i]
        oi = out[i]
        for k in range(inner):
            c = ai[k]
            if c:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += c * bk[j]
    return out


def matvec(a: Mat, v: Sequence[Fraction]) -> list[Fraction]:
    return [sum((row[k] * v[k] for k in range(len(v)) if v[k]), _ZERO) for row in a]


def transpose(a: Mat) -> Mat:
    return [list(col) for col in zip(*a)] if a else []


def rref(a: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form (a copy) and the pivot column indices."""
    m = [list(row) for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = _ONE / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Mat) -> int:
    if not a or not a[0]:
        return 0
    return len(rref(a)[1])


def nullspace(a: Mat, cols: int | None = None) -> list[list[Fraction]]:
    """Canonical kernel basis: one vector per free column, free entry = 1."""
    if cols is None:
        cols = len(a[0]) if a else 0
    if not a:
        return [[_ONE if j == k else _ZERO for j in range(cols)] for k in range(cols)]
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [_ZERO] * cols
        v[fc] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(a: Mat, b: Sequence[Fraction]) -> list[Fraction] | None:
    """One exact solution of a.x = b (free variables zero), or None."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [b[i]] for i in range(rows)]
    red, pivots = rref(aug)
    if cols in pivots:  # pivot in the constants column: inconsistent
        return None
    x = [_ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][cols]
    return x


def inverse(a: Mat) -> Mat | None:
    n = len(a)
    aug = [list(a[i]) + identity(n)[i] for i in range(n)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def mat_pow(a: Mat, k: int) -> Mat:
    out = identity(len(a))
    base = a
    while k:
        if k & 1:
            out = matmul(out, base)
        base = matmul(base, base)
        k >>= 1
    return out


def row_space_basis(a: Mat) -> list[list[Fraction]]:
    """Canonical basis of the row space (the nonzero rows of the rref)."""
    if not a or not a[0]:
        return []
    red, pivots = rref(a)
    return [red[i] for i in range(len(pivots))]


def extend_independent(primary: list[list[Fraction]], pool: list[list[Fraction]]) -> list[list[Fraction]]:
    """Greedily extend `primary` by vectors from `pool` that raise the rank.

    Returns the extension only (in pool order); `primary` must be independent.
    """
    current = [list(v) for v in primary]
    base_rank = rank(current) if current else 0
    added = []
    for v in pool:
        trial = current + [list(v)]
        r = rank(trial)
        if r > base_rank:
            current = trial
            base_rank = r
            added.append(list(v))
    return added


def in_span(vectors: list[list[Fraction]], v: Sequence[Fraction]) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank(vectors) == rank(vectors + [list(v)])
