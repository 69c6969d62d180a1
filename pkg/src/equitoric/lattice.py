"""Exact integer linear algebra over a lattice and its dual.

Everything runs on plain Python ints (arbitrary precision) and
``fractions.Fraction``; no floating point appears anywhere.  Points of the
primal lattice (one-parameter-subgroup directions, ray generators) and of
the dual lattice (characters, i.e. monomial exponent vectors) are plain
tuples of ints; matrices are lists of row lists.

Conventions, fixed once and golden-tested downstream:

* ``hermite_normal_form`` is column-style: ``H = A @ V`` with ``V``
  unimodular, pivots positive and descending a staircase, and in each pivot
  row the entries left of the pivot reduced into ``[0, pivot)``.
* ``smith_normal_form`` returns ``(S, U, V)`` with ``S = U @ A @ V``,
  ``U``/``V`` unimodular and ``S`` diagonal with nonnegative entries in a
  divisibility chain (zeros last).
* ``complete_to_basis`` derives its complement from the unimodular
  transform of the Hermite computation, so its output is a deterministic
  function of the input.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]
Character = tuple[int, ...]
IntMatrix = list[list[int]]


class LatticeError(ValueError):
    """A lattice-arithmetic precondition was violated."""


def pairing(m: Sequence[int], v: Sequence[int]) -> int:
    """Dual pairing <m, v>: the exact integer dot product."""
    if len(m) != len(v):
        raise LatticeError(f"dimension mismatch: {len(m)} vs {len(v)}")
    return sum(a * b for a, b in zip(m, v))


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def make_primitive(v: Sequence[int]) -> Vector:
    """Divide out the gcd of the coordinates.  The zero vector is rejected."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise LatticeError("zero vector has no primitive representative")
    return tuple(x // g for x in v)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        g, x, y = -g, -x, -y
    return g, x, y


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------


def identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    return [[row[j] for row in a] for j in range(len(a[0]))]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise LatticeError("matrix shapes incompatible for multiplication")
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for row in a
    ]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def det(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise LatticeError("determinant requires a square matrix")
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def invert_unimodular(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Exact inverse of an integer matrix with determinant +-1."""
    d = det(a)
    if d not in (1, -1):
        raise LatticeError("not unimodular")
    n = len(a)
    work = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(a)]
    for col in range(n):
        piv = next(i for i in range(col, n) if work[i][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for i in range(n):
            if i != col and work[i][col] != 0:
                f = work[i][col]
                work[i] = [x - f * y for x, y in zip(work[i], work[col])]
    inv = []
    for row in work:
        out = []
        for x in row[n:]:
            if x.denominator != 1:
                raise LatticeError("not unimodular")
            out.append(int(x))
        inv.append(out)
    return inv


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------


def _generalized_row_op(m: IntMatrix, u: IntMatrix, r: int, i: int, col: int) -> None:
    # Zero out m[i][col] against pivot row r, keeping H = U*A in sync.
    a, b = m[r][col], m[i][col]
    if b == 0:
        return
    if a != 0 and b % a == 0:
        q = b // a
        m[i] = [x - q * y for x, y in zip(m[i], m[r])]
        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        return
    g, x, y = xgcd(a, b)
    p, q = a // g, b // g
    m[r], m[i] = (
        [x * s + y * t for s, t in zip(m[r], m[i])],
        [-q * s + p * t for s, t in zip(m[r], m[i])],
    )
    u[r], u[i] = (
        [x * s + y * t for s, t in zip(u[r], u[i])],
        [-q * s + p * t for s, t in zip(u[r], u[i])],
    )


def _row_hnf(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, list[int]]:
    """Row-style Hermite form: returns (H, U, pivot_cols) with H = U*A."""
    m = [list(row) for row in a]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    u = identity_matrix(nrows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        sel = next((i for i in range(r, nrows) if m[i][col] != 0), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        u[r], u[sel] = u[sel], u[r]
        for i in range(r + 1, nrows):
            _generalized_row_op(m, u, r, i, col)
        if m[r][col] < 0:
            m[r] = [-x for x in m[r]]
            u[r] = [-x for x in u[r]]
        piv = m[r][col]
        for i in range(r):
            q = m[i][col] // piv
            if q:
                m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        pivots.append(col)
        r += 1
    return m, u, pivots


def hermite_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form (H, V) with H = A*V.

    Pivots are positive; in each pivot row the entries to the left of the
    pivot are reduced into [0, pivot); entries right of a pivot are zero.
    """
    h_t, u, _ = _row_hnf(transpose(a))
    return transpose(h_t), transpose(u)


def rank(a: Sequence[Sequence[int]]) -> int:
    if not a:
        return 0
    _, _, pivots = _row_hnf(a)
    return len(pivots)


def smith_normal_form(
    a: Sequence[Sequence[int]],
) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form (S, U, V) with S = U*A*V.

    S is diagonal with nonnegative entries d1 | d2 | ... (zeros trailing);
    U and V are unimodular.  The pivot scan is fixed (smallest absolute
    value, row-major ties), so the output is deterministic.
    """
    s = [list(row) for row in a]
    nrows = len(s)
    ncols = len(s[0]) if nrows else 0
    u = identity_matrix(nrows)
    v = identity_matrix(ncols)

    def col_op(r: int, j: int, t: int) -> None:
        # Zero out s[t][j] against pivot column t using column ops on s, v.
        aa, bb = s[t][t], s[t][j]
        if bb == 0:
            return
        if aa != 0 and bb % aa == 0:
            q = bb // aa
            for i in range(nrows):
                s[i][j] -= q * s[i][t]
            for i in range(ncols):
                v[i][j] -= q * v[i][t]
            return
        g, x, y = xgcd(aa, bb)
        p, q = aa // g, bb // g
        for i in range(nrows):
            s[i][t], s[i][j] = x * s[i][t] + y * s[i][j], -q * s[i][t] + p * s[i][j]
        for i in range(ncols):
            v[i][t], v[i][j] = x * v[i][t] + y * v[i][j], -q * v[i][t] + p * v[i][j]

    def clear_cross(t: int) -> None:
        while True:
            changed = False
            for i in range(nrows):
                if i != t and s[i][t] != 0:
                    _generalized_row_op(s, u, t, i, t)
                    changed = True
            for j in range(ncols):
                if j != t and s[t][j] != 0:
                    col_op(t, j, t)
                    changed = True
            if not changed:
                return

    limit = min(nrows, ncols)
    for t in range(limit):
        piv = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                val = abs(s[i][j])
                if val and (best is None or val < best):
                    best = val
                    piv = (i, j)
        if piv is None:
            break
        pi, pj = piv
        if pi != t:
            s[t], s[pi] = s[pi], s[t]
            u[t], u[pi] = u[pi], u[t]
        if pj != t:
            for row in s:
                row[t], row[pj] = row[pj], row[t]
            for row in v:
                row[t], row[pj] = row[pj], row[t]
        clear_cross(t)

    for i in range(limit):
        if s[i][i] < 0:
            s[i] = [-x for x in s[i]]
            u[i] = [-x for x in u[i]]

    # Enforce the divisibility chain; each repair strictly shrinks d_i.
    while True:
        violated = False
        for i in range(limit):
            for j in range(i + 1, limit):
                if s[i][i] != 0 and s[j][j] % s[i][i] != 0:
                    for r_ in range(ncols):
                        v[r_][i] += v[r_][j]
                    s[j][i] = s[j][j]
                    clear_cross(i)
                    violated = True
                if s[i][i] == 0 and s[j][j] != 0:
                    s[i], s[j] = s[j], s[i]
                    u[i], u[j] = u[j], u[i]
                    for row in s:
                        row[i], row[j] = row[j], row[i]
                    for row in v:
                        row[i], row[j] = row[j], row[i]
                    violated = True
        if not violated:
            break
    for i in range(limit):
        if s[i][i] < 0:
            s[i] = [-x for x in s[i]]
            u[i] = [-x for x in u[i]]
    return s, u, v


def invariant_factors(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """Diagonal of the Smith form, including trailing zeros."""
    s, _, _ = smith_normal_form(a)
    n = min(len(s), len(s[0]) if s else 0)
    return tuple(s[i][i] for i in range(n))


# ---------------------------------------------------------------------------
# basis completion and dual solves
# ---------------------------------------------------------------------------


def complete_to_basis(vs: Sequence[Sequence[int]], ambient_dim: int) -> list[Vector]:
    """Extend independent primitive-summand vectors to a basis of Z^n.

    Returns the n - len(vs) complement vectors; concatenating input and
    output gives a matrix of determinant +-1.  The complement is read off
    the inverse of the Hermite transform, hence deterministic.
    """
    d = len(vs)
    for vec in vs:
        if len(vec) != ambient_dim:
            raise LatticeError("dimension mismatch in basis completion")
    if d == 0:
        return [tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)]
    if d > ambient_dim:
        raise LatticeError("dependent input: more vectors than the ambient dimension")
    cols = [[vec[i] for vec in vs] for i in range(ambient_dim)]  # n x d
    h, u, pivots = _row_hnf(cols)
    if len(pivots) < d:
        raise LatticeError("dependent input: vectors are linearly dependent")
    if any(h[i][i] != 1 for i in range(d)):
        bad = next(h[i][i] for i in range(d) if h[i][i] != 1)
        raise LatticeError(f"not part of a basis (invariant factor {bad})")
    u_inv = invert_unimodular(u)
    return [tuple(u_inv[i][j] for i in range(ambient_dim)) for j in range(d, ambient_dim)]


def dual_basis(basis: Sequence[Sequence[int]]) -> list[Character]:
    """Characters m_1..m_n with <m_i, basis_j> = delta_ij.

    Requires the basis matrix (rows = basis vectors) to be unimodular; the
    dual vectors are the columns of its inverse.
    """
    b_inv = invert_unimodular([list(v) for v in basis])
    n = len(b_inv)
    return [tuple(b_inv[i][j] for i in range(n)) for j in range(n)]


def solve_dual(basis: Sequence[Sequence[int]], values: Sequence[int]) -> Character:
    """The unique character pairing to ``values`` against a lattice basis."""
    if len(values) != len(basis):
        raise LatticeError("value count must match basis size")
    duals = dual_basis(basis)
    n = len(duals[0]) if duals else 0
    return tuple(
        sum(values[i] * duals[i][k] for i in range(len(duals))) for k in range(n)
    )
