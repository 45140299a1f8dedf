"""Exact linear algebra: determinants, solves, Smith normal form.

Everything works over arbitrary-precision integers and fractions; no
floating point anywhere.  Intersection matrices of resolution graphs are
trees, so the symmetric elimination below pivots leaf-first and runs with
essentially no fill-in on those inputs.
"""

from __future__ import annotations

import heapq
import math
from fractions import Fraction


class ZeroPivot(ArithmeticError):
    """Symmetric elimination hit a zero diagonal pivot."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b) and g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def continuant(ks) -> int:
    """|det| of the bamboo with self-intersections -k_1, ..., -k_r.

    Satisfies D_i = k_i * D_{i-1} - D_{i-2}; the empty chain gives 1.
    """
    prev, cur = 0, 1
    for k in ks:
        prev, cur = cur, k * cur - prev
    return cur


def _to_sparse(matrix) -> tuple[dict, int]:
    if isinstance(matrix, dict):
        rows = {i: dict(row) for i, row in matrix.items()}
        return rows, len(rows)
    n = len(matrix)
    rows = {}
    for i in range(n):
        row = {}
        for j, x in enumerate(matrix[i]):
            if x:
                row[j] = Fraction(x)
        rows[i] = row
    return rows, n


def _check_symmetric(matrix) -> bool:
    if isinstance(matrix, dict):
        return True  # callers passing sparse rows guarantee symmetry
    n = len(matrix)
    return all(len(row) == n for row in matrix) and all(
        matrix[i][j] == matrix[j][i] for i in range(n) for j in range(i + 1, n)
    )


def _elimination_order(rows, alive):
    """Lazy min-degree heap over the live rows."""
    heap = [(len(row), v) for v, row in rows.items()]
    heapq.heapify(heap)
    while heap:
        deg, v = heapq.heappop(heap)
        if v not in alive:
            continue
        if deg != len(rows[v]):
            heapq.heappush(heap, (len(rows[v]), v))
            continue
        yield v, heap


def sym_pivots(matrix) -> list[Fraction]:
    """Pivots of an exact symmetric elimination with min-degree ordering.

    The matrix is negative definite iff all pivots are negative (Sylvester,
    applied in the permuted order).  Raises ZeroPivot on a zero diagonal
    pivot, which already rules out definiteness.  Accepts either a dense
    nested sequence or sparse rows {i: {j: value}} (assumed symmetric).
    """
    rows, n = _to_sparse(matrix)
    alive = set(rows)
    pivots = []
    for v, heap in _elimination_order(rows, alive):
        alive.discard(v)
        row_v = rows[v]
        rows[v] = {}
        p = row_v.pop(v, Fraction(0))
        if p == 0:
            raise ZeroPivot(f"zero pivot at index {v}")
        pivots.append(p)
        nbrs = [j for j in row_v if j in alive]
        for i in nbrs:
            f = rows[i].pop(v) / p
            ri = rows[i]
            for j in nbrs:
                ri[j] = ri.get(j, Fraction(0)) - f * row_v[j]
                if ri[j] == 0:
                    del ri[j]
            heapq.heappush(heap, (len(ri), i))
    return pivots


def det_exact(matrix) -> Fraction:
    """Exact determinant of a square matrix of integers/fractions.

    Accepts dense nested sequences or symmetric sparse rows {i: {j: v}}.
    """
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    if _check_symmetric(matrix):
        try:
            pivots = sym_pivots(matrix)
            return math.prod(pivots, start=Fraction(1))
        except ZeroPivot:
            if isinstance(matrix, dict):
                matrix = [
                    [matrix[i].get(j, 0) for j in range(n)] for i in range(n)
                ]
    return _det_bareiss(matrix)


def _det_bareiss(matrix) -> Fraction:
    """Fraction-free Bareiss elimination after clearing denominators."""
    n = len(matrix)
    scale = Fraction(1)
    rows = []
    for row in matrix:
        den = math.lcm(*(Fraction(x).denominator for x in row)) if row else 1
        scale *= den
        rows.append([int(Fraction(x) * den) for x in row])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k]:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return Fraction(sign * rows[n - 1][n - 1], 1) / scale


def solve_symmetric(matrix, rhs) -> list[Fraction]:
    """Solve A x = rhs exactly for symmetric nonsingular A (dense or sparse)."""
    rows, n = _to_sparse(matrix)
    b = [Fraction(x) for x in rhs]
    alive = set(rows)
    steps = []
    for v, heap in _elimination_order(rows, alive):
        alive.discard(v)
        row_v = rows[v]
        rows[v] = {}
        p = row_v.pop(v, Fraction(0))
        if p == 0:
            raise ZeroPivot(f"zero pivot at index {v}")
        nbrs = [j for j in row_v if j in alive]
        for i in nbrs:
            f = rows[i].pop(v) / p
            b[i] -= f * b[v]
            ri = rows[i]
            for j in nbrs:
                ri[j] = ri.get(j, Fraction(0)) - f * row_v[j]
                if ri[j] == 0:
                    del ri[j]
            heapq.heappush(heap, (len(ri), i))
        steps.append((v, p, row_v))
    x = [Fraction(0)] * n
    for v, p, row_v in reversed(steps):
        acc = b[v]
        for j, coef in row_v.items():
            acc -= coef * x[j]
        x[v] = acc / p
    return x


def invariant_factors(matrix) -> list[int]:
    """Invariant factors of an integer matrix (Smith normal form diagonal).

    Returns the nonzero factors d_1 | d_2 | ... as positive integers.
    Pivot selection is by smallest magnitude, which keeps intermediate
    entries tame for the matrix sizes that occur here.
    """
    A = [[int(x) for x in row] for row in matrix]
    m = len(A)
    n = len(A[0]) if m else 0
    factors = []
    t = 0
    while t < min(m, n):
        pos = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pos is None or abs(A[i][j]) < abs(A[pos[0]][pos[1]])):
                    pos = (i, j)
        if pos is None:
            break
        while True:
            i0, j0 = pos
            if i0 != t:
                A[t], A[i0] = A[i0], A[t]
            if j0 != t:
                for row in A:
                    row[t], row[j0] = row[j0], row[t]
            # clear column t, restarting whenever a smaller remainder shows up
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    for j in range(t, n):
                        A[i][j] -= q * A[t][j]
                    if A[i][t]:
                        pos = (i, t)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    for i in range(t, m):
                        A[i][j] -= q * A[i][t]
                    if A[t][j]:
                        pos = (t, j)
                        dirty = True
                        break
            if dirty:
                continue
            # enforce divisibility of the remaining block
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            for j in range(t, n):
                A[t][j] += A[culprit][j]
            pos = (t, t)
        factors.append(abs(A[t][t]))
        t += 1
    for a, b in zip(factors, factors[1:]):
        assert b % a == 0, "broken divisibility chain in Smith normal form"
    return [f for f in factors if f]
